//! Zero-dimensional subschemes of affine space over finite fields and their
//! incidences with k-planes.
//!
//! The crate is organised bottom-up:
//!
//! - [`ff`]: GF(p) and GF(p^e) arithmetic.
//! - [`poly`]: sparse polynomials, monomial orders, a text parser.
//! - [`gb`]: Buchberger's algorithm, quotient dimensions, ideal sums and intersections.
//! - [`degen`]: the dilation degeneration and generic initial ideals.
//! - [`borel`]: Borel-fixed sets of monomials, slices and frontiers.
//! - [`geom`]: Grassmannians, affine planes, Plücker vectors and charts over F_q.
//! - [`incidence`]: intersection degrees, rich directions, the Radon transform.
//! - [`xscheme`]: the incidence matrix on a Plücker chart and its minor ideals.
//! - [`fverify`]: example schemes and bound checks at desk scale.

pub mod borel;
pub mod degen;
pub mod error;
pub mod ff;
pub mod fverify;
pub mod gb;
pub mod geom;
pub mod incidence;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod xscheme;

pub use error::{Error, Result};
pub use ff::{Fe, FieldCtx};
pub use gb::{Ideal, Scheme};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Binomial coefficient with the convention C(a, b) = 0 for b > a.
pub fn binom(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::binom;

    #[test]
    fn binomials() {
        assert_eq!(binom(6, 4), 15);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(9, 2), 36);
    }
}
