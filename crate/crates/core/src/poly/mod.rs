//! Sparse multivariate polynomials over a [`FieldCtx`](crate::ff::FieldCtx).

mod monomial;
mod order;
mod parse;
mod polynomial;

pub use monomial::{display_cmp, Monomial};
pub use order::{MonomialOrder, OrderKind};
pub use parse::{parse_field_element, parse_polynomial};
pub use polynomial::{Polynomial, Ring};
