//! Exact arithmetic in GF(p) and GF(p^e).
//!
//! Elements are small integer codes: the element `c_0 + c_1 g + ... + c_{e-1} g^{e-1}`
//! is stored as `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Codes `0..p` are the prime
//! subfield, so enumeration order starts `0, 1, ...`. Multiplication goes through
//! discrete log tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field (number of elements) accepted by [`FieldCtx::new`].
pub const DEFAULT_SIZE_CAP: u64 = 1 << 20;

/// An element of a finite field, meaningful only together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low degree first; empty for prime fields.
    modulus: Vec<u32>,
    generator_name: String,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// Builds GF(p^e). The modulus is the first irreducible monic polynomial met by a
    /// scan over the integer encodings of the lower coefficients; seed 0 starts the
    /// scan at 0 and so yields the smallest one.
    pub fn new(p: u32, e: u32, seed: u64) -> Result<Arc<FieldCtx>> {
        Self::with_cap(p, e, seed, DEFAULT_SIZE_CAP)
    }

    pub fn prime(p: u32) -> Result<Arc<FieldCtx>> {
        Self::new(p, 1, 0)
    }

    pub fn with_cap(p: u32, e: u32, seed: u64, cap: u64) -> Result<Arc<FieldCtx>> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let size = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if size > cap || size > u32::MAX as u64 {
            return Err(Error::FieldTooLarge { size, cap });
        }
        let q = size as u32;
        let modulus = if e == 1 {
            Vec::new()
        } else {
            find_irreducible(p, e, seed).ok_or(Error::NoIrreducible { p, e })?
        };
        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            generator_name: "g".to_string(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        ctx.build_tables();
        Ok(Arc::new(ctx))
    }

    /// Parses "p" or "p^e".
    pub fn parse_spec(spec: &str, seed: u64) -> Result<Arc<FieldCtx>> {
        let spec = spec.trim();
        let (p, e) = match spec.split_once('^') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (spec, "1"),
        };
        let p: u32 = p
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad characteristic in `{spec}`")))?;
        let e: u32 = e
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad exponent in `{spec}`")))?;
        Self::new(p, e, seed)
    }

    /// Same field with a different symbol for the generator in I/O.
    pub fn with_generator_name(&self, name: &str) -> Arc<FieldCtx> {
        Arc::new(FieldCtx {
            p: self.p,
            e: self.e,
            q: self.q,
            modulus: self.modulus.clone(),
            generator_name: name.to_string(),
            exp: self.exp.clone(),
            log: self.log.clone(),
        })
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        let mut exp = vec![0u32; q - 1];
        let mut log = vec![0u32; q];
        // The generator itself is tried first; for prime fields start at 2.
        let first = if self.e == 1 { 2 } else { self.p };
        for cand in (first..self.q).chain(1..first) {
            let mut cur = 1u32;
            let mut ok = true;
            for (i, slot) in exp.iter_mut().enumerate() {
                if cur == 1 && i > 0 {
                    ok = false;
                    break;
                }
                *slot = cur;
                cur = self.slow_mul(cur, cand);
            }
            if ok && cur == 1 {
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let a = self.digits(a);
        let b = self.digits(b);
        let prod = poly_mul(&a, &b, self.p);
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.undigits(&r)
    }

    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut out = vec![0; self.e as usize];
        for d in out.iter_mut() {
            *d = code % self.p;
            code /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Number of elements q = p^e.
    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        if self.e == 1 {
            None
        } else {
            Some(&self.modulus)
        }
    }

    pub fn generator_name(&self) -> &str {
        &self.generator_name
    }

    /// "p" or "p^e".
    pub fn spec(&self) -> String {
        if self.e == 1 {
            self.p.to_string()
        } else {
            format!("{}^{}", self.p, self.e)
        }
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The polynomial generator g; `None` for prime fields.
    pub fn generator(&self) -> Option<Fe> {
        (self.e > 1).then_some(Fe(self.p))
    }

    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_code(&self, code: u32) -> Fe {
        assert!(code < self.q, "code {code} out of range for GF({})", self.q);
        Fe(code)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fe {
        let mut d = vec![0; self.e as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            if i < d.len() {
                d[i] = c % self.p;
            }
        }
        Fe(self.undigits(&d))
    }

    /// Residues of the element in the basis 1, g, ..., g^{e-1}.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        self.digits(a.0)
    }

    pub fn in_prime_field(&self, a: Fe) -> bool {
        a.0 < self.p
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.e == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut r, mut pw) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            r += d * pw;
            x /= self.p;
            y /= self.p;
            pw = pw.wrapping_mul(self.p);
        }
        Fe(r)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.e == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut r, mut pw) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = x % self.p;
            r += ((self.p - d) % self.p) * pw;
            x /= self.p;
            pw = pw.wrapping_mul(self.p);
        }
        Fe(r)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.e == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let ord = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[(if s >= ord { s - ord } else { s }) as usize])
    }

    pub fn try_inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let ord = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(Fe(self.exp[((ord - l) % ord) as usize]))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let ord = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Fe(self.exp[((l * (n % ord)) % ord) as usize])
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// All elements, each exactly once: 0, 1, then the rest in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(Fe)
    }

    /// Renders an element: an integer in a prime field, otherwise a polynomial in
    /// the generator such as `2*g^2+g+1`.
    pub fn format(&self, a: Fe) -> String {
        if self.e == 1 || a.0 < self.p {
            return a.0.to_string();
        }
        let g = &self.generator_name;
        let mut parts = Vec::new();
        for (i, &c) in self.digits(a.0).iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => g.clone(),
                (1, c) => format!("{c}*{g}"),
                (i, 1) => format!("{g}^{i}"),
                (i, c) => format!("{c}*{g}^{i}"),
            };
            parts.push(s);
        }
        parts.join("+")
    }
}

/// An injective field homomorphism GF(p^e) -> GF(p^f), e | f.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    source: Arc<FieldCtx>,
    target: Arc<FieldCtx>,
    table: Vec<Fe>,
}

impl FieldEmbedding {
    pub fn new(source: &Arc<FieldCtx>, target: &Arc<FieldCtx>) -> Result<FieldEmbedding> {
        if source.p != target.p || !target.e.is_multiple_of(source.e) {
            return Err(Error::InvalidField(format!(
                "GF({}) does not embed in GF({})",
                source.spec(),
                target.spec()
            )));
        }
        // Image of the generator: the first root of the source modulus in the target.
        let image = if source.e == 1 {
            None
        } else {
            let root = target
                .elements()
                .find(|&x| {
                    let mut acc = Fe::ZERO;
                    for &c in source.modulus.iter().rev() {
                        acc = target.add(target.mul(acc, x), Fe(c));
                    }
                    acc.is_zero()
                })
                .ok_or_else(|| Error::InvalidField("modulus has no root in target".into()))?;
            Some(root)
        };
        let table = source
            .elements()
            .map(|a| match image {
                None => Fe(a.0),
                Some(r) => {
                    let mut acc = Fe::ZERO;
                    for &c in source.coeffs(a).iter().rev() {
                        acc = target.add(target.mul(acc, r), Fe(c));
                    }
                    acc
                }
            })
            .collect();
        Ok(FieldEmbedding {
            source: source.clone(),
            target: target.clone(),
            table,
        })
    }

    pub fn identity(field: &Arc<FieldCtx>) -> FieldEmbedding {
        FieldEmbedding {
            source: field.clone(),
            target: field.clone(),
            table: field.elements().collect(),
        }
    }

    pub fn source(&self) -> &Arc<FieldCtx> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldCtx> {
        &self.target
    }

    pub fn apply(&self, a: Fe) -> Fe {
        self.table[a.0 as usize]
    }
}

/// Smallest extension GF(p^{e f}) of `field` with at least `min_size` elements,
/// returned with its degree f over `field`.
pub fn extension_with_min_size(field: &Arc<FieldCtx>, min_size: u64) -> Result<(Arc<FieldCtx>, u32)> {
    let mut f = 1u32;
    while (field.size() as u64).pow(f) < min_size {
        f += 1;
    }
    if f == 1 {
        return Ok((field.clone(), 1));
    }
    let ext = FieldCtx::new(field.p, field.e * f, 0)?;
    Ok((ext.with_generator_name(field.generator_name()), f))
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    out.into_iter().map(|v| v as u32).collect()
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&v| v as u64).collect();
    let p64 = p as u64;
    for i in (dm..r.len()).rev() {
        let c = r[i] % p64;
        if c == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate() {
            let idx = i - dm + j;
            r[idx] = (r[idx] + (p64 - c) * mj as u64) % p64;
        }
    }
    r.truncate(dm.max(1));
    r.resize(dm, 0);
    r.into_iter().map(|v| (v % p64) as u32).collect()
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() - 1;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn find_irreducible(p: u32, e: u32, seed: u64) -> Option<Vec<u32>> {
    let count = (p as u64).pow(e);
    let start = if seed == 0 {
        0
    } else {
        seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) % count
    };
    (0..count).map(|i| (start + i) % count).find_map(|idx| {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut x = idx;
        for _ in 0..e {
            f.push((x % p as u64) as u32);
            x /= p as u64;
        }
        f.push(1);
        is_irreducible(&f, p).then_some(f)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_characteristic() {
        let f = FieldCtx::new(2, 1, 0).unwrap();
        assert_eq!(f.add(Fe::ONE, Fe::ONE), Fe::ZERO);
    }

    #[test]
    fn gf7_inverse_of_three() {
        let f = FieldCtx::new(7, 1, 0).unwrap();
        assert_eq!(f.inv(f.from_int(3)), f.from_int(5));
    }

    #[test]
    fn gf9_frobenius_fixes_prime_field() {
        let f = FieldCtx::new(3, 2, 0).unwrap();
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all.len(), 9);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 9);
        let fixed: Vec<_> = all.iter().filter(|&&x| f.pow(x, 3) == x).collect();
        assert_eq!(fixed.len(), 3);
        assert!(fixed.iter().all(|&&x| f.in_prime_field(x)));
    }

    #[test]
    fn enumeration_orders() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![Fe(0), Fe(1)]);
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(f3.elements().map(|x| x.code()).collect::<Vec<_>>(), vec![0, 1, 2]);
        let f4 = FieldCtx::new(2, 2, 0).unwrap();
        let els: Vec<_> = f4.elements().collect();
        assert_eq!(els.len(), 4);
        assert!(els.iter().all(|&x| f4.pow(x, 4) == x));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldCtx::new(4, 1, 0).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldCtx::new(2, 21, 0), Err(Error::FieldTooLarge { .. })));
        assert!(FieldCtx::new(3, 0, 0).is_err());
    }

    #[test]
    fn deterministic_modulus() {
        let a = FieldCtx::new(5, 2, 0).unwrap();
        let b = FieldCtx::new(5, 2, 0).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        // x^2 + 1 splits mod 5, x^2 + 2 does not.
        assert_eq!(a.modulus().unwrap(), &[2, 0, 1]);
        let c = FieldCtx::new(5, 2, 17).unwrap();
        assert!(is_irreducible(c.modulus().unwrap(), 5));
        assert_eq!(FieldCtx::new(5, 2, 17).unwrap().modulus(), c.modulus());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3), (7, 1), (3, 3), (3, 4)] {
            let f = FieldCtx::new(p, e, 0).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                assert_eq!(f.pow(a, f.size() as u64), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), Fe::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), Fe(f.slow_mul(a.0, b.0)));
                }
            }
            if els.len() <= 27 {
                for &a in &els {
                    for &b in &els {
                        for &c in &els {
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn format_extension_elements() {
        let f = FieldCtx::new(3, 2, 0).unwrap();
        assert_eq!(f.format(f.from_coeffs(&[1, 1])), "g+1");
        assert_eq!(f.format(f.from_coeffs(&[0, 2])), "2*g");
        assert_eq!(f.format(f.from_coeffs(&[2, 0])), "2");
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = FieldCtx::new(2, 2, 0).unwrap();
        let big = FieldCtx::new(2, 4, 0).unwrap();
        let emb = FieldEmbedding::new(&small, &big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(emb.apply(small.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(small.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
            }
        }
        assert!(FieldEmbedding::new(&small, &FieldCtx::new(2, 3, 0).unwrap()).is_err());
    }

    #[test]
    fn parse_field_spec() {
        assert_eq!(FieldCtx::parse_spec("5", 0).unwrap().size(), 5);
        assert_eq!(FieldCtx::parse_spec("3^2", 0).unwrap().size(), 9);
        assert!(FieldCtx::parse_spec("x", 0).is_err());
    }
}
