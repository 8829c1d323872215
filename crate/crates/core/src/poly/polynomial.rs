use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldCtx, FieldEmbedding};

/// The polynomial ring k[x_1..x_n] together with the term order used to sort terms.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    field: Arc<FieldCtx>,
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(field: Arc<FieldCtx>, names: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        if order.nvars() != names.len() {
            return Err(Error::RingMismatch(format!(
                "order on {} variables for {} names",
                order.nvars(),
                names.len()
            )));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) || a == field.generator_name() {
                return Err(Error::InvalidArgument(format!("duplicate variable name `{a}`")));
            }
        }
        Ok(Arc::new(Ring { field, names, order }))
    }

    /// Variables x1..xn under grevlex.
    pub fn standard(field: Arc<FieldCtx>, n: usize) -> Arc<Ring> {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Ring::new(field, names, MonomialOrder::grevlex(n)).expect("valid standard ring")
    }

    /// Same field and variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        assert_eq!(order.nvars(), self.names.len());
        Arc::new(Ring {
            field: self.field.clone(),
            names: self.names.clone(),
            order,
        })
    }

    pub fn with_field(&self, field: Arc<FieldCtx>) -> Arc<Ring> {
        Arc::new(Ring {
            field,
            names: self.names.clone(),
            order: self.order.clone(),
        })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and field (the order may differ).
    pub fn compatible(&self, other: &Ring) -> bool {
        self.names == other.names && self.field == other.field
    }
}

#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    /// Nonzero coefficients, sorted by decreasing monomial under the ring's order.
    terms: Vec<(Monomial, Fe)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Fe) -> Polynomial {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, Fe::ONE)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Polynomial {
        Polynomial::term(ring, Monomial::var(ring.nvars(), i), Fe::ONE)
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Fe) -> Polynomial {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Fe)>) -> Polynomial {
        let field = ring.field().clone();
        let mut acc: HashMap<Monomial, Fe> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert(Fe::ZERO);
            *e = field.add(*e, c);
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already sorted in decreasing order with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Fe)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// The polynomial without its leading term.
    pub fn tail(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, Fe)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<Fe> {
        self.terms.first().map(|&(_, c)| c)
    }

    pub fn coeff(&self, m: &Monomial) -> Fe {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|&(_, c)| c)
            .unwrap_or(Fe::ZERO)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomials from different rings"
        );
    }

    /// `self + c * shift * other`, merging sorted term lists.
    pub fn add_scaled_shifted(&self, other: &Polynomial, c: Fe, shift: &Monomial) -> Polynomial {
        self.check_ring(other);
        let field = self.field().clone();
        let ord = self.ring.order();
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut rhs = other
            .terms
            .iter()
            .map(|(m, v)| (m.mul(shift), field.mul(*v, c)))
            .peekable();
        while i < self.terms.len() || rhs.peek().is_some() {
            match (self.terms.get(i), rhs.peek()) {
                (Some(a), Some(b)) => match ord.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(rhs.next().unwrap());
                    }
                    Ordering::Equal => {
                        let s = field.add(a.1, b.1);
                        if !s.is_zero() {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        rhs.next();
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => out.push(rhs.next().unwrap()),
                (None, None) => break,
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled_shifted(other, Fe::ONE, &Monomial::one(self.ring.nvars()))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let m1 = self.field().neg(Fe::ONE);
        self.add_scaled_shifted(other, m1, &Monomial::one(self.ring.nvars()))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field().neg(Fe::ONE))
    }

    pub fn scale(&self, c: Fe) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), f.mul(*v, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), *v)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = self.field().clone();
        let prods = self
            .terms
            .iter()
            .flat_map(|(a, x)| other.terms.iter().map(|(b, y)| (a.mul(b), f.mul(*x, *y))))
            .collect::<Vec<_>>();
        Polynomial::from_terms(&self.ring, prods)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so that the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(self.field().inv(c)),
        }
    }

    pub fn eval(&self, point: &[Fe]) -> Fe {
        let f = self.field();
        let mut acc = Fe::ZERO;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v = f.mul(v, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// The homogeneous component of maximal total degree.
    pub fn top_degree_form(&self) -> Result<Polynomial> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_component(d))
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        }
    }

    /// Ring homomorphism x_i -> images[i]; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images
            .iter()
            .any(|p| !p.ring.compatible(&target) || p.ring.order() != target.order())
        {
            return Err(Error::RingMismatch("images live in different rings".into()));
        }
        if **target.field() != **self.field() {
            return Err(Error::RingMismatch("images are over a different field".into()));
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&target), p.clone()])
            .collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, *c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in a compatible ring (typically one with a
    /// different term order).
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert!(self.ring.compatible(ring), "incompatible rings");
        if self.ring.order() == ring.order() {
            return Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            };
        }
        let mut terms = self.terms.clone();
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Maps coefficients through a field embedding into a ring with the same
    /// number of variables.
    pub fn embed(&self, ring: &Arc<Ring>, emb: &FieldEmbedding) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.clone(), emb.apply(*c))))
    }

    /// Maps monomials through `f` into another ring over the same field.
    pub fn map_monomials(&self, ring: &Arc<Ring>, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (f(m), *c)))
    }

    /// Translates variables: x_i -> x_i + shift_i.
    pub fn translate(&self, shift: &[Fe]) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|i| Polynomial::var(&self.ring, i).add(&Polynomial::constant(&self.ring, shift[i])))
            .collect();
        self.substitute(&images).expect("same ring")
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = self.field();
        let names = self.ring.names();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = f.format(*c);
                let compound = !f.in_prime_field(*c) && cs.contains(['+', '*', '^']);
                let cs = if compound { format!("({cs})") } else { cs };
                if m.is_one() {
                    cs
                } else if c.is_one() {
                    m.format(names)
                } else {
                    format!("{}*{}", cs, m.format(names))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.format())
    }
}
