//! Gröbner bases, quotient dimensions and ideal arithmetic.

mod buchberger;
mod points;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use buchberger::{buchberger, interreduce, reduce_full, GbConfig};
pub use points::vanishing_ideal;

use crate::error::{Error, Result};
use crate::ff::FieldCtx;
use crate::poly::{display_cmp, Monomial, MonomialOrder, OrderKind, Polynomial, Ring};

/// An ideal given by generators. Zero generators are dropped on construction.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !g.ring().compatible(ring) {
                return Err(Error::RingMismatch(format!(
                    "generator {g} does not live in the ring of the ideal"
                )));
            }
        }
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.to_ring(ring))
            .collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
        })
    }

    /// The monomial ideal generated by `mons`.
    pub fn monomial(ring: &Arc<Ring>, mons: &[Monomial]) -> Ideal {
        let gens = mons
            .iter()
            .map(|m| Polynomial::term(ring, m.clone(), crate::ff::Fe::ONE))
            .collect();
        Ideal {
            ring: ring.clone(),
            gens,
        }
    }

    /// The ideal (x_1, ..., x_n)^d.
    pub fn maximal_power(ring: &Arc<Ring>, d: u32) -> Ideal {
        Ideal::monomial(ring, &Monomial::all_of_degree(ring.nvars(), d))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<GroebnerBasis> {
        self.groebner_with(order, &GbConfig::default())
    }

    pub fn groebner_with(&self, order: &MonomialOrder, config: &GbConfig) -> Result<GroebnerBasis> {
        let ring = self.ring.with_order(order.clone());
        let elements = buchberger(&ring, &self.gens, config)?;
        Ok(GroebnerBasis { ring, elements })
    }

    /// Reduced grevlex basis in the ring's variable order.
    pub fn grevlex_basis(&self) -> Result<GroebnerBasis> {
        self.groebner(&MonomialOrder::grevlex(self.ring.nvars()))
    }

    pub fn quotient_dim(&self) -> Result<QuotientDim> {
        Ok(self.grevlex_basis()?.quotient_dim())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.grevlex_basis()?.contains(f))
    }

    /// Equality as ideals, decided by comparing reduced grevlex bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.grevlex_basis()?.elements == other.grevlex_basis()?.elements)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ideal_sum(self, other)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        ideal_intersection(self, other, &GbConfig::default())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.format()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// The ideal I + J.
pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if !i.ring.compatible(&j.ring) {
        return Err(Error::RingMismatch("ideal sum of ideals in different rings".into()));
    }
    let mut gens = i.gens.clone();
    gens.extend(j.gens.iter().map(|g| g.to_ring(&i.ring)));
    Ideal::new(&i.ring, gens)
}

/// The ideal I ∩ J, computed as (t·I + (1−t)·J) ∩ k[x] with an elimination order.
pub fn ideal_intersection(i: &Ideal, j: &Ideal, config: &GbConfig) -> Result<Ideal> {
    if !i.ring.compatible(&j.ring) {
        return Err(Error::RingMismatch(
            "ideal intersection of ideals in different rings".into(),
        ));
    }
    let base = &i.ring;
    let n = base.nvars();
    let mut names = base.names().to_vec();
    let mut t_name = String::from("t");
    while names.contains(&t_name) || t_name == base.field().generator_name() {
        t_name.push('_');
    }
    names.push(t_name);
    let big = Ring::new(base.field().clone(), names, MonomialOrder::eliminate(n + 1, n))?;
    let lift = |f: &Polynomial| f.map_monomials(&big, |m| m.insert_var(n, 0));
    let t = Polynomial::var(&big, n);
    let one_minus_t = Polynomial::one(&big).sub(&t);
    let mut gens: Vec<Polynomial> = i.gens.iter().map(|f| t.mul(&lift(f))).collect();
    gens.extend(j.gens.iter().map(|g| one_minus_t.mul(&lift(&g.to_ring(base)))));
    let gb = buchberger(&big, &gens, config)?;
    let kept = gb
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exp(n) == 0))
        .map(|g| g.map_monomials(base, |m| m.remove_var(n)))
        .collect();
    Ideal::new(base, kept)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

impl QuotientDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            QuotientDim::Finite(n) => Some(n),
            QuotientDim::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDim::Finite(n) => write!(f, "{n}"),
            QuotientDim::Infinite => f.write_str("infinite"),
        }
    }
}

/// A reduced Gröbner basis. Its ring carries the order the basis was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    /// Basis elements, monic and sorted by increasing leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.first().is_some_and(|g| g.is_constant())
    }

    /// Remainder of `f` modulo the basis, returned in the ring of `f`.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce_full(&f.to_ring(&self.ring), &self.elements).to_ring(f.ring())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// The initial ideal, generated by the leading monomials.
    pub fn initial_ideal(&self) -> Ideal {
        Ideal::monomial(&self.ring, &self.leading_monomials())
    }

    pub fn quotient_dim(&self) -> QuotientDim {
        staircase(&self.leading_monomials(), self.ring.nvars())
            .map_or(QuotientDim::Infinite, |s| QuotientDim::Finite(s.len()))
    }

    /// Monomials outside the initial ideal, sorted by degree and then with x1
    /// before x2.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        staircase(&self.leading_monomials(), self.ring.nvars()).ok_or(Error::InfiniteQuotient)
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let field = self.ring.field();
        for (a, f) in self.elements.iter().enumerate() {
            for g in &self.elements[a + 1..] {
                let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
                let l = lf.lcm(lg);
                let s = f.mul_monomial(&l.div(lf).unwrap()).add_scaled_shifted(
                    g,
                    field.neg(crate::ff::Fe::ONE),
                    &l.div(lg).unwrap(),
                );
                if !reduce_full(&s, &self.elements).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// True when no leading monomial divides another and no tail term is divisible
    /// by a leading monomial.
    pub fn is_reduced(&self) -> bool {
        let leads = self.leading_monomials();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(|c| c.is_one())
                && leads.iter().enumerate().all(|(j, l)| i == j || !l.divides(&leads[i]))
                && g.terms()[1..].iter().all(|(m, _)| !leads.iter().any(|l| l.divides(m)))
        })
    }
}

/// Monomials not divisible by any of `leads`, or `None` if there are infinitely many.
pub fn staircase(leads: &[Monomial], n: usize) -> Option<Vec<Monomial>> {
    if leads.iter().any(|l| l.is_one()) {
        return Some(Vec::new());
    }
    let has_pure_power = |i: usize| leads.iter().any(|l| l.exp(i) > 0 && l.degree() == l.exp(i));
    if !(0..n).all(has_pure_power) {
        return None;
    }
    let outside = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut frontier = vec![Monomial::one(n)];
    seen.insert(Monomial::one(n));
    while let Some(m) = frontier.pop() {
        for i in 0..n {
            let next = m.mul_var(i);
            if outside(&next) && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(display_cmp);
    Some(out)
}

/// A 0-dimensional subscheme of affine space with its grevlex basis, degree and
/// standard monomials computed up front.
#[derive(Clone, Debug)]
pub struct Scheme {
    ideal: Ideal,
    basis: GroebnerBasis,
    standard: Vec<Monomial>,
    homogeneous: bool,
}

impl Scheme {
    /// Builds the scheme; fails if the quotient is infinite-dimensional.
    pub fn new(ideal: Ideal) -> Result<Scheme> {
        Scheme::with_config(ideal, &GbConfig::default())
    }

    pub fn with_config(ideal: Ideal, config: &GbConfig) -> Result<Scheme> {
        let order = MonomialOrder::grevlex(ideal.ring.nvars());
        let basis = ideal.groebner_with(&order, config)?;
        let standard = basis.standard_monomials()?;
        // A reduced basis for a degree-compatible order is homogeneous iff the ideal is.
        let homogeneous = basis.elements.iter().all(|g| g.is_homogeneous());
        let ring = basis.ring.clone();
        let ideal = Ideal {
            gens: ideal.gens.iter().map(|g| g.to_ring(&ring)).collect(),
            ring,
        };
        Ok(Scheme {
            ideal,
            basis,
            standard,
            homogeneous,
        })
    }

    pub fn from_generators(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Scheme> {
        Scheme::new(Ideal::new(ring, gens)?)
    }

    /// The reduced scheme supported on `points`.
    pub fn from_points(ring: &Arc<Ring>, points: &[Vec<crate::ff::Fe>]) -> Result<Scheme> {
        Scheme::new(vanishing_ideal(ring, points)?)
    }

    /// The grevlex ring of the scheme.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.basis.ring
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.basis.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.basis.ring.nvars()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// |S|, the dimension of the coordinate ring.
    pub fn degree(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_monomial(&self) -> bool {
        self.basis.elements.iter().all(|g| g.is_monomial())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.basis.normal_form(f)
    }

    /// Coordinates of `f` mod I in the standard-monomial basis.
    pub fn coordinates(&self, f: &Polynomial) -> Vec<crate::ff::Fe> {
        let nf = self.normal_form(f);
        self.standard.iter().map(|m| nf.coeff(m)).collect()
    }

    /// Scheme of the ideal I + (extra), i.e. the intersection with the zero set of `extra`.
    pub fn intersect_with(&self, extra: &[Polynomial]) -> Result<QuotientDim> {
        let mut gens = self.basis.elements.clone();
        gens.extend(extra.iter().map(|g| g.to_ring(self.ring())));
        Ok(Ideal::new(self.ring(), gens)?.grevlex_basis()?.quotient_dim())
    }

    /// The generators of the reduced grevlex basis, one per line.
    pub fn generator_strings(&self) -> Vec<String> {
        self.basis.elements.iter().map(|g| g.format()).collect()
    }
}

/// The lex order with x1 the smallest variable, which is the gin default.
pub fn paper_lex(n: usize) -> MonomialOrder {
    MonomialOrder::ascending(OrderKind::Lex, n)
}
