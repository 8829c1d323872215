use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::Fe;
use crate::poly::{Monomial, Polynomial, Ring};

/// Limits for Gröbner computations.
#[derive(Clone, Copy, Debug)]
pub struct GbConfig {
    /// Maximum number of S-pair reductions before giving up.
    pub step_limit: u64,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { step_limit: 1_000_000 }
    }
}

/// Remainder of `f` on division by `basis`; no term of the result is divisible by a
/// leading monomial of `basis`. Elements of `basis` must be monic.
pub fn reduce_full(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut rem = Vec::new();
    let mut p = f.clone();
    while let Some((m, c)) = p.terms().first().cloned() {
        let div = basis
            .iter()
            .find_map(|g| g.leading_monomial().and_then(|lm| m.div(lm)).map(|q| (g, q)));
        match div {
            Some((g, q)) => p = p.add_scaled_shifted(g, field.neg(c), &q),
            None => {
                rem.push((m, c));
                p = p.tail();
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let field = f.field();
    f.mul_monomial(&l.div(lf).unwrap())
        .add_scaled_shifted(g, field.neg(Fe::ONE), &l.div(lg).unwrap())
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens` under the order of
/// `ring` (generators are re-sorted into `ring`). Pairs are selected by the normal
/// strategy: smallest lcm first, ties broken by generator index.
pub fn buchberger(ring: &Arc<Ring>, gens: &[Polynomial], config: &GbConfig) -> Result<Vec<Polynomial>> {
    let ord = ring.order().clone();
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = g.to_ring(ring);
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    if basis.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair {
                i,
                j,
                lcm: basis[i]
                    .leading_monomial()
                    .unwrap()
                    .lcm(basis[j].leading_monomial().unwrap()),
            });
        }
    }
    let mut steps = 0u64;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                ord.cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (li, lj) = (fi.leading_monomial().unwrap(), fj.leading_monomial().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        // Chain criterion: some k with lm(k) | lcm whose pairs with i and j are done.
        let pending = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            pairs.iter().any(|p| p.i == a && p.j == b)
        };
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].leading_monomial().unwrap().divides(&pair.lcm)
                && !pending(pair.i, k)
                && !pending(pair.j, k)
        });
        if chain {
            continue;
        }
        steps += 1;
        if steps > config.step_limit {
            return Err(Error::StepLimit {
                limit: config.step_limit,
            });
        }
        let s = s_polynomial(fi, fj);
        let h = reduce_full(&s, &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        let new = basis.len();
        let lh = h.leading_monomial().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: new,
                lcm: g.leading_monomial().unwrap().lcm(&lh),
            });
        }
        basis.push(h);
    }
    Ok(interreduce(basis))
}

/// Turns a Gröbner basis into the reduced one, sorted by increasing leading monomial.
pub fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    if basis.is_empty() {
        return basis;
    }
    let ord = basis[0].ring().order().clone();
    basis.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g.monic());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[i];
        let (lm, lc) = g.terms()[0].clone();
        let tail = reduce_full(&g.tail(), &others);
        out.push(Polynomial::term(g.ring(), lm, lc).add(&tail));
    }
    out.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}
