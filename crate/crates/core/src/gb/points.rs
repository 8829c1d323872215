//! Vanishing ideals of finite point sets (Buchberger–Möller).

use std::collections::BTreeSet;
use std::sync::Arc;

use super::Ideal;
use crate::error::{Error, Result};
use crate::ff::Fe;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Reduced grevlex basis of the ideal of all polynomials vanishing on `points`.
/// Duplicate points are ignored.
pub fn vanishing_ideal(ring: &Arc<Ring>, points: &[Vec<Fe>]) -> Result<Ideal> {
    let n = ring.nvars();
    let ring = ring.with_order(MonomialOrder::grevlex(n));
    let field = ring.field().clone();
    let pts: Vec<&Vec<Fe>> = points.iter().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some(bad) = pts.iter().find(|p| p.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, ring has {n} variables",
            bad.len()
        )));
    }
    let eval = |m: &Monomial| -> Vec<Fe> {
        pts.iter()
            .map(|p| (0..n).fold(Fe::ONE, |acc, i| field.mul(acc, field.pow(p[i], m.exp(i) as u64))))
            .collect()
    };
    let ord = ring.order().clone();
    // Echelon rows: (pivot, evaluation vector, polynomial whose evaluation it is).
    let mut rows: Vec<(usize, Vec<Fe>, Polynomial)> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut queue: Vec<Monomial> = vec![Monomial::one(n)];
    while !queue.is_empty() {
        let idx = (0..queue.len()).min_by(|&a, &b| ord.cmp(&queue[a], &queue[b])).unwrap();
        let t = queue.swap_remove(idx);
        if leads.iter().any(|l| l.divides(&t)) {
            continue;
        }
        let mut v = eval(&t);
        let mut poly = Polynomial::term(&ring, t.clone(), Fe::ONE);
        for (piv, row, rp) in &rows {
            let c = v[*piv];
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = field.sub(*vi, field.mul(c, *ri));
            }
            poly = poly.sub(&rp.scale(c));
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                leads.push(t);
                gens.push(poly);
            }
            Some(piv) => {
                let inv = field.inv(v[piv]);
                let v: Vec<Fe> = v.iter().map(|&x| field.mul(x, inv)).collect();
                let poly = poly.scale(inv);
                // keep rows mutually reduced at their pivots
                for (_, row, rp) in rows.iter_mut() {
                    let c = row[piv];
                    if !c.is_zero() {
                        for (ri, vi) in row.iter_mut().zip(&v) {
                            *ri = field.sub(*ri, field.mul(c, *vi));
                        }
                        *rp = rp.sub(&poly.scale(c));
                    }
                }
                rows.push((piv, v, poly));
                for i in 0..n {
                    let next = t.mul_var(i);
                    if !queue.contains(&next) {
                        queue.push(next);
                    }
                }
            }
        }
    }
    let mut gens = gens;
    gens.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ideal::new(&ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldCtx;
    use crate::poly::parse_polynomial;

    #[test]
    fn three_points_in_the_plane() {
        let f = FieldCtx::prime(3).unwrap();
        let r = Ring::standard(f.clone(), 2);
        let e = |v| f.from_int(v);
        let pts = vec![vec![e(0), e(0)], vec![e(1), e(0)], vec![e(0), e(1)]];
        let i = vanishing_ideal(&r, &pts).unwrap();
        let expected = Ideal::new(
            &r,
            ["x1^2 - x1", "x2^2 - x2", "x1*x2"]
                .iter()
                .map(|s| parse_polynomial(s, &r).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(i.same_ideal(&expected).unwrap());
        let gb = i.grevlex_basis().unwrap();
        assert_eq!(gb.elements(), i.generators());
        for p in &pts {
            assert!(i.generators().iter().all(|g| g.eval(p).is_zero()));
        }
    }

    #[test]
    fn all_points_of_the_plane() {
        let f = FieldCtx::prime(3).unwrap();
        let r = Ring::standard(f.clone(), 2);
        let pts: Vec<Vec<Fe>> = f
            .elements()
            .flat_map(|a| f.elements().map(move |b| vec![a, b]))
            .collect();
        let i = vanishing_ideal(&r, &pts).unwrap();
        assert_eq!(i.quotient_dim().unwrap().finite(), Some(9));
        let x = parse_polynomial("x1^3 - x1", &r).unwrap();
        assert!(i.contains(&x).unwrap());
    }
}
