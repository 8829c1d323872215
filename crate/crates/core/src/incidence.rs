//! Intersection degrees |S ∩ V|, rich directions and the Radon transform.

use std::collections::HashMap;
use std::sync::Arc;

use crate::binom;
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldCtx};
use crate::gb::{Ideal, QuotientDim, Scheme};
use crate::geom::{
    enumerate_directions, enumerate_parallel, gaussian_binomial, parameter_ring, plane_linear_forms,
    plane_parametrization, AffinePlane, Direction,
};

/// |S ∩ V| computed by restricting I_S to a parametrization of V.
pub fn intersection_degree(s: &Scheme, plane: &AffinePlane) -> Result<usize> {
    let k = plane.direction().k();
    let params = parameter_ring(s.field(), k);
    let images = plane_parametrization(&params, plane);
    let gens = s
        .basis()
        .elements()
        .iter()
        .map(|g| g.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    match Ideal::new(&params, gens)?.quotient_dim()? {
        QuotientDim::Finite(d) => Ok(d),
        QuotientDim::Infinite => Err(Error::InfiniteQuotient),
    }
}

/// |S ∩ V| computed as the colength of I_S + (cutting forms of V).
pub fn intersection_degree_by_forms(s: &Scheme, plane: &AffinePlane) -> Result<usize> {
    let forms = plane_linear_forms(s.ring(), plane, None)?;
    s.intersect_with(&forms)?.finite().ok_or(Error::InfiniteQuotient)
}

/// Richness of one direction: the best parallel plane and its degree.
#[derive(Clone, Debug)]
pub struct DirectionRichness {
    pub direction: Direction,
    pub best_plane: AffinePlane,
    pub richness: usize,
    /// Degrees of every parallel plane, in enumeration order, when requested.
    pub per_plane: Option<Vec<usize>>,
}

/// The Radon transform T_{n,k}(S) over all of Gr(k, n)(F_q).
#[derive(Clone, Debug)]
pub struct IncidenceTable {
    pub k: usize,
    pub rows: Vec<DirectionRichness>,
}

impl IncidenceTable {
    pub fn values(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.richness).collect()
    }

    pub fn min_richness(&self) -> usize {
        self.rows.iter().map(|r| r.richness).min().unwrap_or(0)
    }

    /// Σ_{m,k}^S: the directions whose richness is at least m.
    pub fn rich(&self, m: usize) -> Vec<&Direction> {
        self.rows
            .iter()
            .filter(|r| r.richness >= m)
            .map(|r| &r.direction)
            .collect()
    }
}

/// Richness of a single direction, maximizing over all q^{n−k} parallel planes.
pub fn direction_richness(s: &Scheme, dir: &Direction, keep_planes: bool) -> Result<DirectionRichness> {
    let planes = enumerate_parallel(s.field(), dir)?;
    let degrees = planes
        .iter()
        .map(|p| intersection_degree(s, p))
        .collect::<Result<Vec<_>>>()?;
    let best = (0..degrees.len()).fold(0, |b, i| if degrees[i] > degrees[b] { i } else { b });
    let richness = degrees[best];
    Ok(DirectionRichness {
        direction: dir.clone(),
        best_plane: planes[best].clone(),
        richness,
        per_plane: keep_planes.then_some(degrees),
    })
}

pub fn radon_transform(s: &Scheme, k: usize) -> Result<IncidenceTable> {
    radon_transform_with(s, k, false)
}

pub fn radon_transform_with(s: &Scheme, k: usize, keep_planes: bool) -> Result<IncidenceTable> {
    let rows = enumerate_directions(s.field(), s.nvars(), k)?
        .iter()
        .map(|d| direction_richness(s, d, keep_planes))
        .collect::<Result<Vec<_>>>()?;
    Ok(IncidenceTable { k, rows })
}

pub fn rich_directions(s: &Scheme, m: usize, k: usize) -> Result<Vec<Direction>> {
    Ok(radon_transform(s, k)?.rich(m).into_iter().cloned().collect())
}

/// Whether every direction is m-rich, with the first direction that is not.
pub fn check_furstenberg(s: &Scheme, k: usize, m: usize) -> Result<(bool, Option<Direction>)> {
    if m == 0 {
        return Ok((true, None));
    }
    for dir in enumerate_directions(s.field(), s.nvars(), k)? {
        let planes = enumerate_parallel(s.field(), &dir)?;
        let mut ok = false;
        for plane in &planes {
            if intersection_degree(s, plane)? >= m {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok((false, Some(dir)));
        }
    }
    Ok((true, None))
}

/// A union of fat points m_x^{d_x}, handled through closed-form slice degrees.
#[derive(Clone, Debug)]
pub struct FormalFatUnion {
    field: Arc<FieldCtx>,
    n: usize,
    points: Vec<(Vec<Fe>, u32)>,
    weights: HashMap<Vec<Fe>, u64>,
}

/// Fat points of thickness ⌊f(x)^{1/k}⌋ at every x with f(x) ≥ 1.
pub fn fat_union(field: &Arc<FieldCtx>, n: usize, f: &[(Vec<Fe>, u64)], k: usize) -> Result<FormalFatUnion> {
    let mut points: Vec<(Vec<Fe>, u32)> = Vec::new();
    let mut weights = HashMap::new();
    for (x, v) in f {
        if x.len() != n {
            return Err(Error::InvalidArgument("point has the wrong dimension".into()));
        }
        if weights.insert(x.clone(), *v).is_some() {
            return Err(Error::InvalidArgument("support points must be distinct".into()));
        }
        let d = integer_root(*v, k as u32);
        if d >= 1 {
            points.push((x.clone(), d as u32));
        }
    }
    Ok(FormalFatUnion {
        field: field.clone(),
        n,
        points,
        weights,
    })
}

/// ⌊v^{1/k}⌋ computed exactly.
pub fn integer_root(v: u64, k: u32) -> u64 {
    if k <= 1 || v <= 1 {
        return if k == 0 { 0 } else { v };
    }
    let mut r = (v as f64).powf(1.0 / k as f64).round() as u64;
    let pow = |b: u64| (b as u128).checked_pow(k).unwrap_or(u128::MAX);
    while pow(r) > v as u128 {
        r -= 1;
    }
    while pow(r + 1) <= v as u128 {
        r += 1;
    }
    r
}

impl FormalFatUnion {
    pub fn points(&self) -> &[(Vec<Fe>, u32)] {
        &self.points
    }

    /// |S_f| = Σ binom(d_x − 1 + n, n).
    pub fn size(&self) -> u64 {
        self.points
            .iter()
            .map(|(_, d)| binom(*d as u64 - 1 + self.n as u64, self.n as u64))
            .sum()
    }

    /// Exact degree of the intersection with an affine plane: Σ over support points
    /// on the plane of binom(d_x − 1 + k, k).
    pub fn slice_sum(&self, plane: &AffinePlane) -> u64 {
        let k = plane.direction().k() as u64;
        self.points
            .iter()
            .filter(|(x, _)| plane.contains(&self.field, x))
            .map(|(_, d)| binom(*d as u64 - 1 + k, k))
            .sum()
    }

    /// Σ_{v ∈ V} f(v), the approximation used in the restriction argument.
    pub fn weight_sum(&self, plane: &AffinePlane) -> u64 {
        self.weights
            .iter()
            .filter(|(x, _)| plane.contains(&self.field, x))
            .map(|(_, &w)| w)
            .sum()
    }

    /// Radon transform from slice sums: max over parallel planes.
    pub fn radon(&self, k: usize) -> Result<Vec<(Direction, u64, u64)>> {
        enumerate_directions(&self.field, self.n, k)?
            .into_iter()
            .map(|d| {
                let planes = enumerate_parallel(&self.field, &d)?;
                let exact = planes.iter().map(|p| self.slice_sum(p)).max().unwrap_or(0);
                let approx = planes.iter().map(|p| self.weight_sum(p)).max().unwrap_or(0);
                Ok((d, exact, approx))
            })
            .collect()
    }
}

/// Both sides of the restriction-type inequality ‖T‖_n ≲ |Gr|^{1/n} |S|^{k/n}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RestrictionSides {
    pub lhs: f64,
    pub rhs: f64,
}

/// lhs = (Σ_ω T(ω)^n)^{1/n}, rhs = |Gr(k,n)(F_q)|^{1/n} · |S|^{k/n}.
pub fn restriction_sides_from(values: &[u64], n: usize, k: usize, size: u64, q: u64) -> RestrictionSides {
    let nf = n as f64;
    let sum: f64 = values.iter().map(|&t| (t as f64).powi(n as i32)).sum();
    let gr = gaussian_binomial(n as u32, k as u32, q) as f64;
    RestrictionSides {
        lhs: sum.powf(1.0 / nf),
        rhs: gr.powf(1.0 / nf) * (size as f64).powf(k as f64 / nf),
    }
}

pub fn restriction_sides(s: &Scheme, k: usize) -> Result<RestrictionSides> {
    let table = radon_transform(s, k)?;
    let values: Vec<u64> = table.values().iter().map(|&v| v as u64).collect();
    Ok(restriction_sides_from(
        &values,
        s.nvars(),
        k,
        s.degree() as u64,
        s.field().size() as u64,
    ))
}

pub fn restriction_sides_fat(u: &FormalFatUnion, k: usize) -> Result<RestrictionSides> {
    let values: Vec<u64> = u.radon(k)?.iter().map(|(_, exact, _)| *exact).collect();
    Ok(restriction_sides_from(&values, u.n, k, u.size(), u.field.size() as u64))
}

/// Relative closeness |a − b| ≤ tol · max(|a|, |b|).
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// The ideal of the fat point m_x^d, for materializing small fat unions.
pub fn fat_point_ideal(ring: &Arc<crate::poly::Ring>, x: &[Fe], d: u32) -> Ideal {
    let shifted: Vec<Fe> = x.iter().map(|&c| ring.field().neg(c)).collect();
    let base = Ideal::maximal_power(ring, d);
    let gens = base.generators().iter().map(|g| g.translate(&shifted)).collect();
    Ideal::new(ring, gens).expect("same ring")
}
