//! Example schemes and bound checks at desk scale: fat points, unions of rotated
//! curvilinear schemes, the Furstenberg bound ratio, the dimension induction step,
//! and searches for small reduced Furstenberg sets.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::binom;
use crate::borel::largest_binom_index;
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldCtx};
use crate::gb::{Ideal, Scheme};
use crate::geom::{all_points, enumerate_directions, enumerate_parallel, Direction};
use crate::incidence::{check_furstenberg, intersection_degree, radon_transform};
use crate::poly::{Polynomial, Ring};

/// Largest fat point built on request.
pub const FAT_POINT_CAP: u64 = 5_000;

/// The fat point (x_1, …, x_n)^{d+1}, of length binom(d+n, n).
pub fn make_fat_point(field: &Arc<FieldCtx>, n: usize, d: u32) -> Result<Scheme> {
    let size = binom(d as u64 + n as u64, n as u64);
    if size > FAT_POINT_CAP {
        return Err(Error::EnumerationCap {
            count: size as u128,
            cap: FAT_POINT_CAP as u128,
        });
    }
    let ring = Ring::standard(field.clone(), n);
    Scheme::new(Ideal::maximal_power(&ring, d + 1))
}

/// Intersection over all q+1 lines μ = 0 through the origin of F_q^2 of the
/// curvilinear ideals (μ, ν^N), with ν the coordinate at the line's pivot.
pub fn make_rotations_union(field: &Arc<FieldCtx>, length: u32) -> Result<Scheme> {
    if length == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let ring = Ring::standard(field.clone(), 2);
    let mut acc: Option<Ideal> = None;
    for dir in enumerate_directions(field, 2, 1)? {
        let v = &dir.basis()[0];
        let mu = Polynomial::var(&ring, 0)
            .scale(v[1])
            .sub(&Polynomial::var(&ring, 1).scale(v[0]));
        let nu = Polynomial::var(&ring, dir.pivots()[0]).pow(length);
        let piece = Ideal::new(&ring, vec![mu, nu])?;
        acc = Some(match acc {
            None => piece,
            Some(a) => a.intersection(&piece)?,
        });
    }
    Scheme::new(acc.expect("at least one direction"))
}

/// |S| against the minimal richness m* over all directions.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub m_star: usize,
    pub size: usize,
    /// |S| / m*^{n/k}
    pub ratio: f64,
    /// |S| / (m*^{n/k} / n!), the refined asymptotic form.
    pub factorial_ratio: f64,
    pub constant: f64,
    /// |S| ≥ m*^{n/k} / C
    pub pass: bool,
}

pub fn bound_report(s: &Scheme, k: usize, constant: f64) -> Result<BoundReport> {
    let n = s.nvars();
    let table = radon_transform(s, k)?;
    let m_star = table.min_richness();
    Ok(bound_report_from(s.field().size(), n, k, m_star, s.degree(), constant))
}

pub fn bound_report_from(q: u32, n: usize, k: usize, m_star: usize, size: usize, constant: f64) -> BoundReport {
    let target = (m_star as f64).powf(n as f64 / k as f64);
    let n_fact: f64 = (1..=n).map(|v| v as f64).product();
    let ratio = if target > 0.0 {
        size as f64 / target
    } else {
        f64::INFINITY
    };
    BoundReport {
        q,
        n,
        k,
        m_star,
        size,
        ratio,
        factorial_ratio: ratio * n_fact,
        constant,
        pass: size as f64 * constant >= target,
    }
}

/// The step from k-planes to (k+1)-planes through the origin.
#[derive(Clone, Debug)]
pub struct InductionReport {
    pub k: usize,
    /// Minimal richness over through-origin k-planes.
    pub m: usize,
    /// Largest b with binom(b, k) ≤ m; `None` if the hypothesis fails (m = 0).
    pub b: Option<u64>,
    /// binom(b+1, k+1)
    pub required: u64,
    /// (direction, |S ∩ W|) for each through-origin (k+1)-plane W.
    pub rows: Vec<(Direction, usize)>,
}

impl InductionReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.b.is_some()
    }

    pub fn min_actual(&self) -> usize {
        self.rows.iter().map(|r| r.1).min().unwrap_or(0)
    }

    pub fn failures(&self) -> Vec<&(Direction, usize)> {
        self.rows.iter().filter(|r| (r.1 as u64) < self.required).collect()
    }

    pub fn holds(&self) -> bool {
        self.hypothesis_holds() && self.failures().is_empty()
    }
}

pub fn induction_step_check(s: &Scheme, k: usize) -> Result<InductionReport> {
    let n = s.nvars();
    if !s.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k < n, got k={k}, n={n}")));
    }
    let field = s.field();
    // S sits at the origin, so through-origin planes realize every richness.
    let m = enumerate_directions(field, n, k)?
        .iter()
        .map(|d| intersection_degree(s, &d.through_origin()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .unwrap_or(0);
    let b = (m >= 1).then(|| largest_binom_index(k as u64, m as u64));
    let required = b.map_or(0, |b| binom(b + 1, k as u64 + 1));
    let rows = if k + 1 == n {
        let whole = Direction::from_rows(field, n, &identity_rows(n))?;
        vec![(whole, s.degree())]
    } else {
        enumerate_directions(field, n, k + 1)?
            .into_iter()
            .map(|d| {
                let deg = intersection_degree(s, &d.through_origin())?;
                Ok((d, deg))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(InductionReport {
        k,
        m,
        b,
        required,
        rows,
    })
}

fn identity_rows(n: usize) -> Vec<Vec<Fe>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Greedy,
    Random,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SearchMode> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "greedy" => Ok(SearchMode::Greedy),
            "random" => Ok(SearchMode::Random),
            _ => Err(Error::InvalidArgument(format!("unknown search mode `{s}`"))),
        }
    }
}

/// Largest ambient space searched, in points.
pub const SEARCH_POINT_CAP: usize = 4096;
/// Largest ambient space for exhaustive search.
pub const EXHAUSTIVE_POINT_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub points: Vec<Vec<Fe>>,
    pub size: usize,
    pub mode: SearchMode,
    /// Candidate sets examined.
    pub evaluated: u64,
    /// check_furstenberg on the scheme of the returned points.
    pub certified: bool,
}

/// Point-plane incidences as bitsets over the q^n points, grouped by direction.
struct Incidences {
    points: Vec<Vec<Fe>>,
    words: usize,
    /// classes[d][v] = bitset of points in the v-th plane of direction d
    classes: Vec<Vec<Vec<u64>>>,
}

impl Incidences {
    fn new(field: &FieldCtx, n: usize, k: usize) -> Result<Incidences> {
        let points = all_points(field, n)?;
        if points.len() > SEARCH_POINT_CAP {
            return Err(Error::EnumerationCap {
                count: points.len() as u128,
                cap: SEARCH_POINT_CAP as u128,
            });
        }
        let index: HashMap<&Vec<Fe>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let words = points.len().div_ceil(64);
        let mut classes = Vec::new();
        for dir in enumerate_directions(field, n, k)? {
            let mut class = Vec::new();
            for plane in enumerate_parallel(field, &dir)? {
                let mut bits = vec![0u64; words];
                for p in plane.points(field)? {
                    let i = index[&p];
                    bits[i / 64] |= 1 << (i % 64);
                }
                class.push(bits);
            }
            classes.push(class);
        }
        Ok(Incidences { points, words, classes })
    }

    fn best(&self, set: &[u64], class: &[Vec<u64>]) -> usize {
        class
            .iter()
            .map(|v| v.iter().zip(set).map(|(a, b)| (a & b).count_ones() as usize).sum())
            .max()
            .unwrap_or(0)
    }

    fn deficit(&self, set: &[u64], m: usize) -> usize {
        self.classes.iter().map(|c| m.saturating_sub(self.best(set, c))).sum()
    }

    fn is_furstenberg(&self, set: &[u64], m: usize) -> bool {
        self.classes.iter().all(|c| self.best(set, c) >= m)
    }

    fn bits(&self, members: &[usize]) -> Vec<u64> {
        let mut b = vec![0u64; self.words];
        for &i in members {
            b[i / 64] |= 1 << (i % 64);
        }
        b
    }

    /// Drops members in the given order while the set stays m-rich.
    fn prune(&self, members: &mut Vec<usize>, order: &[usize], m: usize) {
        for &i in order {
            if let Some(pos) = members.iter().position(|&x| x == i) {
                let mut trial = members.clone();
                trial.remove(pos);
                if self.is_furstenberg(&self.bits(&trial), m) {
                    *members = trial;
                }
            }
        }
    }
}

/// Smallest reduced S ⊆ F_q^n found with every k-direction m-rich. Exhaustive
/// mode returns the true minimum; `budget` is the number of restarts in random
/// mode and is ignored otherwise.
pub fn search_furstenberg_sets(
    field: &Arc<FieldCtx>,
    n: usize,
    k: usize,
    m: usize,
    mode: SearchMode,
    budget: u64,
    seed: u64,
) -> Result<SearchResult> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k < n, got k={k}, n={n}")));
    }
    let plane_size = (field.size() as u64).pow(k as u32);
    if m as u64 > plane_size {
        return Err(Error::InvalidArgument(format!(
            "no set is {m}-rich: a {k}-plane has only {plane_size} points"
        )));
    }
    let inc = Incidences::new(field, n, k)?;
    let total = inc.points.len();
    let mut evaluated = 0u64;
    let members: Vec<usize> = match mode {
        SearchMode::Exhaustive => {
            if total > EXHAUSTIVE_POINT_CAP {
                return Err(Error::EnumerationCap {
                    count: 1u128 << total.min(127),
                    cap: 1 << EXHAUSTIVE_POINT_CAP,
                });
            }
            let mut found = None;
            'sizes: for size in 0..=total {
                for subset in crate::geom::subsets(total, size) {
                    evaluated += 1;
                    if inc.is_furstenberg(&inc.bits(&subset), m) {
                        found = Some(subset);
                        break 'sizes;
                    }
                }
            }
            found.expect("the whole space is m-rich")
        }
        SearchMode::Greedy => {
            let mut members = Vec::new();
            let mut bits = inc.bits(&members);
            while !inc.is_furstenberg(&bits, m) {
                let mut best: Option<(usize, usize)> = None;
                for i in (0..total).filter(|i| !members.contains(i)) {
                    let mut trial = bits.clone();
                    trial[i / 64] |= 1 << (i % 64);
                    evaluated += 1;
                    let d = inc.deficit(&trial, m);
                    if best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((i, d));
                    }
                }
                let (i, _) = best.expect("some point remains");
                members.push(i);
                bits[i / 64] |= 1 << (i % 64);
            }
            let order: Vec<usize> = members.clone();
            inc.prune(&mut members, &order, m);
            members
        }
        SearchMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<Vec<usize>> = None;
            for _ in 0..budget.max(1) {
                let mut order: Vec<usize> = (0..total).collect();
                order.shuffle(&mut rng);
                let mut members = Vec::new();
                let mut bits = inc.bits(&members);
                for &i in &order {
                    if inc.is_furstenberg(&bits, m) {
                        break;
                    }
                    members.push(i);
                    bits[i / 64] |= 1 << (i % 64);
                }
                order.shuffle(&mut rng);
                inc.prune(&mut members, &order, m);
                evaluated += 1;
                if best.as_ref().is_none_or(|b| members.len() < b.len()) {
                    best = Some(members);
                }
            }
            best.expect("at least one restart")
        }
    };
    let mut members = members;
    members.sort_unstable();
    let points: Vec<Vec<Fe>> = members.iter().map(|&i| inc.points[i].clone()).collect();
    let certified = if points.is_empty() {
        m == 0
    } else {
        let ring = Ring::standard(field.clone(), n);
        let s = Scheme::from_points(&ring, &points)?;
        check_furstenberg(&s, k, m)?.0
    };
    Ok(SearchResult {
        size: points.len(),
        points,
        mode,
        evaluated,
        certified,
    })
}
