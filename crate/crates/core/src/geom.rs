//! Linear subspaces and affine planes of F_q^n, Plücker coordinates and charts.
//!
//! A chart is named by the (n−k) variables J that lead its cutting forms: a
//! k-plane V through the origin lies in chart J when it is the common zero set of
//! ℓ_a = x_a + Σ_{b ∉ J} c_{a,b} x_b, a ∈ J. This happens exactly when V projects
//! isomorphically onto the coordinates outside J, i.e. when the Plücker
//! coordinate of V indexed by the complement of J is nonzero.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{Fe, FieldCtx};
use crate::linalg::Matrix;
use crate::poly::{MonomialOrder, Polynomial, Ring};

/// Default cap on the number of directions or points enumerated in one call.
pub const ENUMERATION_CAP: u128 = 2_000_000;

/// The Gaussian binomial [n choose k]_q, the number of k-subspaces of F_q^n.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// All k-element subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every vector of F_q^n, in lexicographic order of element codes.
pub fn all_points(field: &FieldCtx, n: usize) -> Result<Vec<Vec<Fe>>> {
    let q = field.size() as u128;
    let count = q.checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            count,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![Fe::ZERO; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            let next = cur[i].code() + 1;
            if next < field.size() {
                cur[i] = field.from_code(next);
                break;
            }
            cur[i] = Fe::ZERO;
        }
    }
}

/// A k-dimensional subspace of F_q^n, stored as its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    n: usize,
    basis: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Direction {
    /// The row space of `rows`, which must be linearly independent.
    pub fn from_rows(field: &FieldCtx, n: usize, rows: &[Vec<Fe>]) -> Result<Direction> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!("basis vectors must have length {n}")));
        }
        let mut m = Matrix::from_rows(rows);
        if rows.is_empty() {
            m = Matrix::zeros(0, n);
        }
        let pivots = m.rref(field);
        if pivots.len() != rows.len() {
            return Err(Error::InvalidArgument("basis vectors are linearly dependent".into()));
        }
        Ok(Direction {
            n,
            basis: m.to_rows(),
            pivots,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// All q^k vectors of the subspace.
    pub fn points(&self, field: &FieldCtx) -> Result<Vec<Vec<Fe>>> {
        Ok(all_points(field, self.k())?
            .into_iter()
            .map(|t| combine(field, &vec![Fe::ZERO; self.n], &self.basis, &t))
            .collect())
    }

    pub fn contains(&self, field: &FieldCtx, v: &[Fe]) -> bool {
        // In RREF, v lies in the row space iff it equals Σ v[pivot_i] · row_i.
        let proj = combine(
            field,
            &vec![Fe::ZERO; self.n],
            &self.basis,
            &self.pivots.iter().map(|&p| v[p]).collect::<Vec<_>>(),
        );
        proj == v
    }

    /// The plane through the origin in this direction.
    pub fn through_origin(&self) -> AffinePlane {
        AffinePlane {
            direction: self.clone(),
            offset: vec![Fe::ZERO; self.n],
        }
    }

    pub fn format(&self, field: &FieldCtx) -> String {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                let c: Vec<String> = r.iter().map(|&x| field.format(x)).collect();
                format!("({})", c.join(","))
            })
            .collect();
        format!("span[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x.code()).collect())
            .collect();
        write!(f, "Direction{rows:?}")
    }
}

fn combine(field: &FieldCtx, base: &[Fe], rows: &[Vec<Fe>], coeffs: &[Fe]) -> Vec<Fe> {
    let mut out = base.to_vec();
    for (row, &c) in rows.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, &r) in out.iter_mut().zip(row) {
            *o = field.add(*o, field.mul(c, r));
        }
    }
    out
}

/// Every k-subspace of F_q^n exactly once: pivot sets in lexicographic order,
/// then free RREF entries in code order.
pub fn enumerate_directions(field: &FieldCtx, n: usize, k: usize) -> Result<Vec<Direction>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    let count = gaussian_binomial(n as u32, k as u32, field.size() as u64);
    if count > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            count,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for pivots in subsets(n, k) {
        // Free slots: row i, column j > pivot_i with j not a pivot.
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = pivots.clone();
                (pivots[i] + 1..n).filter(move |j| !pv.contains(j)).map(move |j| (i, j))
            })
            .collect();
        for values in all_points(field, slots.len())? {
            let mut basis = vec![vec![Fe::ZERO; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = Fe::ONE;
            }
            for (&(i, j), &v) in slots.iter().zip(&values) {
                basis[i][j] = v;
            }
            out.push(Direction {
                n,
                basis,
                pivots: pivots.clone(),
            });
        }
    }
    Ok(out)
}

/// A translate of a direction. The offset is the unique coset representative
/// whose pivot coordinates are zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffinePlane {
    direction: Direction,
    offset: Vec<Fe>,
}

impl AffinePlane {
    /// The plane through `point` parallel to `direction`.
    pub fn new(field: &FieldCtx, direction: &Direction, point: &[Fe]) -> Result<AffinePlane> {
        if point.len() != direction.n {
            return Err(Error::InvalidArgument("point has the wrong dimension".into()));
        }
        let shift: Vec<Fe> = direction.pivots.iter().map(|&p| field.neg(point[p])).collect();
        let offset = combine(field, point, &direction.basis, &shift);
        Ok(AffinePlane {
            direction: direction.clone(),
            offset,
        })
    }

    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    pub fn offset(&self) -> &[Fe] {
        &self.offset
    }

    pub fn is_through_origin(&self) -> bool {
        self.offset.iter().all(|x| x.is_zero())
    }

    pub fn points(&self, field: &FieldCtx) -> Result<Vec<Vec<Fe>>> {
        Ok(all_points(field, self.direction.k())?
            .into_iter()
            .map(|t| combine(field, &self.offset, &self.direction.basis, &t))
            .collect())
    }

    pub fn contains(&self, field: &FieldCtx, v: &[Fe]) -> bool {
        let diff: Vec<Fe> = v.iter().zip(&self.offset).map(|(&a, &b)| field.sub(a, b)).collect();
        self.direction.contains(field, &diff)
    }

    pub fn format(&self, field: &FieldCtx) -> String {
        let o: Vec<String> = self.offset.iter().map(|&x| field.format(x)).collect();
        format!("({}) + {}", o.join(","), self.direction.format(field))
    }
}

/// The q^{n−k} planes parallel to `direction`, partitioning F_q^n.
pub fn enumerate_parallel(field: &FieldCtx, direction: &Direction) -> Result<Vec<AffinePlane>> {
    let free: Vec<usize> = (0..direction.n).filter(|c| !direction.pivots.contains(c)).collect();
    Ok(all_points(field, free.len())?
        .into_iter()
        .map(|vals| {
            let mut offset = vec![Fe::ZERO; direction.n];
            for (&c, &v) in free.iter().zip(&vals) {
                offset[c] = v;
            }
            AffinePlane {
                direction: direction.clone(),
                offset,
            }
        })
        .collect())
}

/// Plücker coordinates of a direction, indexed by the k-subsets of 0..n in
/// lexicographic order and scaled so the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PluckerVector {
    n: usize,
    k: usize,
    coords: Vec<Fe>,
}

impl PluckerVector {
    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn index_sets(&self) -> Vec<Vec<usize>> {
        subsets(self.n, self.k)
    }

    pub fn get(&self, set: &[usize]) -> Fe {
        let idx = self
            .index_sets()
            .iter()
            .position(|s| s == set)
            .expect("index set of the right size");
        self.coords[idx]
    }

    /// Labels such as `p12` (1-based indices).
    pub fn labels(&self) -> Vec<String> {
        self.index_sets().iter().map(|s| format!("p{}", set_label(s))).collect()
    }

    pub fn format(&self, field: &FieldCtx) -> String {
        self.labels()
            .iter()
            .zip(&self.coords)
            .map(|(l, &c)| format!("{l}={}", field.format(c)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The Plücker relation p12·p34 − p13·p24 + p14·p23 for Gr(2,4).
    pub fn relation_24(&self, field: &FieldCtx) -> Option<Fe> {
        if (self.n, self.k) != (4, 2) {
            return None;
        }
        let p = |a, b| self.get(&[a, b]);
        let t1 = field.mul(p(0, 1), p(2, 3));
        let t2 = field.mul(p(0, 2), p(1, 3));
        let t3 = field.mul(p(0, 3), p(1, 2));
        Some(field.add(field.sub(t1, t2), t3))
    }
}

fn set_label(s: &[usize]) -> String {
    let n_big = s.iter().any(|&i| i >= 9);
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    parts.join(if n_big { "_" } else { "" })
}

fn determinant(field: &FieldCtx, m: Vec<Vec<Fe>>) -> Fe {
    let k = m.len();
    let mut m = m;
    let mut det = Fe::ONE;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return Fe::ZERO;
        };
        if p != c {
            m.swap(p, c);
            det = field.neg(det);
        }
        det = field.mul(det, m[c][c]);
        let inv = field.inv(m[c][c]);
        for r in c + 1..k {
            let f = field.mul(m[r][c], inv);
            if f.is_zero() {
                continue;
            }
            let pivot = m[c].clone();
            for (x, &y) in m[r].iter_mut().zip(&pivot).skip(c) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
    }
    det
}

pub fn plucker(field: &FieldCtx, dir: &Direction) -> PluckerVector {
    let k = dir.k();
    let mut coords: Vec<Fe> = subsets(dir.n, k)
        .iter()
        .map(|cols| {
            let sub: Vec<Vec<Fe>> = dir.basis.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
            determinant(field, sub)
        })
        .collect();
    if let Some(first) = coords.iter().find(|c| !c.is_zero()).copied() {
        let inv = field.inv(first);
        for c in coords.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
    PluckerVector { n: dir.n, k, coords }
}

/// A Plücker chart of Gr(k, n), named by the leading variables of its cutting forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chart {
    n: usize,
    k: usize,
    form_vars: Vec<usize>,
    free_vars: Vec<usize>,
}

impl Chart {
    /// Chart whose cutting forms lead with `form_vars` (0-based, n−k of them).
    pub fn new(n: usize, k: usize, form_vars: &[usize]) -> Result<Chart> {
        let mut fv = form_vars.to_vec();
        fv.sort_unstable();
        fv.dedup();
        if k == 0 || k >= n || fv.len() != n - k || fv.iter().any(|&v| v >= n) {
            return Err(Error::InvalidArgument(format!(
                "chart needs {} distinct form variables below {n}, got {form_vars:?}",
                n.saturating_sub(k)
            )));
        }
        let free_vars = (0..n).filter(|v| !fv.contains(v)).collect();
        Ok(Chart {
            n,
            k,
            form_vars: fv,
            free_vars,
        })
    }

    /// The chart containing every direction whose RREF pivots are `pivots`
    /// (the chart where the Plücker coordinate on `pivots` is nonzero).
    pub fn for_direction_pivots(n: usize, pivots: &[usize]) -> Result<Chart> {
        let forms: Vec<usize> = (0..n).filter(|v| !pivots.contains(v)).collect();
        Chart::new(n, pivots.len(), &forms)
    }

    /// All binom(n, k) charts, by form variables in lexicographic order.
    pub fn all(n: usize, k: usize) -> Result<Vec<Chart>> {
        subsets(n, n - k).iter().map(|s| Chart::new(n, k, s)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn form_vars(&self) -> &[usize] {
        &self.form_vars
    }

    pub fn free_vars(&self) -> &[usize] {
        &self.free_vars
    }

    /// 1-based label such as `{1,2}`.
    pub fn label(&self) -> String {
        let v: Vec<String> = self.form_vars.iter().map(|v| (v + 1).to_string()).collect();
        format!("{{{}}}", v.join(","))
    }

    /// Number of chart coordinates, k(n−k).
    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// Position of c_{a,b} in the coordinate vector (a, b given as variable indices).
    pub fn coord_index(&self, a: usize, b: usize) -> usize {
        let ia = self
            .form_vars
            .iter()
            .position(|&v| v == a)
            .expect("a is a form variable");
        let ib = self
            .free_vars
            .iter()
            .position(|&v| v == b)
            .expect("b is a free variable");
        ia * self.k + ib
    }

    /// Coordinate names: c_{a,b} is called `c` followed by the sorted indices of
    /// (J \ {a}) ∪ {b}, matching the Plücker ratio it equals up to sign.
    pub fn coordinate_names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.dim());
        for &a in &self.form_vars {
            for &b in &self.free_vars {
                let mut s: Vec<usize> = self.form_vars.iter().copied().filter(|&v| v != a).collect();
                s.push(b);
                s.sort_unstable();
                out.push(format!("c{}", set_label(&s)));
            }
        }
        out
    }

    /// Polynomial ring in the chart coordinates.
    pub fn ring(&self, field: &Arc<FieldCtx>) -> Arc<Ring> {
        Ring::new(
            field.clone(),
            self.coordinate_names(),
            MonomialOrder::grevlex(self.dim()),
        )
        .expect("chart coordinate names are valid")
    }

    pub fn contains(&self, field: &FieldCtx, dir: &Direction) -> bool {
        self.coordinates(field, dir).is_ok()
    }

    /// Chart coordinates of a direction, or `OutsideChart`.
    pub fn coordinates(&self, field: &FieldCtx, dir: &Direction) -> Result<Vec<Fe>> {
        if dir.n != self.n || dir.k() != self.k {
            return Err(Error::InvalidArgument("direction has the wrong shape".into()));
        }
        // B' = (B restricted to free columns)^{-1} B has the identity on free columns.
        let k = self.k;
        let mut aug: Vec<Vec<Fe>> = dir
            .basis
            .iter()
            .map(|r| {
                let mut row: Vec<Fe> = self.free_vars.iter().map(|&c| r[c]).collect();
                row.extend_from_slice(r);
                row
            })
            .collect();
        let mut m = Matrix::from_rows(&aug);
        let pivots = m.rref(field);
        if pivots.len() < k || pivots[k - 1] >= k {
            return Err(Error::OutsideChart(self.label()));
        }
        aug = m.to_rows();
        let mut coords = vec![Fe::ZERO; self.dim()];
        for (ia, &a) in self.form_vars.iter().enumerate() {
            for ib in 0..k {
                coords[ia * k + ib] = field.neg(aug[ib][k + a]);
            }
        }
        Ok(coords)
    }

    /// The direction with the given chart coordinates.
    pub fn direction(&self, field: &FieldCtx, coords: &[Fe]) -> Result<Direction> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "chart has {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        let rows: Vec<Vec<Fe>> = self
            .free_vars
            .iter()
            .enumerate()
            .map(|(ib, &b)| {
                let mut r = vec![Fe::ZERO; self.n];
                r[b] = Fe::ONE;
                for (ia, &a) in self.form_vars.iter().enumerate() {
                    r[a] = field.neg(coords[ia * self.k + ib]);
                }
                r
            })
            .collect();
        Direction::from_rows(field, self.n, &rows)
    }

    /// Every F_q-point of the chart, as coordinate vectors.
    pub fn points(&self, field: &FieldCtx) -> Result<Vec<Vec<Fe>>> {
        all_points(field, self.dim())
    }

    /// The cutting forms x_a + Σ_b c_{a,b} x_b with symbolic chart coordinates:
    /// for each form, the coefficient of every variable x_1..x_n as a polynomial
    /// in the chart ring.
    pub fn symbolic_forms(&self, chart_ring: &Arc<Ring>) -> Vec<Vec<Polynomial>> {
        self.form_vars
            .iter()
            .enumerate()
            .map(|(ia, &a)| {
                let mut row = vec![Polynomial::zero(chart_ring); self.n];
                row[a] = Polynomial::one(chart_ring);
                for (ib, &b) in self.free_vars.iter().enumerate() {
                    row[b] = Polynomial::var(chart_ring, ia * self.k + ib);
                }
                row
            })
            .collect()
    }
}

/// Affine-linear forms in `ring` vanishing exactly on `plane`. With a chart, they
/// are the chart's cutting forms plus constants; without one, the chart of the
/// direction's pivots is used.
pub fn plane_linear_forms(ring: &Arc<Ring>, plane: &AffinePlane, chart: Option<&Chart>) -> Result<Vec<Polynomial>> {
    let field = ring.field().clone();
    let dir = plane.direction();
    let default;
    let chart = match chart {
        Some(c) => c,
        None => {
            default = Chart::for_direction_pivots(dir.n, &dir.pivots)?;
            &default
        }
    };
    let coords = chart.coordinates(&field, dir)?;
    let mut out = Vec::with_capacity(chart.form_vars.len());
    for (ia, &a) in chart.form_vars.iter().enumerate() {
        let mut form = Polynomial::var(ring, a);
        let mut value = plane.offset[a];
        for (ib, &b) in chart.free_vars.iter().enumerate() {
            let c = coords[ia * chart.k + ib];
            form = form.add(&Polynomial::var(ring, b).scale(c));
            value = field.add(value, field.mul(c, plane.offset[b]));
        }
        out.push(form.sub(&Polynomial::constant(ring, value)));
    }
    Ok(out)
}

/// Parameter ring k[t1..tk].
pub fn parameter_ring(field: &Arc<FieldCtx>, k: usize) -> Arc<Ring> {
    Ring::new(
        field.clone(),
        (1..=k).map(|i| format!("t{i}")).collect(),
        MonomialOrder::grevlex(k),
    )
    .expect("parameter names are valid")
}

/// x = offset + Σ t_i · basis_i, as n polynomials in `params`.
pub fn plane_parametrization(params: &Arc<Ring>, plane: &AffinePlane) -> Vec<Polynomial> {
    let dir = plane.direction();
    (0..dir.n)
        .map(|j| {
            let mut p = Polynomial::constant(params, plane.offset[j]);
            for (i, row) in dir.basis.iter().enumerate() {
                p = p.add(&Polynomial::var(params, i).scale(row[j]));
            }
            p
        })
        .collect()
}
