//! The moduli of m-rich k-planes for a fixed homogeneous scheme S, one Plücker
//! chart at a time.
//!
//! On a chart the cutting forms are ℓ_a = x_a + Σ_b c_{a,b} x_b and the incidence
//! matrix sends (f_a) to Σ ℓ_a f_a in O_S. Its cokernel at a point is O_{S∩V}, so a
//! plane is m-rich exactly when the matrix has rank ≤ N − m there, which is the
//! vanishing locus of the (N−m+1)-minors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binom;
use crate::borel::largest_binom_index;
use crate::error::{Error, Result};
use crate::ff::{extension_with_min_size, Fe, FieldCtx, FieldEmbedding};
use crate::gb::{Ideal, Scheme};
use crate::geom::Chart;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, Ring};

/// Work cap per block: binom(rows, s) · binom(cols, s) for each minor size s.
pub const MINOR_WORK_CAP: u128 = 10_000_000;
/// Above this many product generators, block generator sets are replaced by
/// their reduced bases before multiplying further.
const PRODUCT_CAP: usize = 4_000;
/// Largest grid used to certify a generic rank by evaluation.
const GRID_CAP: u128 = 250_000;

/// The N × (n−k)N incidence matrix over one chart.
#[derive(Clone, Debug)]
pub struct ChartMatrix {
    chart: Chart,
    ring: Arc<Ring>,
    row_labels: Vec<String>,
    rows: Vec<Monomial>,
    /// (index of the cutting form, index of the standard monomial)
    cols: Vec<(usize, usize)>,
    entries: Vec<Vec<Polynomial>>,
}

impl ChartMatrix {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Polynomial ring in the chart coordinates.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.ring.field()
    }

    /// N, the number of standard monomials.
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_monomials(&self) -> &[Monomial] {
        &self.rows
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    /// Column labels such as `(l1, x4)`; forms are numbered by their leading variable.
    pub fn col_labels(&self) -> Vec<String> {
        self.cols
            .iter()
            .map(|&(a, b)| format!("(l{}, {})", self.chart.form_vars()[a] + 1, self.row_labels[b]))
            .collect()
    }

    pub fn columns(&self) -> &[(usize, usize)] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    /// Largest total degree of an entry, 0 for the zero matrix.
    pub fn max_entry_degree(&self) -> u32 {
        self.entries
            .iter()
            .flatten()
            .filter_map(|e| e.degree())
            .max()
            .unwrap_or(0)
    }

    /// The scalar matrix at a chart point.
    pub fn evaluate(&self, point: &[Fe]) -> Result<Matrix> {
        if point.len() != self.chart.dim() {
            return Err(Error::InvalidArgument(format!(
                "chart has {} coordinates, got {}",
                self.chart.dim(),
                point.len()
            )));
        }
        let rows: Vec<Vec<Fe>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval(point)).collect())
            .collect();
        Ok(Matrix::from_rows(&rows))
    }

    pub fn rank_at(&self, point: &[Fe]) -> Result<usize> {
        Ok(self.evaluate(point)?.rank(self.field()))
    }

    /// N − rank, which equals |S ∩ V| for the plane V at `point`.
    pub fn cokernel_dim_at(&self, point: &[Fe]) -> Result<usize> {
        Ok(self.nrows() - self.rank_at(point)?)
    }

    /// rank ≤ N − m at the point.
    pub fn is_rich_via_rank(&self, point: &[Fe], m: usize) -> Result<bool> {
        Ok(self.cokernel_dim_at(point)? >= m)
    }

    /// Connected blocks of the row/column support graph, each as (rows, cols) in
    /// increasing order. Rows or columns with no nonzero entry are left out.
    pub fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let (nr, nc) = (self.nrows(), self.ncols());
        let mut parent: Vec<usize> = (0..nr + nc).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut used = vec![false; nr + nc];
        for i in 0..nr {
            for j in 0..nc {
                if !self.entries[i][j].is_zero() {
                    used[i] = true;
                    used[nr + j] = true;
                    let (a, b) = (find(&mut parent, i), find(&mut parent, nr + j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (x, &u) in used.iter().enumerate() {
            if !u {
                continue;
            }
            let root = find(&mut parent, x);
            let g = groups.entry(root).or_default();
            if x < nr {
                g.0.push(x);
            } else {
                g.1.push(x - nr);
            }
        }
        groups.into_values().collect()
    }

    /// Rank of the matrix over the function field of the chart, certified by
    /// evaluation on a grid large enough that no nonzero minor can vanish on it
    /// (falling back to exact minor expansion for large grids).
    pub fn generic_rank(&self) -> Result<usize> {
        let mut total = 0;
        for (rows, cols) in self.blocks() {
            total += self.block_generic_rank(&rows, &cols)?;
        }
        Ok(total)
    }

    fn block_generic_rank(&self, rows: &[usize], cols: &[usize]) -> Result<usize> {
        let full = rows.len().min(cols.len());
        let vars: BTreeSet<usize> = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .flat_map(|(i, j)| self.entries[i][j].terms().iter().map(|(m, _)| m.clone()))
            .flat_map(|m| (0..m.nvars()).filter(move |&v| m.exp(v) > 0))
            .collect();
        let vars: Vec<usize> = vars.into_iter().collect();
        let base = self.field();
        if vars.is_empty() {
            let zero = vec![Fe::ZERO; self.chart.dim()];
            return Ok(self.block_matrix(rows, cols, |e| e.eval(&zero)).rank(base));
        }
        // Per variable: largest exponent in an entry and how many rows and columns
        // it touches. An (r+1)-minor has degree at most deg·min(r+1, rows, cols) in it.
        let profile: Vec<(u64, u64, u64)> = vars
            .iter()
            .map(|&v| {
                let mut deg = 0u64;
                let (mut rs, mut cs) = (BTreeSet::new(), BTreeSet::new());
                for &i in rows {
                    for &j in cols {
                        let d = self.entries[i][j]
                            .terms()
                            .iter()
                            .map(|(m, _)| m.exp(v))
                            .max()
                            .unwrap_or(0);
                        if d > 0 {
                            deg = deg.max(d as u64);
                            rs.insert(i);
                            cs.insert(j);
                        }
                    }
                }
                (deg, rs.len() as u64, cs.len() as u64)
            })
            .collect();
        let sides = |r: usize| -> Vec<u64> {
            profile
                .iter()
                .map(|&(deg, rs, cs)| deg * (r as u64 + 1).min(rs).min(cs) + 1)
                .collect()
        };
        let need = sides(full).into_iter().max().unwrap_or(2);
        let (ext, _) = extension_with_min_size(base, need)?;
        let emb = FieldEmbedding::new(base, &ext)?;
        let ext_ring = self.ring.with_field(ext.clone());
        let embedded: BTreeMap<(usize, usize), Polynomial> = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| !self.entries[i][j].is_zero())
            .map(|(i, j)| ((i, j), self.entries[i][j].embed(&ext_ring, &emb)))
            .collect();
        let rank_at = |pt: &[Fe]| -> usize {
            let mut m = Matrix::zeros(rows.len(), cols.len());
            for (ri, &i) in rows.iter().enumerate() {
                for (ci, &j) in cols.iter().enumerate() {
                    if let Some(p) = embedded.get(&(i, j)) {
                        m.set(ri, ci, p.eval(pt));
                    }
                }
            }
            m.rank(&ext)
        };
        let dim = self.chart.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (rows.len() as u64) << 8 ^ cols.len() as u64);
        let mut r = 0;
        for _ in 0..6 {
            let pt: Vec<Fe> = (0..dim).map(|_| ext.from_code(rng.gen_range(0..ext.size()))).collect();
            r = r.max(rank_at(&pt));
            if r == full {
                return Ok(r);
            }
        }
        'grid: loop {
            let side = sides(r);
            if side.iter().map(|&s| s as u128).product::<u128>() > GRID_CAP {
                return self.block_rank_by_minors(rows, cols, r);
            }
            let mut idx = vec![0usize; vars.len()];
            let mut pt = vec![Fe::ZERO; dim];
            loop {
                for (slot, &v) in idx.iter().zip(&vars) {
                    pt[v] = ext.from_code(*slot as u32);
                }
                let here = rank_at(&pt);
                if here > r {
                    r = here;
                    if r == full {
                        return Ok(r);
                    }
                    continue 'grid;
                }
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        return Ok(r);
                    }
                    idx[pos] += 1;
                    if (idx[pos] as u64) < side[pos] {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        }
    }

    fn block_rank_by_minors(&self, rows: &[usize], cols: &[usize], lower: usize) -> Result<usize> {
        let full = rows.len().min(cols.len());
        let mut r = lower;
        while r < full {
            if block_minors(self, rows, cols, r + 1)?.is_empty() {
                return Ok(r);
            }
            r += 1;
        }
        Ok(r)
    }

    fn block_matrix(&self, rows: &[usize], cols: &[usize], f: impl Fn(&Polynomial) -> Fe) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (ri, &i) in rows.iter().enumerate() {
            for (ci, &j) in cols.iter().enumerate() {
                m.set(ri, ci, f(&self.entries[i][j]));
            }
        }
        m
    }

    /// Entries as strings, row by row.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.format()).collect())
            .collect()
    }
}

/// The incidence matrix of a homogeneous scheme on a chart of Gr(k, n).
#[allow(clippy::needless_range_loop)]
pub fn build_chart_matrix(s: &Scheme, chart: &Chart) -> Result<ChartMatrix> {
    if !s.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = s.nvars();
    if chart.n() != n {
        return Err(Error::InvalidArgument(format!(
            "chart lives in {} variables, scheme in {n}",
            chart.n()
        )));
    }
    let ring = chart.ring(s.field());
    let forms = chart.symbolic_forms(&ring);
    let std = s.standard_monomials().to_vec();
    let names = s.ring().names();
    let row_labels: Vec<String> = std.iter().map(|m| m.format(names)).collect();
    // coords[i][b]: coordinates of x_i · b in O_S
    let coords: Vec<Vec<Vec<Fe>>> = (0..n)
        .map(|i| {
            std.iter()
                .map(|b| s.coordinates(&Polynomial::term(s.ring(), b.mul_var(i), Fe::ONE)))
                .collect()
        })
        .collect();
    let field = s.field().clone();
    let nstd = std.len();
    let mut cols = Vec::with_capacity(forms.len() * nstd);
    let mut entries = vec![Vec::with_capacity(forms.len() * nstd); nstd];
    for (a, form) in forms.iter().enumerate() {
        for b in 0..nstd {
            cols.push((a, b));
            for (r, row) in entries.iter_mut().enumerate() {
                let mut e = Polynomial::zero(&ring);
                for (i, coeff) in form.iter().enumerate() {
                    let c = coords[i][b][r];
                    if !c.is_zero() && !coeff.is_zero() {
                        e = e.add(&coeff.scale(c));
                    }
                }
                debug_assert!(e.field() == &field);
                row.push(e);
            }
        }
    }
    Ok(ChartMatrix {
        chart: chart.clone(),
        ring,
        row_labels,
        rows: std,
        cols,
        entries,
    })
}

/// The ideal of (N−m+1)-minors on one chart.
#[derive(Clone, Debug)]
pub struct MinorIdeal {
    pub chart: Chart,
    pub m: usize,
    /// N − m + 1
    pub size: usize,
    pub ring: Arc<Ring>,
    /// Monic, deduplicated generators in a canonical order. Empty when every
    /// minor vanishes identically.
    pub generators: Vec<Polynomial>,
    /// True when some block's minors were replaced by a reduced basis of the ideal
    /// they generate, so generators are no longer literally minors.
    pub condensed: bool,
}

impl MinorIdeal {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.generators.clone())
    }

    /// True when every generator vanishes at the point.
    pub fn vanishes_at(&self, point: &[Fe]) -> bool {
        self.generators.iter().all(|g| g.eval(point).is_zero())
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.format()).collect()
    }
}

/// Minors of one block of every size up to `max_size`, by expanding along rows:
/// level t maps (row mask, column mask) to the t-minor on those rows and columns.
fn block_minor_levels(
    mat: &ChartMatrix,
    rows: &[usize],
    cols: &[usize],
    max_size: usize,
) -> Result<Vec<BTreeMap<(u128, u128), Polynomial>>> {
    if rows.len() > 128 || cols.len() > 128 {
        return Err(Error::EnumerationCap {
            count: rows.len().max(cols.len()) as u128,
            cap: 128,
        });
    }
    for t in 1..=max_size {
        let work = binom(rows.len() as u64, t as u64) as u128 * binom(cols.len() as u64, t as u64) as u128;
        if work > MINOR_WORK_CAP {
            return Err(Error::EnumerationCap {
                count: work,
                cap: MINOR_WORK_CAP,
            });
        }
    }
    let one = Polynomial::one(&mat.ring);
    let mut levels: Vec<BTreeMap<(u128, u128), Polynomial>> = vec![[((0u128, 0u128), one)].into_iter().collect()];
    for t in 1..=max_size {
        let mut next: BTreeMap<(u128, u128), Polynomial> = BTreeMap::new();
        for ((rmask, cmask), minor) in &levels[t - 1] {
            let start = if *rmask == 0 {
                0
            } else {
                128 - rmask.leading_zeros() as usize
            };
            for (ri, &row) in rows.iter().enumerate().skip(start) {
                for (ci, &j) in cols.iter().enumerate() {
                    if cmask >> ci & 1 == 1 {
                        continue;
                    }
                    let a = &mat.entries[row][j];
                    if a.is_zero() {
                        continue;
                    }
                    let before = (cmask & ((1u128 << ci) - 1)).count_ones() as usize;
                    let mut term = a.mul(minor);
                    if (t + 1 + before) % 2 == 1 {
                        term = term.neg();
                    }
                    let key = (rmask | 1u128 << ri, cmask | 1u128 << ci);
                    match next.get_mut(&key) {
                        Some(acc) => *acc = acc.add(&term),
                        None => {
                            next.insert(key, term);
                        }
                    }
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        let empty = next.is_empty();
        levels.push(next);
        if empty {
            // every larger minor expands into these
            while levels.len() <= max_size {
                levels.push(BTreeMap::new());
            }
            break;
        }
    }
    Ok(levels)
}

/// Distinct monic nonzero t-minors of a block.
fn block_minors(mat: &ChartMatrix, rows: &[usize], cols: &[usize], t: usize) -> Result<Vec<Polynomial>> {
    let levels = block_minor_levels(mat, rows, cols, t)?;
    Ok(canonical(levels[t].values().map(|p| p.monic())))
}

fn canonical(polys: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut keyed: BTreeMap<(u32, String), Polynomial> = BTreeMap::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let p = p.monic();
        if p.is_constant() {
            return vec![p];
        }
        keyed.entry((p.degree().unwrap_or(0), p.format())).or_insert(p);
    }
    keyed.into_values().collect()
}

fn condense(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    if gens.is_empty() {
        return Ok(gens);
    }
    let gb = Ideal::new(ring, gens)?.grevlex_basis()?;
    Ok(canonical(gb.elements().iter().map(|g| g.to_ring(ring))))
}

/// J_{X_m} on the chart: the (N−m+1)-minors of the incidence matrix.
///
/// A nonzero s-minor of a block-diagonal matrix is a product of minors of the
/// blocks whose sizes add up to s, so the ideal is assembled blockwise.
pub fn minor_ideal(mat: &ChartMatrix, m: usize) -> Result<MinorIdeal> {
    let n_rows = mat.nrows();
    if m == 0 || m > n_rows {
        return Err(Error::InvalidArgument(format!("need 1 ≤ m ≤ N = {n_rows}, got {m}")));
    }
    let size = n_rows - m + 1;
    let ring = mat.ring.clone();
    let blocks = mat.blocks();
    let mut ranks = Vec::with_capacity(blocks.len());
    for (rows, cols) in &blocks {
        ranks.push(mat.block_generic_rank(rows, cols)?);
    }
    let mut out = MinorIdeal {
        chart: mat.chart.clone(),
        m,
        size,
        ring: ring.clone(),
        generators: Vec::new(),
        condensed: false,
    };
    if ranks.iter().sum::<usize>() < size {
        return Ok(out);
    }
    // acc[u]: generators of the ideal of u-minors of the blocks seen so far
    let mut acc: Vec<Vec<Polynomial>> = vec![Vec::new(); size + 1];
    acc[0] = vec![Polynomial::one(&ring)];
    let mut remaining: usize = ranks.iter().sum();
    for ((rows, cols), &rank) in blocks.iter().zip(&ranks) {
        remaining -= rank;
        let top = rank.min(size);
        let levels = block_minor_levels(mat, rows, cols, top)?;
        let mut sets: Vec<Vec<Polynomial>> = levels.iter().map(|l| canonical(l.values().cloned())).collect();
        sets[0] = vec![Polynomial::one(&ring)];
        let mut next: Vec<Vec<Polynomial>> = vec![Vec::new(); size + 1];
        for u in 0..=size {
            if acc[u].is_empty() {
                continue;
            }
            for (t, set) in sets.iter().enumerate() {
                if u + t > size || set.is_empty() {
                    continue;
                }
                // sizes that can no longer reach `size` are dropped
                if u + t + remaining < size {
                    continue;
                }
                let (mut left, mut right) = (acc[u].clone(), set.clone());
                if left.len() * right.len() > PRODUCT_CAP {
                    left = condense(&ring, left)?;
                    right = condense(&ring, right)?;
                    out.condensed = true;
                }
                if left.len() * right.len() > PRODUCT_CAP * 25 {
                    return Err(Error::EnumerationCap {
                        count: (left.len() * right.len()) as u128,
                        cap: (PRODUCT_CAP * 25) as u128,
                    });
                }
                for a in &left {
                    for b in &right {
                        next[u + t].push(a.mul(b));
                    }
                }
            }
        }
        for (u, gens) in next.into_iter().enumerate() {
            let mut gens = canonical(gens);
            if gens.len() > PRODUCT_CAP {
                gens = condense(&ring, gens)?;
                out.condensed = true;
            }
            acc[u] = gens;
        }
    }
    out.generators = std::mem::take(&mut acc[size]);
    Ok(out)
}

/// Generic rank on each chart of Gr(k, n), in chart order.
pub fn generic_ranks(s: &Scheme, k: usize) -> Result<Vec<(Chart, usize)>> {
    Chart::all(s.nvars(), k)?
        .into_iter()
        .map(|c| {
            let r = build_chart_matrix(s, &c)?.generic_rank()?;
            Ok((c, r))
        })
        .collect()
}

/// True when every k-plane through the origin is m-rich scheme-theoretically:
/// on every chart all (N−m+1)-minors vanish identically.
pub fn x_equals_grassmannian(s: &Scheme, m: usize, k: usize) -> Result<bool> {
    let n_rows = s.degree();
    if m > n_rows {
        return Ok(false);
    }
    for (_, r) in generic_ranks(s, k)? {
        if r + m > n_rows {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lower bound for |S| when every k-plane is m-rich.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EqualityBound {
    /// Largest b with binom(b, k) ≤ m.
    pub b: u64,
    /// binom(b + n − k, n)
    pub bound: u64,
    /// (k!·m)^{n/k} / n!, the leading-order form of the bound.
    pub asymptotic: f64,
}

pub fn bound_from_equality(m: u64, k: u64, n: u64) -> Result<EqualityBound> {
    if m == 0 || k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need m ≥ 1 and 1 ≤ k ≤ n, got m={m}, k={k}, n={n}"
        )));
    }
    let b = largest_binom_index(k, m);
    let factorial = |x: u64| (1..=x).map(|v| v as f64).product::<f64>();
    let asymptotic = (factorial(k) * m as f64).powf(n as f64 / k as f64) / factorial(n);
    Ok(EqualityBound {
        b,
        bound: binom(b + n - k, n),
        asymptotic,
    })
}

/// Order of vanishing of an ideal at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Finite(d) => write!(f, "{d}"),
            VanishingOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Least total degree of a nonzero term over all generators, after moving the
/// point to the origin.
pub fn vanishing_order_at(j: &MinorIdeal, point: &[Fe]) -> Result<VanishingOrder> {
    if point.len() != j.ring.nvars() {
        return Err(Error::InvalidArgument(format!(
            "chart has {} coordinates, got {}",
            j.ring.nvars(),
            point.len()
        )));
    }
    Ok(j.generators
        .iter()
        .filter_map(|g| g.translate(point).low_degree())
        .min()
        .map_or(VanishingOrder::Infinite, VanishingOrder::Finite))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinorDegreeStats {
    /// Largest total degree of a generator in the chart coordinates.
    pub chart_degree: Option<u32>,
    /// Degree after homogenizing in Plücker coordinates; each chart coordinate is
    /// a ratio of two Plücker coordinates, so this equals the chart degree.
    pub plucker_degree: Option<u32>,
    pub size: usize,
    /// chart_degree / size, the empirical linear-growth constant.
    pub ratio: Option<f64>,
}

pub fn minor_degree_stats(j: &MinorIdeal) -> MinorDegreeStats {
    let d = j.generators.iter().filter_map(|g| g.degree()).max();
    MinorDegreeStats {
        chart_degree: d,
        plucker_degree: d,
        size: j.size,
        ratio: d.map(|d| d as f64 / j.size as f64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::QuotientDim;
    use crate::geom::all_points;
    use crate::incidence::intersection_degree;
    use crate::poly::parse_polynomial;

    fn section8(p: u32) -> Scheme {
        let r = Ring::standard(FieldCtx::prime(p).unwrap(), 4);
        let gens = [
            "x1^2", "x1*x2", "x1*x3", "x1*x4", "x2^2", "x2*x3", "x2*x4", "x3^2", "x3*x4", "x4^3",
        ];
        Scheme::from_generators(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect()).unwrap()
    }

    fn chart12() -> Chart {
        Chart::new(4, 2, &[0, 1]).unwrap()
    }

    fn col(m: &ChartMatrix, label: &str) -> usize {
        m.col_labels().iter().position(|l| l == label).unwrap()
    }

    fn row(m: &ChartMatrix, label: &str) -> usize {
        m.row_labels().iter().position(|l| l == label).unwrap()
    }

    /// Three-way agreement at every rational chart point, plus the local
    /// vanishing-order bound at every rich point.
    fn check_all_points(s: &Scheme, chart: &Chart) {
        let mat = build_chart_matrix(s, chart).unwrap();
        let n_rows = s.degree();
        let ideals: Vec<MinorIdeal> = (1..=n_rows).map(|m| minor_ideal(&mat, m).unwrap()).collect();
        for pt in chart.points(s.field()).unwrap() {
            let dir = chart.direction(s.field(), &pt).unwrap();
            let actual = intersection_degree(s, &dir.through_origin()).unwrap();
            assert_eq!(mat.cokernel_dim_at(&pt).unwrap(), actual);
            for (idx, j) in ideals.iter().enumerate() {
                let m = idx + 1;
                assert_eq!(j.vanishes_at(&pt), actual >= m, "m={m} pt={pt:?}");
                assert_eq!(mat.is_rich_via_rank(&pt, m).unwrap(), actual >= m);
                if m <= actual {
                    let need = (actual - m + 1) as u32;
                    assert!(vanishing_order_at(j, &pt).unwrap() >= VanishingOrder::Finite(need));
                }
            }
        }
    }

    #[test]
    fn section8_matrix_entries() {
        let s = section8(5);
        let m = build_chart_matrix(&s, &chart12()).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (6, 12));
        assert_eq!(m.ring().names(), &["c23", "c24", "c13", "c14"]);
        let c = col(&m, "(l1, 1)");
        assert_eq!(m.entry(row(&m, "x1"), c).format(), "1");
        assert_eq!(m.entry(row(&m, "x3"), c).format(), "c23");
        assert_eq!(m.entry(row(&m, "x4"), c).format(), "c24");
        assert!(m.entry(row(&m, "x2"), c).is_zero());
        let c = col(&m, "(l1, x4)");
        assert_eq!(m.entry(row(&m, "x4^2"), c).format(), "c24");
        let c = col(&m, "(l2, 1)");
        assert_eq!(m.entry(row(&m, "x2"), c).format(), "1");
        assert_eq!(m.entry(row(&m, "x3"), c).format(), "c13");
        assert_eq!(m.entry(row(&m, "x4"), c).format(), "c14");
        let c = col(&m, "(l2, x4)");
        assert_eq!(m.entry(row(&m, "x4^2"), c).format(), "c14");
        let nonzero = (0..6)
            .flat_map(|i| (0..12).map(move |j| (i, j)))
            .filter(|&(i, j)| !m.entry(i, j).is_zero())
            .count();
        assert_eq!(nonzero, 8);
    }

    #[test]
    fn section8_minor_ideals() {
        let s = section8(5);
        let mat = build_chart_matrix(&s, &chart12()).unwrap();
        assert_eq!(mat.generic_rank().unwrap(), 3);
        assert!(minor_ideal(&mat, 3).unwrap().is_zero());
        assert!(minor_ideal(&mat, 2).unwrap().is_zero());
        let j4 = minor_ideal(&mat, 4).unwrap();
        assert_eq!(j4.size, 3);
        let expected = Ideal::new(
            mat.ring(),
            vec![
                parse_polynomial("c24", mat.ring()).unwrap(),
                parse_polynomial("c14", mat.ring()).unwrap(),
            ],
        )
        .unwrap();
        assert!(j4.ideal().unwrap().same_ideal(&expected).unwrap());
        let j5 = minor_ideal(&mat, 5).unwrap();
        assert!(j5.ideal().unwrap().grevlex_basis().unwrap().is_unit_ideal());
        let j6 = minor_ideal(&mat, 6).unwrap();
        assert!(j6.ideal().unwrap().grevlex_basis().unwrap().is_unit_ideal());
        assert!(minor_ideal(&mat, 7).is_err());
        assert!(minor_ideal(&mat, 0).is_err());
    }

    #[test]
    fn section8_no_point_is_five_rich() {
        for p in [5u32, 3] {
            let s = section8(p);
            let mat = build_chart_matrix(&s, &chart12()).unwrap();
            let j5 = minor_ideal(&mat, 5).unwrap();
            for pt in chart12().points(s.field()).unwrap() {
                assert!(mat.rank_at(&pt).unwrap() >= 2);
                assert!(!j5.vanishes_at(&pt));
            }
        }
        let f25 = FieldCtx::new(5, 2, 0).unwrap();
        let r = Ring::standard(f25.clone(), 4);
        let s = section8(5);
        let gens: Vec<Polynomial> = s
            .ideal()
            .generators()
            .iter()
            .map(|g| parse_polynomial(&g.format(), &r).unwrap())
            .collect();
        let s25 = Scheme::from_generators(&r, gens).unwrap();
        let mat = build_chart_matrix(&s25, &chart12()).unwrap();
        for pt in all_points(&f25, 4).unwrap().iter().step_by(7) {
            assert!(mat.rank_at(pt).unwrap() >= 2);
            assert!(!minor_ideal(&mat, 5).unwrap().vanishes_at(pt));
        }
    }

    #[test]
    fn section8_rank_membership() {
        let s = section8(5);
        let mat = build_chart_matrix(&s, &chart12()).unwrap();
        let f = s.field().clone();
        let origin = vec![Fe::ZERO; 4];
        assert!(mat.is_rich_via_rank(&origin, 4).unwrap());
        assert!(!mat.is_rich_via_rank(&origin, 5).unwrap());
        let plane = chart12().direction(&f, &origin).unwrap().through_origin();
        let forms = crate::geom::plane_linear_forms(s.ring(), &plane, Some(&chart12())).unwrap();
        assert_eq!(s.intersect_with(&forms).unwrap(), QuotientDim::Finite(4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let pt: Vec<Fe> = (0..4).map(|_| f.from_code(rng.gen_range(0..5))).collect();
            assert!(mat.is_rich_via_rank(&pt, 3).unwrap());
        }
    }

    #[test]
    fn section8_grassmannian_equality_and_orders() {
        let s = section8(5);
        assert!(x_equals_grassmannian(&s, 3, 2).unwrap());
        assert!(!x_equals_grassmannian(&s, 4, 2).unwrap());
        let mat = build_chart_matrix(&s, &chart12()).unwrap();
        let j4 = minor_ideal(&mat, 4).unwrap();
        assert_eq!(
            vanishing_order_at(&j4, &[Fe::ZERO; 4]).unwrap(),
            VanishingOrder::Finite(1)
        );
        let j3 = minor_ideal(&mat, 3).unwrap();
        assert_eq!(
            vanishing_order_at(&j3, &[Fe::ZERO; 4]).unwrap(),
            VanishingOrder::Infinite
        );
        let stats = minor_degree_stats(&j4);
        assert_eq!(stats.chart_degree, Some(1));
        assert_eq!(stats.plucker_degree, Some(1));
        check_all_points(&s, &chart12());
    }

    #[test]
    fn fat_point_in_the_plane() {
        let r = Ring::new(
            FieldCtx::prime(3).unwrap(),
            vec!["x".into(), "y".into()],
            crate::poly::MonomialOrder::grevlex(2),
        )
        .unwrap();
        let s = Scheme::new(Ideal::maximal_power(&r, 2)).unwrap();
        let chart = Chart::new(2, 1, &[0]).unwrap();
        let mat = build_chart_matrix(&s, &chart).unwrap();
        assert_eq!(mat.ring().names(), &["c2"]);
        assert_eq!(mat.row_labels(), &["1", "x", "y"]);
        assert_eq!(mat.col_labels(), vec!["(l1, 1)", "(l1, x)", "(l1, y)"]);
        let column: Vec<String> = (0..3).map(|i| mat.entry(i, 0).format()).collect();
        assert_eq!(column, vec!["0", "1", "c2"]);
        for j in 1..3 {
            assert!((0..3).all(|i| mat.entry(i, j).is_zero()));
        }
        // m = 2: 2×2 minors of a rank-one matrix vanish; m = 3: the 1×1 minors
        // are the entries 1 and c2.
        assert!(minor_ideal(&mat, 2).unwrap().is_zero());
        let j3 = minor_ideal(&mat, 3).unwrap();
        assert_eq!(j3.generator_strings(), vec!["1"]);
        let stats = minor_degree_stats(&j3);
        assert_eq!(stats.chart_degree, Some(0));
        assert!(stats.chart_degree.unwrap() <= j3.size as u32 * mat.max_entry_degree());
        check_all_points(&s, &chart);
    }

    #[test]
    fn minor_expansion_matches_brute_force_determinants() {
        // (x,y,z)^2 plus a curvilinear direction, k = 1: compare the blockwise
        // minor ideal with every 2×2 and 3×3 minor expanded directly.
        let r = Ring::standard(FieldCtx::prime(5).unwrap(), 3);
        let gens = ["x1^2", "x1*x2", "x2^2 - x1*x3", "x2*x3", "x3^3"];
        let s = Scheme::from_generators(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect()).unwrap();
        let chart = Chart::new(3, 1, &[0, 2]).unwrap();
        let mat = build_chart_matrix(&s, &chart).unwrap();
        let n_rows = mat.nrows();
        for m in 1..=n_rows {
            let size = n_rows - m + 1;
            let blockwise = minor_ideal(&mat, m).unwrap();
            let direct = brute_minors(&mat, size);
            let got = blockwise.ideal().unwrap();
            let want = Ideal::new(mat.ring(), direct).unwrap();
            assert!(got.same_ideal(&want).unwrap(), "m={m}");
        }
    }

    fn brute_minors(mat: &ChartMatrix, size: usize) -> Vec<Polynomial> {
        let rs = crate::geom::subsets(mat.nrows(), size);
        let cs = crate::geom::subsets(mat.ncols(), size);
        let mut out = Vec::new();
        for r in &rs {
            for c in &cs {
                let d = leibniz(mat, r, c);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    fn leibniz(mat: &ChartMatrix, r: &[usize], c: &[usize]) -> Polynomial {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], false)];
            }
            let mut out = Vec::new();
            for (p, odd) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push((q, odd ^ ((n - 1 - pos) % 2 == 1)));
                }
            }
            out
        }
        let mut acc = Polynomial::zero(mat.ring());
        for (p, odd) in perms(r.len()) {
            let mut t = Polynomial::one(mat.ring());
            for (i, &pi) in p.iter().enumerate() {
                t = t.mul(mat.entry(r[i], c[pi]));
            }
            acc = if odd { acc.sub(&t) } else { acc.add(&t) };
        }
        acc
    }

    #[test]
    fn fat_points_are_rich_everywhere() {
        let f = FieldCtx::prime(3).unwrap();
        for (n, d, k) in [(2usize, 1u32, 1usize), (3, 1, 1), (3, 1, 2), (3, 2, 2), (4, 1, 2)] {
            let r = Ring::standard(f.clone(), n);
            let s = Scheme::new(Ideal::maximal_power(&r, d + 1)).unwrap();
            let m = binom(d as u64 + k as u64, k as u64) as usize;
            assert!(x_equals_grassmannian(&s, m, k).unwrap(), "n={n} d={d} k={k}");
            assert!(!x_equals_grassmannian(&s, m + 1, k).unwrap());
            let b = bound_from_equality(m as u64, k as u64, n as u64).unwrap();
            assert_eq!(b.bound as usize, s.degree());
        }
    }

    #[test]
    fn bounds() {
        let b = bound_from_equality(6, 2, 4).unwrap();
        assert_eq!((b.b, b.bound), (4, 15));
        for k in 1..4 {
            for n in k..5 {
                let b = bound_from_equality(1, k, n).unwrap();
                assert_eq!((b.b, b.bound), (k, 1));
            }
        }
        let b = bound_from_equality(3, 1, 3).unwrap();
        assert_eq!((b.b, b.bound), (3, 10));
        assert!((bound_from_equality(3, 1, 3).unwrap().asymptotic - 4.5).abs() < 1e-12);
        assert!(bound_from_equality(0, 1, 3).is_err());
    }

    #[test]
    fn chain_property_and_three_way_agreement_on_desk_examples() {
        let f = FieldCtx::prime(3).unwrap();
        let r = Ring::standard(f.clone(), 3);
        let cases: [&[&str]; 3] = [
            &["x1^2", "x1*x2", "x2^2", "x3"],
            &["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^3"],
            &["x1 - x2", "x3^2", "x2^3"],
        ];
        for gens in cases {
            let s =
                Scheme::from_generators(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect()).unwrap();
            for k in 1..3 {
                for chart in Chart::all(3, k).unwrap() {
                    check_all_points(&s, &chart);
                    let mat = build_chart_matrix(&s, &chart).unwrap();
                    for m in 1..s.degree() {
                        let lo = minor_ideal(&mat, m).unwrap();
                        let hi = minor_ideal(&mat, m + 1).unwrap();
                        for pt in chart.points(&f).unwrap() {
                            if hi.vanishes_at(&pt) {
                                assert!(lo.vanishes_at(&pt));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn non_homogeneous_input_is_rejected() {
        let r = Ring::standard(FieldCtx::prime(3).unwrap(), 2);
        let s = Scheme::from_generators(
            &r,
            vec![
                parse_polynomial("x1^2 - x1", &r).unwrap(),
                parse_polynomial("x2", &r).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            build_chart_matrix(&s, &Chart::new(2, 1, &[0]).unwrap()).unwrap_err(),
            Error::NotHomogeneous
        );
    }

    #[test]
    fn equality_implies_the_binomial_bound_on_random_monomial_ideals() {
        let f = FieldCtx::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut checked = 0;
        for _ in 0..40 {
            let n = rng.gen_range(2..=4usize);
            let r = Ring::standard(f.clone(), n);
            // random staircase: pure powers plus a few random mixed monomials
            let mut gens: Vec<Monomial> = (0..n)
                .map(|i| {
                    let mut e = vec![0u32; n];
                    e[i] = rng.gen_range(1..=3);
                    Monomial::new(&e)
                })
                .collect();
            for _ in 0..rng.gen_range(0..4) {
                let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                let m = Monomial::new(&e);
                if !m.is_one() {
                    gens.push(m);
                }
            }
            let s = Scheme::new(Ideal::monomial(&r, &gens)).unwrap();
            if s.degree() > 20 {
                continue;
            }
            for k in 1..n {
                for m in 1..=s.degree() {
                    if x_equals_grassmannian(&s, m, k).unwrap() {
                        let b = bound_from_equality(m as u64, k as u64, n as u64).unwrap();
                        assert!(s.degree() as u64 >= b.bound, "{:?} m={m} k={k}", s.generator_strings());
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 20);
    }
}
