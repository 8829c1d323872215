//! Degenerations of a 0-dimensional scheme: dilation to the top-form ideal at the
//! origin, and the generic initial ideal for an upper-triangular change of
//! coordinates.

use std::collections::BTreeSet;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::borel::{borel_witness, BorelWitness};
use crate::error::{Error, Result};
use crate::ff::{extension_with_min_size, FieldEmbedding};
use crate::gb::{Ideal, Scheme};
use crate::geom::{enumerate_directions, enumerate_parallel, AffinePlane, Direction};
use crate::incidence::intersection_degree;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Smallest field size used when sampling a general upper-triangular matrix.
pub const GIN_MIN_FIELD_SIZE: u64 = 64;

#[derive(Clone, Debug)]
pub struct DilationResult {
    pub original: Scheme,
    pub degenerate: Scheme,
}

impl DilationResult {
    /// (|S|, |S_0|), equal by construction.
    pub fn certificate(&self) -> (usize, usize) {
        (self.original.degree(), self.degenerate.degree())
    }
}

/// The ideal generated by the top-degree forms of a grevlex basis of I_S.
pub fn dilate(s: &Scheme) -> Result<DilationResult> {
    let ring = s.ring();
    let tops = s
        .basis()
        .elements()
        .iter()
        .map(|g| g.top_degree_form())
        .collect::<Result<Vec<_>>>()?;
    let degenerate = Scheme::new(Ideal::new(ring, tops)?)?;
    if degenerate.degree() != s.degree() {
        return Err(Error::DegreeMismatch {
            original: s.degree(),
            degenerate: degenerate.degree(),
        });
    }
    debug_assert!(degenerate.is_homogeneous());
    Ok(DilationResult {
        original: s.clone(),
        degenerate,
    })
}

/// True when every variable has a pure power in I, i.e. S is supported at the origin.
pub fn supported_at_origin(s: &Scheme) -> bool {
    let n = s.nvars();
    let d = s.degree() as u32;
    (0..n).all(|i| {
        let mut e = vec![0u32; n];
        e[i] = d.max(1);
        s.basis()
            .contains(&Polynomial::term(s.ring(), Monomial::new(&e), s.field().one()))
    })
}

/// One affine plane V with its two intersection counts.
#[derive(Clone, Debug)]
pub struct CapdilateRow {
    pub plane: AffinePlane,
    pub original: usize,
    pub degenerate: usize,
}

impl CapdilateRow {
    pub fn holds(&self) -> bool {
        self.degenerate >= self.original
    }
}

#[derive(Clone, Debug)]
pub struct CapdilateReport {
    pub k: usize,
    pub rows: Vec<CapdilateRow>,
}

impl CapdilateReport {
    pub fn violations(&self) -> Vec<&CapdilateRow> {
        self.rows.iter().filter(|r| !r.holds()).collect()
    }
}

/// Compares |S ∩ V| with |S_0 ∩ V_0| for every affine k-plane V, where V_0 is the
/// parallel plane through the origin.
pub fn verify_capdilate(s: &Scheme, k: usize) -> Result<CapdilateReport> {
    let n = s.nvars();
    if k >= n {
        return Err(Error::InvalidArgument(format!("need k < n, got k={k}, n={n}")));
    }
    let s0 = dilate(s)?.degenerate;
    let field = s.field();
    let mut rows = Vec::new();
    for dir in enumerate_directions(field, n, k)? {
        let through = dir.through_origin();
        let degenerate = intersection_degree(&s0, &through)?;
        for plane in enumerate_parallel(field, &dir)? {
            let original = intersection_degree(s, &plane)?;
            rows.push(CapdilateRow {
                plane,
                original,
                degenerate,
            });
        }
    }
    Ok(CapdilateReport { k, rows })
}

/// Borel-fixedness of a monomial scheme, judged on its standard monomials.
/// Returns the first failing move, or `None` when the set is Borel-fixed.
pub fn is_borel_fixed(s: &Scheme) -> Result<Option<BorelWitness>> {
    if !s.is_monomial() {
        return Err(Error::NotMonomial);
    }
    Ok(is_borel_fixed_set(s.nvars(), s.standard_monomials()))
}

pub fn is_borel_fixed_set(n: usize, mons: &[Monomial]) -> Option<BorelWitness> {
    let set: BTreeSet<Monomial> = mons.iter().cloned().collect();
    borel_witness(n, &set)
}

#[derive(Clone, Debug)]
pub struct GinResult {
    pub input: Scheme,
    pub gin: Scheme,
    pub trials_used: usize,
    /// Degree of the sampling field over the input field.
    pub field_extension_degree: u32,
}

/// Generic initial ideal of I_S for the upper-triangular group acting by
/// x_i ↦ Σ_{j ≥ i} g_ij x_j, in the given term order (normally lex with x1 lowest).
///
/// Each trial samples g over an extension with at least 64 elements and records
/// the initial ideal of g·I. A result is accepted once two samples agree and the
/// standard set is Borel-fixed.
pub fn gin(s: &Scheme, order: &MonomialOrder, trials: usize, seed: u64) -> Result<GinResult> {
    let n = s.nvars();
    if order.nvars() != n {
        return Err(Error::InvalidArgument(format!(
            "order has {} variables, scheme has {n}",
            order.nvars()
        )));
    }
    let base = s.field();
    let (ext, degree) = extension_with_min_size(base, GIN_MIN_FIELD_SIZE)?;
    let emb = FieldEmbedding::new(base, &ext)?;
    let ring = s.ring().with_field(ext.clone()).with_order(order.clone());
    let gens: Vec<Polynomial> = s.basis().elements().iter().map(|g| g.embed(&ring, &emb)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<(Vec<Monomial>, usize)> = Vec::new();
    for trial in 1..=trials {
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                let terms = (i..n).map(|j| {
                    let c = if j == i {
                        ext.from_code(rng.gen_range(1..ext.size()))
                    } else {
                        ext.from_code(rng.gen_range(0..ext.size()))
                    };
                    (Monomial::var(n, j), c)
                });
                Polynomial::from_terms(&ring, terms)
            })
            .collect();
        let moved = gens.iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
        let gb = Ideal::new(&ring, moved)?.groebner(order)?;
        let mut leads = gb.leading_monomials();
        leads.sort();
        match seen.iter_mut().find(|(l, _)| *l == leads) {
            Some((_, count)) => {
                *count += 1;
                let base_ring = s.ring();
                let gin = Scheme::new(Ideal::monomial(base_ring, &leads))?;
                if let Some(w) = is_borel_fixed(&gin)? {
                    return Err(Error::GinNotBorel {
                        ideal: format!(
                            "({}); {}",
                            gin.generator_strings().join(", "),
                            w.describe(base_ring.names())
                        ),
                    });
                }
                debug_assert_eq!(gin.degree(), s.degree());
                return Ok(GinResult {
                    input: s.clone(),
                    gin,
                    trials_used: trial,
                    field_extension_degree: degree,
                });
            }
            None => seen.push((leads, 1)),
        }
    }
    let names = s.ring().names();
    Err(Error::GinUnstable {
        trials,
        distinct: seen.len(),
        seen: seen
            .iter()
            .map(|(l, _)| {
                let parts: Vec<String> = l.iter().map(|m| m.format(names)).collect();
                format!("({})", parts.join(", "))
            })
            .collect(),
    })
}

/// Directions rich for S must stay rich for the dilation.
pub fn rich_directions_persist(s: &Scheme, k: usize, m: usize) -> Result<Vec<Direction>> {
    let report = verify_capdilate(s, k)?;
    let mut lost = Vec::new();
    for row in report.rows {
        if row.original >= m && row.degenerate < m && !lost.contains(row.plane.direction()) {
            lost.push(row.plane.direction().clone());
        }
    }
    Ok(lost)
}
