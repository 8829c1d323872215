//! Borel-fixed sets of monomials: slices by the x1-degree, frontiers, and exhaustive
//! checks of the frontier inequality.
//!
//! Convention: a set Λ is Borel-fixed when it is closed under divisibility and under
//! every move replacing a factor x_j by x_i with i < j.

use std::collections::{BTreeSet, HashSet};

use crate::binom;
use crate::error::{Error, Result};
use crate::poly::{display_cmp, Monomial};

/// Largest supported set size and variable count for enumeration.
pub const MAX_ENUM_SIZE: usize = 30;
pub const MAX_ENUM_VARS: usize = 4;

/// All images of `m` under one Borel move x_j → x_i, i < j.
pub fn borel_moves(m: &Monomial) -> Vec<Monomial> {
    let n = m.nvars();
    let mut out = Vec::new();
    for j in 1..n {
        if m.exp(j) == 0 {
            continue;
        }
        for i in 0..j {
            let mut e = m.exps().to_vec();
            e[j] -= 1;
            e[i] += 1;
            out.push(Monomial::new(&e));
        }
    }
    out
}

/// Divisors of `m` by a single variable.
fn one_step_divisors(m: &Monomial) -> impl Iterator<Item = Monomial> + '_ {
    (0..m.nvars()).filter_map(move |i| m.div(&Monomial::var(m.nvars(), i)))
}

/// Why a set fails to be Borel-fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BorelWitness {
    /// `divisor` divides `member` but is missing.
    NotDivisorClosed { member: Monomial, divisor: Monomial },
    /// Replacing x_j by x_i in `member` gives the missing `image`.
    MoveLeavesSet {
        member: Monomial,
        from: usize,
        to: usize,
        image: Monomial,
    },
}

impl BorelWitness {
    pub fn describe(&self, names: &[String]) -> String {
        match self {
            BorelWitness::NotDivisorClosed { member, divisor } => format!(
                "{} divides {} but is not in the set",
                divisor.format(names),
                member.format(names)
            ),
            BorelWitness::MoveLeavesSet {
                member,
                from,
                to,
                image,
            } => format!(
                "move {}→{} sends {} to {}, which is not in the set",
                names[*from],
                names[*to],
                member.format(names),
                image.format(names)
            ),
        }
    }
}

/// Checks divisor closure and Borel-move closure, returning the first failure.
pub fn borel_witness(n: usize, mons: &BTreeSet<Monomial>) -> Option<BorelWitness> {
    let mut sorted: Vec<&Monomial> = mons.iter().collect();
    sorted.sort_by(|a, b| display_cmp(a, b));
    for m in sorted {
        debug_assert_eq!(m.nvars(), n);
        for d in one_step_divisors(m) {
            if !mons.contains(&d) {
                return Some(BorelWitness::NotDivisorClosed {
                    member: m.clone(),
                    divisor: d,
                });
            }
        }
        for j in 1..n {
            if m.exp(j) == 0 {
                continue;
            }
            for i in 0..j {
                let mut e = m.exps().to_vec();
                e[j] -= 1;
                e[i] += 1;
                let image = Monomial::new(&e);
                if !mons.contains(&image) {
                    return Some(BorelWitness::MoveLeavesSet {
                        member: m.clone(),
                        from: j,
                        to: i,
                        image,
                    });
                }
            }
        }
    }
    None
}

/// A finite Borel-fixed set of monomials in n variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorelSet {
    n: usize,
    mons: BTreeSet<Monomial>,
}

impl BorelSet {
    pub fn new(n: usize, mons: impl IntoIterator<Item = Monomial>) -> Result<BorelSet> {
        let mons: BTreeSet<Monomial> = mons.into_iter().collect();
        if mons.iter().any(|m| m.nvars() != n) {
            return Err(Error::InvalidArgument(format!("monomials must have {n} variables")));
        }
        if let Some(w) = borel_witness(n, &mons) {
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            return Err(Error::InvalidArgument(format!(
                "not Borel-fixed: {}",
                w.describe(&names)
            )));
        }
        Ok(BorelSet { n, mons })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.mons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mons.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.mons.contains(m)
    }

    pub fn monomials(&self) -> &BTreeSet<Monomial> {
        &self.mons
    }

    /// Members in display order (degree, then x1 before x2).
    pub fn sorted(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.mons.iter().cloned().collect();
        v.sort_by(display_cmp);
        v
    }

    pub fn max_x1_degree(&self) -> Option<u32> {
        self.mons.iter().map(|m| m.exp(0)).max()
    }

    /// Λ_j = { m in x_2..x_n : x_1^j m ∈ Λ }, as a set in n−1 variables.
    pub fn slice(&self, j: u32) -> BorelSet {
        let mons = self
            .mons
            .iter()
            .filter(|m| m.exp(0) == j)
            .map(|m| m.remove_var(0))
            .collect();
        BorelSet { n: self.n - 1, mons }
    }

    pub fn format(&self) -> String {
        let names: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        let parts: Vec<String> = self.sorted().iter().map(|m| m.format(&names)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Λ_j of a Borel set (free-function form).
pub fn lambda_slice(set: &BorelSet, j: u32) -> BorelSet {
    set.slice(j)
}

/// { m ∈ Λ : m·x_i ∉ Λ for every variable x_i }.
pub fn frontier(set: &BorelSet) -> BTreeSet<Monomial> {
    set.mons
        .iter()
        .filter(|m| (0..set.n).all(|i| !set.mons.contains(&m.mul_var(i))))
        .cloned()
        .collect()
}

/// Smallest Borel-fixed set containing `mons`.
pub fn borel_closure(n: usize, mons: &[Monomial]) -> BorelSet {
    let mut out: BTreeSet<Monomial> = BTreeSet::new();
    let mut stack: Vec<Monomial> = mons.to_vec();
    while let Some(m) = stack.pop() {
        if !out.insert(m.clone()) {
            continue;
        }
        stack.extend(one_step_divisors(&m).filter(|d| !out.contains(d)));
        stack.extend(borel_moves(&m).into_iter().filter(|d| !out.contains(d)));
    }
    BorelSet { n, mons: out }
}

/// Outcome of checking the frontier inequality and its corollary on one set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierVerdict {
    pub size: usize,
    pub slice0: usize,
    /// Largest a with binom(a, n) ≤ |Λ|.
    pub a: u64,
    pub lemma_bound: u64,
    /// Largest b with binom(b, n−1) ≤ |Λ_0|; `None` when n = 1 (every b qualifies).
    pub b: Option<u64>,
    pub corollary_bound: Option<u64>,
    pub telescopes: bool,
    pub slices_decrease: bool,
    pub differences_on_frontier: bool,
    pub witness: Option<String>,
}

impl FrontierVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Largest a ≥ r with binom(a, r) ≤ bound (r ≥ 1, bound ≥ 1).
pub fn largest_binom_index(r: u64, bound: u64) -> u64 {
    let mut a = r;
    while binom(a + 1, r) <= bound {
        a += 1;
    }
    a
}

pub fn verify_frontier_lemma(set: &BorelSet) -> FrontierVerdict {
    let n = set.n as u64;
    let size = set.len() as u64;
    let l0 = set.slice(0);
    let slice0 = l0.len() as u64;
    let gap = size - slice0;
    let mut witness = None;

    let a = if size == 0 { 0 } else { largest_binom_index(n, size) };
    let lemma_bound = if a == 0 { 0 } else { binom(a - 1, n) };
    if gap < lemma_bound {
        witness = Some(format!(
            "|Λ|−|Λ0| = {gap} < binom({}, {n}) = {lemma_bound}",
            a.saturating_sub(1)
        ));
    }

    let (b, corollary_bound) = if n >= 2 && slice0 >= 1 {
        let b = largest_binom_index(n - 1, slice0);
        (Some(b), Some(binom(b, n)))
    } else {
        (None, None)
    };
    if let (Some(b), Some(cb)) = (b, corollary_bound) {
        if gap < cb && witness.is_none() {
            witness = Some(format!("|Λ|−|Λ0| = {gap} < binom({b}, {n}) = {cb}"));
        }
    }

    let top = set.max_x1_degree().unwrap_or(0);
    let slices: Vec<BorelSet> = (0..=top + 1).map(|j| set.slice(j)).collect();
    let tail: u64 = slices[1..].iter().map(|s| s.len() as u64).sum();
    let telescopes = tail == gap;
    let slices_decrease = slices.windows(2).all(|w| w[1].mons.is_subset(&w[0].mons));
    let differences_on_frontier = slices.windows(2).all(|w| {
        let fr = frontier(&w[0]);
        w[0].mons.difference(&w[1].mons).all(|m| fr.contains(m))
    });
    if witness.is_none() {
        if !telescopes {
            witness = Some(format!("telescoping sum {tail} differs from {gap}"));
        } else if !slices_decrease {
            witness = Some("slices are not nested".into());
        } else if !differences_on_frontier {
            witness = Some("a slice difference leaves the frontier".into());
        }
    }
    FrontierVerdict {
        size: size as usize,
        slice0: slice0 as usize,
        a,
        lemma_bound,
        b,
        corollary_bound,
        telescopes,
        slices_decrease,
        differences_on_frontier,
        witness,
    }
}

/// Every Borel-fixed set of size 1..=max_size in n variables, each exactly once,
/// ordered by size and then canonically.
///
/// Sets of size s+1 arise from sets of size s by adding one monomial whose
/// one-variable divisors and Borel-move images are already present.
pub fn enumerate_borel_sets(n: usize, max_size: usize) -> Result<Vec<BorelSet>> {
    if n == 0 || n > MAX_ENUM_VARS || max_size > MAX_ENUM_SIZE {
        return Err(Error::EnumerationCap {
            count: max_size as u128,
            cap: MAX_ENUM_SIZE as u128,
        });
    }
    let mut out = Vec::new();
    if max_size == 0 {
        return Ok(out);
    }
    let mut level: BTreeSet<BorelSet> = BTreeSet::new();
    level.insert(BorelSet {
        n,
        mons: [Monomial::one(n)].into_iter().collect(),
    });
    for size in 1..=max_size {
        out.extend(level.iter().cloned());
        if size == max_size {
            break;
        }
        let mut next: BTreeSet<BorelSet> = BTreeSet::new();
        for set in &level {
            let mut tried: HashSet<Monomial> = HashSet::new();
            for m in &set.mons {
                for i in 0..n {
                    let cand = m.mul_var(i);
                    if set.mons.contains(&cand) || !tried.insert(cand.clone()) {
                        continue;
                    }
                    let addable = one_step_divisors(&cand).all(|d| set.mons.contains(&d))
                        && borel_moves(&cand).iter().all(|b| set.mons.contains(b));
                    if addable {
                        let mut mons = set.mons.clone();
                        mons.insert(cand);
                        next.insert(BorelSet { n, mons });
                    }
                }
            }
        }
        level = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    fn set(n: usize, es: &[&[u32]]) -> BorelSet {
        BorelSet::new(n, es.iter().map(|e| m(e))).unwrap()
    }

    /// Independent oracle: all divisor-closed sets (staircases) of the given size,
    /// filtered by Borel-move closure.
    fn brute_force(n: usize, max_size: usize) -> BTreeSet<BTreeSet<Monomial>> {
        let universe: Vec<Monomial> = (0..max_size as u32)
            .flat_map(|d| Monomial::all_of_degree(n, d))
            .collect();
        let mut out = BTreeSet::new();
        // Staircases containing 1, grown by depth-first choice over the universe.
        fn rec(
            idx: usize,
            universe: &[Monomial],
            cur: &mut BTreeSet<Monomial>,
            max: usize,
            n: usize,
            out: &mut BTreeSet<BTreeSet<Monomial>>,
        ) {
            if idx == universe.len() {
                if !cur.is_empty() && borel_witness(n, cur).is_none() {
                    out.insert(cur.clone());
                }
                return;
            }
            rec(idx + 1, universe, cur, max, n, out);
            let m = &universe[idx];
            let divisors_in = (0..n)
                .filter_map(|i| m.div(&Monomial::var(n, i)))
                .all(|d| cur.contains(&d));
            if cur.len() < max && divisors_in {
                cur.insert(m.clone());
                rec(idx + 1, universe, cur, max, n, out);
                cur.remove(m);
            }
        }
        rec(0, &universe, &mut BTreeSet::new(), max_size, n, &mut out);
        out
    }

    #[test]
    fn slices() {
        let l = set(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(l.slice(0).monomials(), &[m(&[0]), m(&[1])].into_iter().collect());
        assert_eq!(l.slice(1).monomials(), &[m(&[0])].into_iter().collect());
        assert!(l.slice(5).is_empty());
    }

    #[test]
    fn frontiers() {
        let one = set(1, &[&[0]]);
        assert_eq!(frontier(&one), [m(&[0])].into_iter().collect());
        let chain = set(1, &[&[0], &[1], &[2]]);
        assert_eq!(frontier(&chain), [m(&[2])].into_iter().collect());
        // {1, x2, x3, x4, x4^2} in the variables x2..x4; checked without the
        // Borel property, which this set lacks.
        let raw = BorelSet {
            n: 3,
            mons: [
                m(&[0, 0, 0]),
                m(&[1, 0, 0]),
                m(&[0, 1, 0]),
                m(&[0, 0, 1]),
                m(&[0, 0, 2]),
            ]
            .into_iter()
            .collect(),
        };
        assert_eq!(
            frontier(&raw),
            [m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 2])].into_iter().collect()
        );
    }

    #[test]
    fn witnesses() {
        let bad = [m(&[0, 0]), m(&[0, 1])].into_iter().collect();
        assert_eq!(
            borel_witness(2, &bad),
            Some(BorelWitness::MoveLeavesSet {
                member: m(&[0, 1]),
                from: 1,
                to: 0,
                image: m(&[1, 0]),
            })
        );
        let gap = [m(&[0, 0]), m(&[2, 0])].into_iter().collect();
        assert!(matches!(
            borel_witness(2, &gap),
            Some(BorelWitness::NotDivisorClosed { .. })
        ));
    }

    #[test]
    fn closures() {
        let c = borel_closure(2, &[m(&[0, 1])]);
        assert_eq!(c.format(), "{1,x1,x2}");
        let c2 = borel_closure(2, &[m(&[0, 2])]);
        assert_eq!(c2.format(), "{1,x1,x2,x1^2,x1*x2,x2^2}");
        assert_eq!(borel_closure(2, &c2.sorted()), c2);
    }

    #[test]
    fn small_enumerations() {
        let one = enumerate_borel_sets(1, 3).unwrap();
        let f: Vec<String> = one.iter().map(|s| s.format()).collect();
        assert_eq!(f, vec!["{1}", "{1,x1}", "{1,x1,x1^2}"]);
        let two = enumerate_borel_sets(2, 2).unwrap();
        let f: Vec<String> = two.iter().map(|s| s.format()).collect();
        assert_eq!(f, vec!["{1}", "{1,x1}"]);
        assert!(enumerate_borel_sets(5, 3).is_err());
        assert!(enumerate_borel_sets(2, 31).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (n, max) in [(2, 5), (2, 7), (3, 6)] {
            let fast: BTreeSet<BTreeSet<Monomial>> = enumerate_borel_sets(n, max)
                .unwrap()
                .into_iter()
                .map(|s| s.mons)
                .collect();
            let fast_count = enumerate_borel_sets(n, max).unwrap().len();
            assert_eq!(fast_count, fast.len(), "no duplicates");
            assert_eq!(fast, brute_force(n, max), "n={n} max={max}");
        }
    }

    #[test]
    fn frontier_lemma_edge_cases() {
        for n in 1..=4 {
            let v = verify_frontier_lemma(&set(n, &[&vec![0; n]]));
            assert!(v.holds());
            assert_eq!(v.a, n as u64);
            assert_eq!(v.lemma_bound, 0);
        }
        for d in 0..6u32 {
            let chain: Vec<Vec<u32>> = (0..=d).map(|e| vec![e]).collect();
            let s = BorelSet::new(1, chain.iter().map(|e| m(e))).unwrap();
            let v = verify_frontier_lemma(&s);
            assert!(v.holds());
            assert_eq!(v.size - v.slice0, d as usize);
            assert_eq!(v.b, None);
        }
    }

    #[test]
    fn frontier_lemma_two_variables_exhaustive() {
        for s in enumerate_borel_sets(2, 15).unwrap() {
            let v = verify_frontier_lemma(&s);
            assert!(v.holds(), "{}: {:?}", s.format(), v.witness);
        }
    }
}
