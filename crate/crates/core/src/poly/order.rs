use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    /// Block order: `priority[0]` first, then grevlex on the remaining variables.
    Eliminate,
}

/// A monomial order with an explicit variable priority.
///
/// `priority[0]` is the most significant variable. The natural priority makes
/// x1 > x2 > ... > xn; [`MonomialOrder::ascending`] gives x1 ⪯ x2 ⪯ ... ⪯ xn.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(n: usize) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            priority: (0..n).collect(),
        }
    }

    pub fn lex(n: usize) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..n).collect(),
        }
    }

    /// Order of the given kind with x1 the smallest variable and xn the largest.
    pub fn ascending(kind: OrderKind, n: usize) -> MonomialOrder {
        MonomialOrder {
            kind,
            priority: (0..n).rev().collect(),
        }
    }

    /// Elimination order for variable `var`: any monomial containing it beats every
    /// monomial free of it; ties are broken by grevlex on the rest.
    pub fn eliminate(n: usize, var: usize) -> MonomialOrder {
        let mut priority = vec![var];
        priority.extend((0..n).filter(|&v| v != var));
        MonomialOrder {
            kind: OrderKind::Eliminate,
            priority,
        }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<MonomialOrder> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "variable priority {priority:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn is_degree_compatible(&self) -> bool {
        self.kind == OrderKind::Grevlex
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in self.priority.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            OrderKind::Eliminate => {
                let (&head, rest) = self.priority.split_first().expect("eliminate needs a variable");
                match a.exp(head).cmp(&b.exp(head)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                match (a.degree() - a.exp(head)).cmp(&(b.degree() - b.exp(head))) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in rest.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}
