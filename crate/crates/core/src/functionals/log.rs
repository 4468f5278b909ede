use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::poly::{Monomial, VarTable};

/// Which of the two tables of a table twist was consulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    J,
    JInv,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::J => write!(f, "J"),
            Side::JInv => write!(f, "J^-1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssumedPair {
    pub side: Side,
    pub left: Monomial,
    pub right: Monomial,
}

/// Monomial pairs that a table twist resolved by its zero default.
#[derive(Debug, Clone, Default)]
pub struct AssumptionLog {
    vars: Option<Arc<VarTable>>,
    entries: BTreeSet<AssumedPair>,
}

impl PartialEq for AssumptionLog {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for AssumptionLog {}

impl AssumptionLog {
    pub(crate) fn single(vars: &Arc<VarTable>, side: Side, left: Monomial, right: Monomial) -> Self {
        let mut entries = BTreeSet::new();
        entries.insert(AssumedPair { side, left, right });
        AssumptionLog {
            vars: Some(vars.clone()),
            entries,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn merge(&mut self, other: &AssumptionLog) {
        if other.entries.is_empty() {
            return;
        }
        if self.vars.is_none() {
            self.vars = other.vars.clone();
        }
        self.entries.extend(other.entries.iter().cloned());
    }

    pub fn contains(&self, side: Side, left: &Monomial, right: &Monomial) -> bool {
        self.entries.contains(&AssumedPair {
            side,
            left: left.clone(),
            right: right.clone(),
        })
    }

    /// Entries sorted canonically (by the pair, then the side).
    pub fn entries(&self) -> Vec<&AssumedPair> {
        let mut out: Vec<_> = self.entries.iter().collect();
        if let Some(vars) = &self.vars {
            out.sort_by(|a, b| {
                vars.canonical_cmp_legs(
                    &[a.left.clone(), a.right.clone()],
                    &[b.left.clone(), b.right.clone()],
                )
                .then(a.side.cmp(&b.side))
            });
        }
        out
    }

    /// One line per entry, e.g. `J(Y,Y)`.
    pub fn render(&self) -> Vec<String> {
        let Some(vars) = &self.vars else {
            return Vec::new();
        };
        self.entries()
            .into_iter()
            .map(|e| {
                format!(
                    "{}({},{})",
                    e.side,
                    vars.format_monomial(&e.left),
                    vars.format_monomial(&e.right)
                )
            })
            .collect()
    }
}
