use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::Monomial;

/// The ordered variable set of a coordinate algebra.
///
/// Laurent (grouplike) variables come first, then the polynomial variables in
/// declared order. A monomial over this table is a dense exponent vector in
/// the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    laurent_count: usize,
    index: HashMap<String, usize>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<S: AsRef<str>>(laurent: &[S], polynomial: &[S]) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(laurent.len() + polynomial.len());
        let mut index = HashMap::new();
        for name in laurent.iter().chain(polynomial) {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(Error::Input(format!("invalid variable name {name:?}")));
            }
            if name == "x" {
                // `(x)` is the tensor separator.
                return Err(Error::Input("variable name `x` is reserved".into()));
            }
            if index.insert(name.to_string(), names.len()).is_some() {
                return Err(Error::Input(format!("variable {name} declared twice")));
            }
            names.push(name.to_string());
        }
        Ok(Arc::new(VarTable {
            names,
            laurent_count: laurent.len(),
            index,
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::Input(format!("undeclared variable {name}")))
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        i < self.laurent_count
    }

    pub fn laurent_count(&self) -> usize {
        self.laurent_count
    }

    pub fn laurent_indices(&self) -> std::ops::Range<usize> {
        0..self.laurent_count
    }

    pub fn polynomial_indices(&self) -> std::ops::Range<usize> {
        self.laurent_count..self.names.len()
    }

    pub fn unit(&self) -> Monomial {
        Monomial::unit(self.len())
    }

    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.len(), i, 1)
    }

    /// Total degree in the polynomial variables.
    pub fn unipotent_degree(&self, m: &Monomial) -> i64 {
        self.polynomial_indices().map(|i| m.exponent(i) as i64).sum()
    }

    /// Degree used by the bounded enumerations: polynomial degree plus the
    /// absolute Laurent exponents.
    pub fn enumeration_degree(&self, m: &Monomial) -> i64 {
        (0..self.len())
            .map(|i| (m.exponent(i) as i64).abs())
            .sum()
    }

    /// Rejects negative exponents on polynomial variables.
    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        for i in self.polynomial_indices() {
            if m.exponent(i) < 0 {
                return Err(Error::Domain(format!(
                    "negative power of non-Laurent variable {}",
                    self.names[i]
                )));
            }
        }
        Ok(())
    }

    /// Canonical order: polynomial degree first, then exponent vectors with
    /// the larger power of an earlier variable first.
    pub fn canonical_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.unipotent_degree(a)
            .cmp(&self.unipotent_degree(b))
            .then_with(|| b.exponents().cmp(a.exponents()))
    }

    pub fn canonical_cmp_legs(&self, a: &[Monomial], b: &[Monomial]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            match self.canonical_cmp(x, y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        a.len().cmp(&b.len())
    }
}
