//! Structure of twisted coordinate algebras: bracket tables, the closed
//! commutator formula, Lie closure, substitution quotients, Weyl pairs,
//! smash relations, double-coset maps and twist invariance.

mod closure;
mod coset;
mod lemma;
mod quotient;
mod table;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::Presentation;
use crate::poly::{Expr, Poly, VarTable};
use crate::twisted::Product;

pub use closure::{lie_closure_check, Correspondence};
pub use coset::{
    double_coset_map_check, smash_defect, smash_relation_check, smash_table, twist_invariance_check, InvarianceOutcome,
    InvarianceWitness,
};
pub use lemma::{check_lemma_formula, commutator_via_lemma_formula, lemma_commutator};
pub use quotient::{bracket_relation_check, quotient_algebra, weyl_pair_check, QuotientOutcome, QuotientProduct, QuotientSpec};
pub use table::{ore_tower_report, presentation_table, Bracket, ExpectedBracket, PresentationReport};

/// A named element of the algebra, e.g. `Y = F24 - F23*F34`.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub name: String,
    pub value: Poly,
}

impl Element {
    pub fn new(name: impl Into<String>, value: Poly) -> Self {
        Element {
            name: name.into(),
            value,
        }
    }

    /// One element per generator, in declared order.
    pub fn generators(g: &Presentation) -> Vec<Element> {
        (0..g.nvars())
            .map(|i| Element::new(g.vars().name(i), g.var(i)))
            .collect()
    }

    /// Generators of `display` minus the eliminated ones.
    pub fn surviving_generators(display: &VarTable, eliminated: &[usize]) -> Vec<Element> {
        (0..display.len())
            .filter(|i| !eliminated.contains(i))
            .map(|i| Element::new(display.name(i), Poly::var(display.len(), i)))
            .collect()
    }
}

/// Evaluates `text` with products taken in `product`, resolving names first
/// among `named`, then among the variables of `vars`.
pub fn evaluate_in(
    product: &dyn Product,
    vars: &VarTable,
    named: &[Element],
    text: &str,
) -> Result<Poly> {
    let expr = Expr::parse(text)?;
    let n = vars.len();
    expr.eval_with(
        n,
        &mut |name| {
            if let Some(e) = named.iter().find(|e| e.name == name) {
                return Ok(e.value.clone());
            }
            Ok(Poly::var(n, vars.require(name)?))
        },
        &mut |a, b| Ok(product.mul(a, b)?.0),
    )
}

/// The variables of `vars` with some of them renamed, for printing quotient
/// relations in their own letters.
pub fn aliased_vars(vars: &VarTable, aliases: &BTreeMap<String, String>) -> Result<Arc<VarTable>> {
    for k in aliases.keys() {
        vars.require(k)?;
    }
    let rename = |i: usize| {
        let n = vars.name(i);
        aliases.get(n).cloned().unwrap_or_else(|| n.to_string())
    };
    let laurent: Vec<String> = vars.laurent_indices().map(rename).collect();
    let poly: Vec<String> = vars.polynomial_indices().map(rename).collect();
    VarTable::new(&laurent, &poly).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("aliases clash: {m}")),
        other => other,
    })
}
