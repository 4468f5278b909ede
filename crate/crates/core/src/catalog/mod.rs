//! Definition documents: a group, a twist, points, Lie data and a task list,
//! read from TOML and run as one report. Six worked examples are built in.

mod build;
mod run;
mod schema;

pub use build::{Definition, LieData, Wedge};
pub use run::{run_tasks, RunOptions, RunReport, TaskError};
pub use schema::{AlgebraSpec, Document, GroupSpec, LieSpec, Named, ProductKind, Task, Triple, TwistSpec, WedgeSpec};

use crate::error::{Error, Result};

/// Built-in examples, keyed by name, with their TOML sources.
pub const EXAMPLES: [(&str, &str); 6] = [
    ("heisenberg3", include_str!("../../fixtures/heisenberg3.toml")),
    ("dim4-base", include_str!("../../fixtures/dim4-base.toml")),
    ("dim4-minimal", include_str!("../../fixtures/dim4-minimal.toml")),
    ("u4-coset", include_str!("../../fixtures/u4-coset.toml")),
    ("u4-quotient", include_str!("../../fixtures/u4-quotient.toml")),
    ("nilpotent-torus", include_str!("../../fixtures/nilpotent-torus.toml")),
];

pub fn parse_document(text: &str) -> Result<Document> {
    toml::from_str(text).map_err(|e| Error::Input(format!("syntax: {}", e.message())))
}

pub fn to_toml(doc: &Document) -> Result<String> {
    toml::to_string(doc).map_err(|e| Error::Input(format!("cannot serialize: {e}")))
}

/// Parses and constructs everything the document names.
pub fn load_definition(text: &str, opts: &RunOptions) -> Result<Definition> {
    Definition::build(parse_document(text)?, opts.max_order)
}

pub fn list_examples() -> Vec<&'static str> {
    EXAMPLES.iter().map(|(k, _)| *k).collect()
}

pub fn example_source(key: &str) -> Result<&'static str> {
    EXAMPLES
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Input(format!("unknown example {key}; known: {}", list_examples().join(", "))))
}

pub fn verify_example(key: &str, opts: &RunOptions) -> Result<RunReport> {
    let def = load_definition(example_source(key)?, opts)?;
    Ok(run_tasks(&def, opts))
}
