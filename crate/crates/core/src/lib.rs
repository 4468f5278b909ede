//! Exact twisted coordinate Hopf algebras of unipotent and connected nilpotent
//! algebraic groups.

pub mod catalog;
pub mod error;
pub mod functionals;
pub mod hopf;
pub mod lie;
pub(crate) mod linalg;
pub mod poly;
pub mod report;
pub mod structure;
pub mod twisted;

#[cfg(test)]
pub(crate) mod testing;

pub use error::{Error, Result};
