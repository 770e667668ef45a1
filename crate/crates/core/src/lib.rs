//! Reasoning with partially ordered propositional knowledge bases.

pub mod elemset;
pub mod error;
pub mod formula;
pub mod cli;
pub mod compat;
pub mod kb;
pub mod lattice;
pub mod limits;
pub mod order;
pub mod report;
pub mod semantics;
pub mod syntactic;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use formula::{Formula, Interpretation, Universe};
pub use kb::PartiallyOrderedKb;
pub use limits::Limits;
