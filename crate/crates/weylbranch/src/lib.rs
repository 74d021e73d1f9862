//! Exact weight-lattice arithmetic, Weyl-module characters and branching to
//! disconnected maximal subgroups of the groups of type A, B, C and D.

pub mod charcalc;
pub mod checker;
pub mod cli;
pub mod condexpr;
pub mod embeddings;
pub mod error;
pub mod rootsys;
pub mod weylgroup;

pub use error::{Error, Result};
