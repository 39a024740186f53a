//! Formal concept analysis with generalized attributes and objects.
//!
//! The crate builds concept lattices from binary contexts, replaces groups
//! of attributes (or objects) by existential, universal or threshold
//! generalizations, measures how that changes the lattice and the rule set,
//! and drives a semi-automatic grouping workflow over HTTP.

pub mod bitset;
pub mod context;
pub mod error;
pub mod analysis;
pub mod cli;
pub mod generalize;
pub mod lattice;
pub mod ratio;
pub mod rules;
pub mod samples;
pub mod service;
pub mod synth;

#[cfg(test)]
pub(crate) mod testing;

pub use bitset::BitSet;
pub use context::{AttributeSet, FormalContext, ObjectSet};
pub use error::{Error, Result};
pub use lattice::{Concept, ConceptId, ConceptLattice};
pub use ratio::{Fraction, SupportValue};
