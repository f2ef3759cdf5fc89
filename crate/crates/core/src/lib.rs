//! Label algebras of finite colored relational structures.
//!
//! A finite structure's automorphism group partitions its ordered pairs into
//! atoms (a coherent configuration). Per type pair, the unions of atoms form
//! a Boolean algebra of labels with a distinguished zero (equality) and top;
//! atom-level composition induces a monoid of labels. This crate extracts
//! that algebra, checks its laws exactly against brute-force relational
//! composition, and runs the reverse direction: from a finite label
//! specification it synthesizes a finite model whose pair atoms realize the
//! specified complements and compositions, with measured extension-axiom
//! coverage standing in for genericity.
//!
//! Start with [`algebra::extract_algebra`] for the forward direction and
//! [`synth::synthesize`] / [`synth::roundtrip`] for the reverse; the
//! `examples/` directory has one runnable program per capability.

pub mod algebra;
pub mod atoms;
pub mod doc;
pub mod error;
pub mod perm;
pub mod report;
pub mod structure;
pub mod synth;

pub use algebra::{extract_algebra, Extraction, Label, LabelAlgebra, LabelClass};
pub use error::{Error, Result};
pub use structure::{FiniteStructure, Relation};
