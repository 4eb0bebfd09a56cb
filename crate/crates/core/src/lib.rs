//! Generalized Turán problems around `K_{2,t}`.
//!
//! The crate builds the finite-field pair-class graphs that are extremal for
//! `K_{2,t}`-freeness, counts embeddings and copies of small patterns,
//! decomposes trees by the greedy A/B rule, builds the lower-bound
//! constructions, and computes exact `ex(n, H, F)` values for tiny `n` by
//! exhaustive search.

pub mod canon;
pub mod coloring;
pub mod constructions;
pub mod counting;
pub mod error;
pub mod furedi;
pub mod galois;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod patterns;
pub mod report;
pub mod suite;
pub mod tree;
pub mod util;

pub use error::{Error, Result};
pub use graph::Graph;
