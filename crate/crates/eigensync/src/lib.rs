//! Synchronization analysis of k-out-regular digraphs and deterministic
//! finite automata through exact integer dominant eigenvectors.
//!
//! A coloring of a digraph with fixed out-degree `k` distributes `k` letters
//! over each vertex's outgoing edges, producing a complete DFA. This crate
//! decides synchronization questions about such colorings by exact integer
//! arithmetic on the dominant left eigenvector of the digraph:
//!
//! - [`spectral`] computes the normalized positive integer eigenvector (and
//!   its per-letter weighted variant) by fraction-free elimination.
//! - [`partition`] enumerates equal-sum block partitions of the eigenvector;
//!   a non-partitionable eigenvector certifies that *every* coloring
//!   synchronizes.
//! - [`certify`] turns that into total-synchronization verdicts with
//!   explicit certificates or counterexample colorings, exact synchronizing
//!   ratios, maximal-weight synchronizing partitions, and reset-threshold
//!   bound checks.
//! - [`constructions`] builds the named families and transformations:
//!   complete weighted digraphs, letter duplication, the Eulerian lift, and
//!   permutation recolorings of Eulerian digraphs.
//! - [`experiments`] runs seeded, reproducible randomized studies.
//!
//! Start with the runnable examples (`cargo run --example eigenvector`, see
//! `examples/`), or the `eigensync` binary for the file-based CLI.
//!
//! ```
//! use eigensync::{constructions::gen_cerny, spectral::integer_eigenvector};
//!
//! let c4 = gen_cerny(4).unwrap();
//! let w = integer_eigenvector(&c4.underlying()).unwrap();
//! assert_eq!(w.to_string(), "2 2 2 1");
//! ```

pub mod automaton;
pub mod certify;
pub mod cli;
pub mod constructions;
pub mod dgf;
pub mod digraph;
pub mod error;
pub mod experiments;
pub mod partition;
pub mod spectral;
pub mod state_set;

pub use automaton::Automaton;
pub use digraph::Digraph;
pub use error::{Error, Result};
pub use partition::{BlockPartitionReport, PartitionRelation};
pub use spectral::{Distribution, Rational, WeightVector};
pub use state_set::StateSet;
