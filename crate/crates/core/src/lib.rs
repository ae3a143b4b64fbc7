//! Exact counting and enumeration of graph compositions.
//!
//! A *graph composition* of a labelled graph is a partition of its vertex set
//! in which every block induces a connected subgraph. This crate counts them
//! for the family `K_n` minus the edges of a clique on labels `1..=m`, computes
//! the minimax statistic of set partitions, and cross-checks every closed form
//! against exhaustive enumeration.
//!
//! All counts are [`BigNat`] values, so no computation can overflow.
//!
//! Module map:
//!
//! - [`numtheory`]: binomials, Stirling numbers of the second kind, Bell numbers.
//! - [`graph`]: labelled graphs with bitset adjacency and connectivity queries.
//! - [`enumerate`]: set partition streams and brute-force counting oracles.
//! - [`closedform`]: recursive and explicit formulas, with a memo store.
//! - [`bijection`]: the constructive correspondence between compositions of
//!   `K_n^{-K_m}` and partitions of `{1..n+1}` with minimax `m+1`.
//! - [`cli`]: the `compolab` command-line surface.

pub mod bijection;
pub mod cli;
pub mod closedform;
pub mod enumerate;
mod error;
pub mod graph;
pub mod numtheory;

pub use error::{Error, Result};
pub use numtheory::BigNat;
