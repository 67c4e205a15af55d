//! Temporal graphs and their tree decompositions.
//!
//! A [`TemporalGraph`] is a vertex count, a lifetime and a set of time-stamped
//! edges. Around it sit static expansions, exact and heuristic treewidth,
//! the four temporal width parameters, reachability, a handful of solvers with
//! brute-force oracles, and instance generators.

pub mod decomposition;
pub mod error;
pub mod expansion;
pub mod export;
pub mod generators;
pub mod graph;
pub mod io;
pub mod reach;
pub mod scalar;
pub mod solvers;
pub mod twidth;

pub use error::{Error, Result};
pub use graph::{StaticDigraph, StaticGraph, TemporalEdge, TemporalGraph};
pub use scalar::Weight;

/// Exact rational weights, the default for parsed instances.
pub type Rational = num_rational::Ratio<i64>;

/// Temporal graph with exact rational weights.
pub type RationalTemporalGraph = TemporalGraph<Rational>;

/// Temporal graph with double-precision weights.
pub type F64TemporalGraph = TemporalGraph<f64>;

/// Temporal graph with single-precision weights.
pub type F32TemporalGraph = TemporalGraph<f32>;
