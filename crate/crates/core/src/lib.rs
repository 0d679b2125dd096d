//! Induced subgraph counts in power-law random graphs with a prescribed
//! degree sequence, compared against rank-1 inhomogeneous random graphs.
//!
//! The optimizer and the limit-constant code are generic over [`Scalar`], so
//! exponents can be computed exactly with [`Rational`] or in floating point.

pub mod census;
pub mod degree_model;
pub mod distinguisher;
pub mod error;
pub mod graph;
pub mod limit_constants;
pub mod optimizer;
pub mod pattern;
pub mod samplers;
pub mod scalar;

pub use census::{
    brute_force_count, count_induced_exact, count_induced_windowed, fit_scaling, CensusResult, DegreeWindow,
};
pub use degree_model::{build_powerlaw_sequence, is_graphical, DegreeSequence, PowerLawSpec};
pub use distinguisher::{algorithm1, classify, AlgorithmConfig, ModelLabel, Outcome, Verdict};
pub use error::{Error, Result};
pub use graph::{induced_match_labeled, Graph};
pub use optimizer::{
    optimize_grid, optimize_partitions, partition_objective, scaling_exponent, GridOptimum, OptimizationResult,
    PartitionAssignment,
};
pub use pattern::Pattern;
pub use scalar::Scalar;

pub type Rational = num_rational::Ratio<i64>;

pub type ExactOptimizationResult = OptimizationResult<Rational>;
pub type OptimizationResultF64 = OptimizationResult<f64>;
pub type ExactGridOptimum = GridOptimum<Rational>;
pub type GridOptimumF64 = GridOptimum<f64>;
