//! Evolutionary optimization for dynamic multi-objective problems whose
//! number of objectives changes over time.
//!
//! The crate provides the dynamic DTLZ/WFG benchmark family, the variation
//! and weight-vector machinery, the Pareto-set expansion/contraction
//! knowledge transfer, the KTDMOEA optimizer together with its baselines
//! (DTAEA, NSGA-II, DNSGA-II, MOEA/D and two ablations), quality indicators
//! and the nonparametric statistics used to compare runs.

pub mod algorithms;
pub mod error;
pub mod metrics;
pub mod operators;
pub mod pareto;
pub mod problems;
pub mod random;
pub mod stats;
pub mod transfer;
pub mod types;

pub use error::{Error, Result};
pub use pareto::{dominates, extreme_points, nondominated_sort};
pub use problems::{ChangeSchedule, DynamicProblem, ProblemKind, ReferenceFront};
pub use random::RandomSource;
pub use types::{DecisionVector, Individual, ObjectiveVector};
