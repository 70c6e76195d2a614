//! Fog node placement as box-constrained search.
//!
//! The library models a rectangular deployment region holding fog relay
//! nodes (disks with individual transmission ranges) and fixed IoT edge
//! nodes, scores a placement by a weighted blend of fog-network
//! connectivity and edge coverage, and searches the placement space with a
//! marine predator optimizer plus PSO, SCA, and HHO baselines. A small
//! experiment layer generates scenarios, runs comparisons and parameter
//! sweeps, and writes deterministic CSV/JSON reports.
//!
//! All numeric code is generic over the scalar type (`f32` or `f64`, see
//! [`Real`]); the `*64` aliases below cover the common double-precision
//! case. Every run is a pure function of its inputs and seed.

pub mod baselines;
pub mod error;
pub mod lab;
pub mod model;
pub mod mpa;
pub mod objective;
pub mod rng;
pub mod scalar;
pub mod search;

pub use error::Error;
pub use model::{EdgeNode, FogNode, Point2D, Scenario, TopologyGraph};
pub use objective::{EvaluationContext, FitnessBreakdown, PlacementVector, SearchBounds};
pub use scalar::Real;
pub use search::{run_to_end, Algorithm, BestSolution, Optimizer, RunRecord, TracePoint};

/// Double-precision aliases for the main entry points.
pub type Scenario64 = model::Scenario<f64>;
pub type Context64 = objective::EvaluationContext<f64>;
pub type Placement64 = objective::PlacementVector<f64>;
pub type MpaParams64 = mpa::MpaParams<f64>;
pub type RunRecord64 = search::RunRecord<f64>;

/// Single-precision aliases.
pub type Scenario32 = model::Scenario<f32>;
pub type Context32 = objective::EvaluationContext<f32>;
pub type Placement32 = objective::PlacementVector<f32>;
