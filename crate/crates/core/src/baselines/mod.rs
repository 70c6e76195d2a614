//! Swarm baselines sharing the placement objective and bounds: inertia-
//! weight particle swarm, the sine-cosine update, and Harris hawks with
//! escape-energy phase switching. All three maximize, clamp to the box
//! after every move, keep a best-so-far record (so their traces never
//! decrease), and consume one seeded generator in a documented draw order.

mod hho;
mod pso;
mod sca;

pub use hho::{hho_run, HhoBranchCounts, HhoParams, HhoState};
pub use pso::{pso_run, PsoParams, PsoState};
pub use sca::{sca_run, ScaParams, ScaState};
