//! Shared optimizer machinery: the stepping interface, run records, and the
//! population helpers every algorithm uses.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::objective::{EvaluationContext, FitnessBreakdown, PlacementVector, SearchBounds};
use crate::scalar::Real;

/// Identifies one of the bundled optimizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mpa,
    Pso,
    Sca,
    Hho,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Mpa,
        Algorithm::Pso,
        Algorithm::Sca,
        Algorithm::Hho,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Mpa => "mpa",
            Algorithm::Pso => "pso",
            Algorithm::Sca => "sca",
            Algorithm::Hho => "hho",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mpa" => Ok(Algorithm::Mpa),
            "pso" => Ok(Algorithm::Pso),
            "sca" => Ok(Algorithm::Sca),
            "hho" => Ok(Algorithm::Hho),
            other => Err(format!("unknown algorithm `{other}` (expected mpa|pso|sca|hho)")),
        }
    }
}

/// Best-so-far state at the end of one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint<F> {
    pub best_f: F,
    pub zeta: usize,
    pub phi: usize,
}

/// The best placement a run produced, with its fitness parts.
#[derive(Debug, Clone, PartialEq)]
pub struct BestSolution<F> {
    pub placement: PlacementVector<F>,
    pub breakdown: FitnessBreakdown<F>,
}

/// Everything a finished run reports.
#[derive(Debug, Clone)]
pub struct RunRecord<F> {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Compact echo of the parameters the run used.
    pub params: String,
    pub fog_count: usize,
    pub edge_count: usize,
    /// One point per iteration; `best_f` is non-decreasing.
    pub trace: Vec<TracePoint<F>>,
    pub best: BestSolution<F>,
    /// Wall time is reporting metadata only and never lands in the
    /// deterministic output files.
    pub wall_time: Duration,
}

impl<F: Real> RunRecord<F> {
    pub fn final_fitness(&self) -> F {
        self.best.breakdown.f
    }

    pub fn final_zeta_pct(&self) -> f64 {
        100.0 * self.best.breakdown.zeta as f64 / self.fog_count as f64
    }

    pub fn final_phi_pct(&self) -> f64 {
        100.0 * self.best.breakdown.phi as f64 / self.edge_count as f64
    }

    /// First iteration whose best fitness reached `frac` of the final best.
    pub fn iterations_to_fraction(&self, frac: f64) -> usize {
        let target = self.final_fitness().to_f64().unwrap() * frac;
        self.trace
            .iter()
            .position(|p| p.best_f.to_f64().unwrap() >= target)
            .unwrap_or(self.trace.len())
    }
}

/// A population-based maximizer advancing one iteration at a time.
///
/// Implementations append exactly one [`TracePoint`] per `step` and keep the
/// whole population inside the context bounds after every step. A complete
/// run is a pure function of `(context, params)` including the seed.
pub trait Optimizer<F: Real> {
    fn algorithm(&self) -> Algorithm;

    /// Iterations executed so far.
    fn iteration(&self) -> usize;

    /// Total iterations this run will execute.
    fn iteration_budget(&self) -> usize;

    /// Advances one iteration. Must not be called once
    /// `iteration() == iteration_budget()`.
    fn step(&mut self);

    /// Current population rows.
    fn population(&self) -> &[PlacementVector<F>];

    fn trace(&self) -> &[TracePoint<F>];

    fn best(&self) -> &BestSolution<F>;

    /// Consumes the optimizer into a report; `wall_time` is measured by the
    /// caller driving the run.
    fn into_record(self, wall_time: Duration) -> RunRecord<F>;
}

/// Drives an optimizer to its iteration budget and stamps the wall time.
pub fn run_to_end<F: Real, O: Optimizer<F>>(mut optimizer: O) -> RunRecord<F> {
    let start = Instant::now();
    while optimizer.iteration() < optimizer.iteration_budget() {
        optimizer.step();
    }
    optimizer.into_record(start.elapsed())
}

/// Uniform population inside the bounds: rows drawn agent-major,
/// coordinate-minor, each coordinate `lower + u * (upper - lower)`.
pub(crate) fn uniform_population<F: Real, R: Rng + ?Sized>(
    count: usize,
    bounds: &SearchBounds<F>,
    rng: &mut R,
) -> Vec<PlacementVector<F>> {
    (0..count)
        .map(|_| PlacementVector::new(bounds.sample_row(rng)))
        .collect()
}

/// Evaluates every row, returning the breakdowns and the index of the best.
pub(crate) fn evaluate_all<F: Real>(
    ctx: &EvaluationContext<F>,
    rows: &[PlacementVector<F>],
) -> (Vec<FitnessBreakdown<F>>, usize) {
    debug_assert!(!rows.is_empty());
    let breakdowns: Vec<FitnessBreakdown<F>> =
        rows.iter().map(|r| ctx.fitness_of(r.values())).collect();
    let best = best_index(&breakdowns);
    (breakdowns, best)
}

/// Index of the highest fitness; first occurrence wins ties.
pub(crate) fn best_index<F: Real>(breakdowns: &[FitnessBreakdown<F>]) -> usize {
    let mut best = 0;
    for (i, b) in breakdowns.iter().enumerate().skip(1) {
        if b.f > breakdowns[best].f {
            best = i;
        }
    }
    best
}
