//! Inertia-weight particle swarm.
//!
//! Velocities start at zero, inertia decays linearly from `inertia_start`
//! to `inertia_end` across the budget, and each coordinate's velocity is
//! clamped to `velocity_clamp * (upper - lower)`. The global best used in
//! an iteration's velocity updates is the one from the previous iteration
//! (synchronous form). Draw order per iteration: agents in index order,
//! per agent one cognitive uniform vector then one social uniform vector.

use std::time::Duration;

use crate::objective::{EvaluationContext, PlacementVector, SearchBounds};
use crate::rng::{rng_from_seed, RunRng};
use crate::scalar::{count, Real};
use crate::search::{
    evaluate_all, uniform_population, Algorithm, BestSolution, Optimizer, RunRecord, TracePoint,
};

#[derive(Debug, Clone, PartialEq)]
pub struct PsoParams<F> {
    pub population: usize,
    pub t_max: usize,
    pub seed: u64,
    pub inertia_start: F,
    pub inertia_end: F,
    pub cognitive: F,
    pub social: F,
    /// Velocity limit as a fraction of each coordinate's box extent.
    pub velocity_clamp: F,
}

impl<F: Real> PsoParams<F> {
    pub fn new(population: usize, t_max: usize, seed: u64) -> Self {
        Self {
            population,
            t_max,
            seed,
            ..Self::default()
        }
    }

    fn echo(&self) -> String {
        format!(
            "pop={} t_max={} w={}..{} c1={} c2={} vclamp={}",
            self.population,
            self.t_max,
            self.inertia_start,
            self.inertia_end,
            self.cognitive,
            self.social,
            self.velocity_clamp
        )
    }
}

impl<F: Real> Default for PsoParams<F> {
    fn default() -> Self {
        Self {
            population: 30,
            t_max: 1000,
            seed: 0,
            inertia_start: F::from_f64(0.9).unwrap(),
            inertia_end: F::from_f64(0.4).unwrap(),
            cognitive: F::from_f64(2.0).unwrap(),
            social: F::from_f64(2.0).unwrap(),
            velocity_clamp: F::from_f64(0.2).unwrap(),
        }
    }
}

pub struct PsoState<'a, F> {
    ctx: &'a EvaluationContext<F>,
    params: PsoParams<F>,
    bounds: SearchBounds<F>,
    rng: RunRng,
    positions: Vec<PlacementVector<F>>,
    velocities: Vec<Vec<F>>,
    personal_best: Vec<PlacementVector<F>>,
    personal_best_f: Vec<F>,
    best: BestSolution<F>,
    vmax: Vec<F>,
    t: usize,
    trace: Vec<TracePoint<F>>,
}

impl<'a, F: Real> PsoState<'a, F> {
    pub fn new(ctx: &'a EvaluationContext<F>, params: PsoParams<F>) -> Self {
        assert!(params.population >= 2, "population must be at least 2");
        assert!(params.t_max >= 1, "t_max must be at least 1");
        let bounds = ctx.bounds();
        let mut rng = rng_from_seed(params.seed);
        let positions = uniform_population(params.population, &bounds, &mut rng);
        let velocities = vec![vec![F::zero(); bounds.dim()]; params.population];
        let (breakdowns, best_idx) = evaluate_all(ctx, &positions);
        let best = BestSolution {
            placement: positions[best_idx].clone(),
            breakdown: breakdowns[best_idx],
        };
        let personal_best = positions.clone();
        let personal_best_f = breakdowns.iter().map(|b| b.f).collect();
        let vmax = bounds
            .lower()
            .values()
            .iter()
            .zip(bounds.upper().values())
            .map(|(lo, hi)| params.velocity_clamp * (*hi - *lo))
            .collect();
        Self {
            ctx,
            params,
            bounds,
            rng,
            positions,
            velocities,
            personal_best,
            personal_best_f,
            best,
            vmax,
            t: 0,
            trace: Vec::new(),
        }
    }

    fn inertia(&self) -> F {
        if self.params.t_max <= 1 {
            return self.params.inertia_start;
        }
        let progress = count::<F>(self.t) / count::<F>(self.params.t_max - 1);
        self.params.inertia_start + (self.params.inertia_end - self.params.inertia_start) * progress
    }
}

impl<F: Real> Optimizer<F> for PsoState<'_, F> {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Pso
    }

    fn iteration(&self) -> usize {
        self.t
    }

    fn iteration_budget(&self) -> usize {
        self.params.t_max
    }

    fn step(&mut self) {
        assert!(self.t < self.params.t_max, "iteration budget exhausted");
        let w = self.inertia();
        let gbest = self.best.placement.clone();
        let d = self.bounds.dim();

        for i in 0..self.positions.len() {
            let r1: Vec<F> = (0..d).map(|_| F::unit(&mut self.rng)).collect();
            let r2: Vec<F> = (0..d).map(|_| F::unit(&mut self.rng)).collect();
            let position = self.positions[i].values_mut();
            for j in 0..d {
                let v = w * self.velocities[i][j]
                    + self.params.cognitive * r1[j] * (self.personal_best[i].values()[j] - position[j])
                    + self.params.social * r2[j] * (gbest.values()[j] - position[j]);
                self.velocities[i][j] = v.max(-self.vmax[j]).min(self.vmax[j]);
                position[j] = position[j] + self.velocities[i][j];
            }
            self.bounds.clamp(position);
        }

        let (breakdowns, best_idx) = evaluate_all(self.ctx, &self.positions);
        for (i, b) in breakdowns.iter().enumerate() {
            if b.f > self.personal_best_f[i] {
                self.personal_best[i] = self.positions[i].clone();
                self.personal_best_f[i] = b.f;
            }
        }
        if breakdowns[best_idx].f > self.best.breakdown.f {
            self.best.placement = self.positions[best_idx].clone();
            self.best.breakdown = breakdowns[best_idx];
        }

        let b = self.best.breakdown;
        self.trace.push(TracePoint {
            best_f: b.f,
            zeta: b.zeta,
            phi: b.phi,
        });
        self.t += 1;
    }

    fn population(&self) -> &[PlacementVector<F>] {
        &self.positions
    }

    fn trace(&self) -> &[TracePoint<F>] {
        &self.trace
    }

    fn best(&self) -> &BestSolution<F> {
        &self.best
    }

    fn into_record(self, wall_time: Duration) -> RunRecord<F> {
        RunRecord {
            algorithm: Algorithm::Pso,
            seed: self.params.seed,
            params: self.params.echo(),
            fog_count: self.ctx.fog_count(),
            edge_count: self.ctx.edge_count(),
            trace: self.trace,
            best: self.best,
            wall_time,
        }
    }
}

/// Runs the full particle swarm search.
pub fn pso_run<F: Real>(ctx: &EvaluationContext<F>, params: &PsoParams<F>) -> RunRecord<F> {
    crate::search::run_to_end(PsoState::new(ctx, params.clone()))
}
