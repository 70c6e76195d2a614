//! Sine-cosine position update toward the best-so-far destination.
//!
//! The amplitude `r1 = a * (1 - (t+1)/t_max)` decays linearly and reaches
//! exactly zero on the final iteration. Each agent picks its sine or
//! cosine branch once per iteration; the remaining draws are per
//! coordinate. Draw order per agent: one branch uniform, then per
//! coordinate a phase uniform (scaled to `[0, 2*pi)`) and a pull uniform
//! (scaled to `[0, 2)`).

use std::time::Duration;

use crate::objective::{EvaluationContext, PlacementVector, SearchBounds};
use crate::rng::{rng_from_seed, RunRng};
use crate::scalar::{count, Real};
use crate::search::{
    evaluate_all, uniform_population, Algorithm, BestSolution, Optimizer, RunRecord, TracePoint,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ScaParams<F> {
    pub population: usize,
    pub t_max: usize,
    pub seed: u64,
    /// Initial amplitude of the decaying step factor.
    pub amplitude: F,
}

impl<F: Real> ScaParams<F> {
    pub fn new(population: usize, t_max: usize, seed: u64) -> Self {
        Self {
            population,
            t_max,
            seed,
            ..Self::default()
        }
    }

    fn echo(&self) -> String {
        format!("pop={} t_max={} a={}", self.population, self.t_max, self.amplitude)
    }
}

impl<F: Real> Default for ScaParams<F> {
    fn default() -> Self {
        Self {
            population: 30,
            t_max: 1000,
            seed: 0,
            amplitude: F::from_f64(2.0).unwrap(),
        }
    }
}

pub struct ScaState<'a, F> {
    ctx: &'a EvaluationContext<F>,
    params: ScaParams<F>,
    bounds: SearchBounds<F>,
    rng: RunRng,
    positions: Vec<PlacementVector<F>>,
    best: BestSolution<F>,
    t: usize,
    trace: Vec<TracePoint<F>>,
}

impl<'a, F: Real> ScaState<'a, F> {
    pub fn new(ctx: &'a EvaluationContext<F>, params: ScaParams<F>) -> Self {
        assert!(params.population >= 2, "population must be at least 2");
        assert!(params.t_max >= 1, "t_max must be at least 1");
        let bounds = ctx.bounds();
        let mut rng = rng_from_seed(params.seed);
        let positions = uniform_population(params.population, &bounds, &mut rng);
        let (breakdowns, best_idx) = evaluate_all(ctx, &positions);
        let best = BestSolution {
            placement: positions[best_idx].clone(),
            breakdown: breakdowns[best_idx],
        };
        Self {
            ctx,
            params,
            bounds,
            rng,
            positions,
            best,
            t: 0,
            trace: Vec::new(),
        }
    }

    /// Decaying step factor; zero on the final iteration.
    fn r1(&self) -> F {
        let progress = count::<F>(self.t + 1) / count::<F>(self.params.t_max);
        self.params.amplitude * (F::one() - progress)
    }
}

impl<F: Real> Optimizer<F> for ScaState<'_, F> {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Sca
    }

    fn iteration(&self) -> usize {
        self.t
    }

    fn iteration_budget(&self) -> usize {
        self.params.t_max
    }

    fn step(&mut self) {
        assert!(self.t < self.params.t_max, "iteration budget exhausted");
        let r1 = self.r1();
        let dest = self.best.placement.clone();
        let two = F::one() + F::one();
        let tau = two * F::PI();

        for position in &mut self.positions {
            let sine_branch = F::unit(&mut self.rng) < F::from_f64(0.5).unwrap();
            let values = position.values_mut();
            for (v, dest_j) in values.iter_mut().zip(dest.values()) {
                let r2 = tau * F::unit(&mut self.rng);
                let r3 = two * F::unit(&mut self.rng);
                let pull = (r3 * *dest_j - *v).abs();
                let wave = if sine_branch { r2.sin() } else { r2.cos() };
                *v = *v + r1 * wave * pull;
            }
            self.bounds.clamp(values);
        }

        let (breakdowns, best_idx) = evaluate_all(self.ctx, &self.positions);
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
            algorithm: Algorithm::Sca,
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

/// Runs the full sine-cosine search.
pub fn sca_run<F: Real>(ctx: &EvaluationContext<F>, params: &ScaParams<F>) -> RunRecord<F> {
    crate::search::run_to_end(ScaState::new(ctx, params.clone()))
}
