//! Marine predator search over placement vectors.
//!
//! The run splits its iteration budget into three regimes: Brownian
//! exploration while prey outpace the predator, a mixed middle third where
//! half the population takes heavy-tailed steps, and a contracting final
//! third driven by the decay factor [`cf`]. A per-agent memory keeps the
//! better of each agent's previous and updated position, and a stochastic
//! perturbation (the "FADs" jump) re-scatters agents to escape local optima.
//!
//! # Randomness contract
//!
//! A run consumes a single seeded generator ([`crate::rng::RunRng`]) in a
//! fixed order: initialization draws agent-major, coordinate-minor; each
//! iteration then draws per agent in index order, first the phase update,
//! then the FADs pass. Per agent the phase draws are: noise vector (one
//! normal per coordinate for Brownian, two normals per coordinate for Levy
//! steps), then, where the rule uses it, one uniform per coordinate. The
//! FADs pass draws one uniform `r` per agent, followed by either `d`
//! uniforms for the box re-draw plus `d` uniforms for the binary mask
//! (`r <= fads_prob`), or two agent indices (`r > fads_prob`). Identical
//! seeds therefore reproduce identical runs bit for bit.

use std::time::Duration;

use rand::Rng;

use crate::objective::{EvaluationContext, PlacementVector, SearchBounds};
use crate::rng::rng_from_seed;
use crate::scalar::{count, Real};
use crate::search::{
    evaluate_all, uniform_population, Algorithm, BestSolution, Optimizer, RunRecord, TracePoint,
};

/// Tuning knobs of a marine predator run.
#[derive(Debug, Clone, PartialEq)]
pub struct MpaParams<F> {
    /// Population size (N >= 2).
    pub population: usize,
    /// Iteration budget (>= 3 so every phase runs at least once).
    pub t_max: usize,
    /// Step weight applied to every update rule; fixed at 0.5.
    pub p_const: F,
    /// Probability that the FADs jump takes the re-scatter branch.
    pub fads_prob: F,
    /// Stability exponent of the heavy-tailed step generator.
    pub levy_beta: F,
    pub seed: u64,
}

impl<F: Real> MpaParams<F> {
    pub fn new(population: usize, t_max: usize, seed: u64) -> Self {
        Self {
            population,
            t_max,
            seed,
            ..Self::default()
        }
    }

    pub(crate) fn assert_valid(&self) {
        assert!(self.population >= 2, "population must be at least 2");
        assert!(self.t_max >= 3, "t_max must be at least 3");
        assert!(
            self.fads_prob >= F::zero() && self.fads_prob <= F::one(),
            "fads_prob must lie in [0, 1]"
        );
        assert!(
            self.levy_beta > F::zero() && self.levy_beta <= F::from_f64(2.0).unwrap(),
            "levy_beta must lie in (0, 2]"
        );
    }

    fn echo(&self) -> String {
        format!(
            "pop={} t_max={} p={} fads={} beta={}",
            self.population, self.t_max, self.p_const, self.fads_prob, self.levy_beta
        )
    }
}

impl<F: Real> Default for MpaParams<F> {
    fn default() -> Self {
        Self {
            population: 30,
            t_max: 1000,
            p_const: F::from_f64(0.5).unwrap(),
            fads_prob: F::from_f64(0.2).unwrap(),
            levy_beta: F::from_f64(1.5).unwrap(),
            seed: 0,
        }
    }
}

/// The candidate population with its most recent fitness values.
#[derive(Debug, Clone)]
pub struct PreyMatrix<F> {
    pub rows: Vec<PlacementVector<F>>,
    pub fitness: Vec<F>,
}

/// Best solution observed so far; conceptually replicated across the
/// population, stored once and broadcast.
#[derive(Debug, Clone)]
pub struct EliteMatrix<F> {
    best: BestSolution<F>,
}

impl<F: Real> EliteMatrix<F> {
    pub fn top_predator(&self) -> &PlacementVector<F> {
        &self.best.placement
    }

    pub fn top_fitness(&self) -> F {
        self.best.breakdown.f
    }

    pub fn breakdown(&self) -> crate::objective::FitnessBreakdown<F> {
        self.best.breakdown
    }

    fn as_best(&self) -> &BestSolution<F> {
        &self.best
    }

    /// Adopts the candidate if it strictly improves on the best so far.
    fn consider(&mut self, row: &PlacementVector<F>, b: crate::objective::FitnessBreakdown<F>) {
        if b.f > self.best.breakdown.f {
            self.best.placement = row.clone();
            self.best.breakdown = b;
        }
    }
}

/// Per-agent elitism state: the best row and fitness each agent has held.
#[derive(Debug, Clone)]
pub struct AgentMemory<F> {
    rows: Vec<PlacementVector<F>>,
    fitness: Vec<F>,
}

impl<F: Real> AgentMemory<F> {
    fn of(prey: &PreyMatrix<F>) -> Self {
        Self {
            rows: prey.rows.clone(),
            fitness: prey.fitness.clone(),
        }
    }

    pub fn fitness(&self) -> &[F] {
        &self.fitness
    }
}

/// Which update regime an iteration executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// First third: Brownian prey moves.
    Explore,
    /// Middle third: Levy prey half, Brownian predator half.
    Mixed,
    /// Final third: contracting Levy predator moves.
    Exploit,
}

/// Maps an iteration index to its regime. The thirds are half-open so every
/// `t` in `[0, t_max)` lands in exactly one phase.
pub fn phase_for(t: usize, t_max: usize) -> Phase {
    if t < t_max / 3 {
        Phase::Explore
    } else if t < 2 * t_max / 3 {
        Phase::Mixed
    } else {
        Phase::Exploit
    }
}

/// Adaptive step decay `(1 - t/t_max)^(2 t / t_max)`.
pub fn cf<F: Real>(t: usize, t_max: usize) -> F {
    debug_assert!(t <= t_max);
    let ratio = count::<F>(t) / count::<F>(t_max);
    (F::one() - ratio).powf(ratio + ratio)
}

/// Uniform population per the initialization rule; fitness starts unset
/// (negative infinity) until the first evaluation.
pub fn initialize<F: Real, R: Rng + ?Sized>(
    params: &MpaParams<F>,
    bounds: &SearchBounds<F>,
    rng: &mut R,
) -> PreyMatrix<F> {
    let rows = uniform_population(params.population, bounds, rng);
    let fitness = vec![F::neg_infinity(); params.population];
    PreyMatrix { rows, fitness }
}

/// `d` independent standard-normal draws.
pub fn brownian_vector<F: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<F> {
    (0..d).map(|_| F::normal(rng)).collect()
}

/// `d` heavy-tailed steps from the Mantegna generator, scaled by 0.05:
/// `0.05 * u / |v|^(1/beta)` with `u ~ N(0, sigma_u^2)`, `v ~ N(0, 1)`.
pub fn levy_vector<F: Real, R: Rng + ?Sized>(d: usize, beta: F, rng: &mut R) -> Vec<F> {
    mantegna_vector(d, beta, F::from_f64(0.05).unwrap(), rng)
}

pub(crate) fn mantegna_vector<F: Real, R: Rng + ?Sized>(
    d: usize,
    beta: F,
    scale: F,
    rng: &mut R,
) -> Vec<F> {
    assert!(
        beta > F::zero() && beta <= F::from_f64(2.0).unwrap(),
        "levy beta must lie in (0, 2]"
    );
    let sigma_u = mantegna_sigma(beta);
    let inv_beta = F::one() / beta;
    (0..d)
        .map(|_| {
            let u = F::normal(rng) * sigma_u;
            let v: F = F::normal(rng);
            scale * u / v.abs().powf(inv_beta)
        })
        .collect()
}

/// Mantegna's sigma_u for a stability exponent. Computed in f64 (it is a
/// constant of the run) and narrowed to the working scalar.
fn mantegna_sigma<F: Real>(beta: F) -> F {
    let b = beta.to_f64().expect("beta fits f64");
    let num = libm::tgamma(1.0 + b) * (std::f64::consts::PI * b / 2.0).sin();
    let den = libm::tgamma((1.0 + b) / 2.0) * b * 2f64.powf((b - 1.0) / 2.0);
    F::from_f64((num / den).powf(1.0 / b)).expect("sigma_u fits scalar")
}

/// Prey-driven move: `x + p * r .* (noise .* (elite - noise .* x))`.
fn prey_step_row<F: Real>(x: &[F], elite: &[F], noise: &[F], r: &[F], p: F) -> Vec<F> {
    x.iter()
        .zip(elite)
        .zip(noise.iter().zip(r))
        .map(|((&xi, &ei), (&ni, &ri))| {
            let step = ni * (ei - ni * xi);
            xi + p * ri * step
        })
        .collect()
}

/// Predator-driven move: `elite + p * cf * (noise .* (noise .* elite - x))`.
fn predator_step_row<F: Real>(x: &[F], elite: &[F], noise: &[F], p: F, cf: F) -> Vec<F> {
    x.iter()
        .zip(elite)
        .zip(noise)
        .map(|((&xi, &ei), &ni)| {
            let step = ni * (ni * ei - xi);
            ei + p * cf * step
        })
        .collect()
}

/// Exploration update (first third): every agent takes a Brownian prey
/// move. Per agent: `d` normals, then `d` uniforms. Rows are clamped.
pub fn phase1_update<F: Real, R: Rng + ?Sized>(
    prey: &mut PreyMatrix<F>,
    elite: &EliteMatrix<F>,
    params: &MpaParams<F>,
    bounds: &SearchBounds<F>,
    rng: &mut R,
) {
    let d = bounds.dim();
    let e = elite.top_predator().values();
    for row in &mut prey.rows {
        let rb = brownian_vector::<F, R>(d, rng);
        let r: Vec<F> = (0..d).map(|_| F::unit(rng)).collect();
        let mut next = prey_step_row(row.values(), e, &rb, &r, params.p_const);
        bounds.clamp(&mut next);
        *row = PlacementVector::new(next);
    }
}

/// Mixed update (middle third): the first `floor(N/2)` agents take Levy
/// prey moves, the rest Brownian predator moves scaled by [`cf`].
pub fn phase2_update<F: Real, R: Rng + ?Sized>(
    prey: &mut PreyMatrix<F>,
    elite: &EliteMatrix<F>,
    params: &MpaParams<F>,
    t: usize,
    bounds: &SearchBounds<F>,
    rng: &mut R,
) {
    let d = bounds.dim();
    let e = elite.top_predator().values();
    let cf_t = cf::<F>(t, params.t_max);
    let half = prey.rows.len() / 2;
    for (i, row) in prey.rows.iter_mut().enumerate() {
        let mut next = if i < half {
            let rl = levy_vector::<F, R>(d, params.levy_beta, rng);
            let r: Vec<F> = (0..d).map(|_| F::unit(rng)).collect();
            prey_step_row(row.values(), e, &rl, &r, params.p_const)
        } else {
            let rb = brownian_vector::<F, R>(d, rng);
            predator_step_row(row.values(), e, &rb, params.p_const, cf_t)
        };
        bounds.clamp(&mut next);
        *row = PlacementVector::new(next);
    }
}

/// Exploitation update (final third): every agent takes a Levy predator
/// move scaled by [`cf`].
pub fn phase3_update<F: Real, R: Rng + ?Sized>(
    prey: &mut PreyMatrix<F>,
    elite: &EliteMatrix<F>,
    params: &MpaParams<F>,
    t: usize,
    bounds: &SearchBounds<F>,
    rng: &mut R,
) {
    let d = bounds.dim();
    let e = elite.top_predator().values();
    let cf_t = cf::<F>(t, params.t_max);
    for row in &mut prey.rows {
        let rl = levy_vector::<F, R>(d, params.levy_beta, rng);
        let mut next = predator_step_row(row.values(), e, &rl, params.p_const, cf_t);
        bounds.clamp(&mut next);
        *row = PlacementVector::new(next);
    }
}

/// Binary mask with each element 1 when an independent uniform draw falls
/// below `p`.
pub fn fads_mask<F: Real, R: Rng + ?Sized>(d: usize, p: F, rng: &mut R) -> Vec<F> {
    (0..d)
        .map(|_| if F::unit(rng) < p { F::one() } else { F::zero() })
        .collect()
}

/// Environment perturbation. Per agent, one uniform `r` decides the branch:
/// `r <= fads_prob` adds a masked uniform re-draw inside the box scaled by
/// [`cf`]; otherwise the agent drifts along the difference of two randomly
/// indexed rows (taken from the pre-perturbation population). Rows are
/// clamped; fitness values are left stale for the next evaluation.
pub fn fads_effect<F: Real, R: Rng + ?Sized>(
    prey: &mut PreyMatrix<F>,
    params: &MpaParams<F>,
    t: usize,
    bounds: &SearchBounds<F>,
    rng: &mut R,
) {
    let d = bounds.dim();
    let n = prey.rows.len();
    let cf_t = cf::<F>(t, params.t_max);
    let snapshot: Vec<PlacementVector<F>> = prey.rows.clone();
    for row in &mut prey.rows {
        let r = F::unit(rng);
        let values = row.values_mut();
        if r <= params.fads_prob {
            let boxed = bounds.sample_row(rng);
            let mask = fads_mask(d, params.fads_prob, rng);
            for ((v, b), m) in values.iter_mut().zip(&boxed).zip(&mask) {
                *v = *v + cf_t * *b * *m;
            }
        } else {
            let r1 = rng.random_range(0..n);
            let r2 = rng.random_range(0..n);
            let scale = params.fads_prob * (F::one() - r) + r;
            let (a, b) = (snapshot[r1].values(), snapshot[r2].values());
            for (j, v) in values.iter_mut().enumerate() {
                *v = *v + scale * (a[j] - b[j]);
            }
        }
        bounds.clamp(values);
    }
}

/// Per-agent elitism: every agent keeps whichever of its remembered and
/// current position has the higher fitness; the memory is updated to the
/// kept row, so each agent's remembered fitness never decreases.
pub fn memory_saving<F: Real>(prey: &mut PreyMatrix<F>, memory: &mut AgentMemory<F>) {
    for i in 0..prey.rows.len() {
        if memory.fitness[i] > prey.fitness[i] {
            prey.rows[i] = memory.rows[i].clone();
            prey.fitness[i] = memory.fitness[i];
        } else {
            memory.rows[i] = prey.rows[i].clone();
            memory.fitness[i] = prey.fitness[i];
        }
    }
}

/// A marine predator run in progress.
///
/// Each [`MpaState::advance`] call executes one iteration: evaluate the
/// population, refresh the elite and run [`memory_saving`]; apply the
/// phase update for `t`; evaluate, save and refresh again; apply
/// [`fads_effect`]; record a trace point.
pub struct MpaState<'a, F> {
    ctx: &'a EvaluationContext<F>,
    params: MpaParams<F>,
    bounds: SearchBounds<F>,
    rng: crate::rng::RunRng,
    prey: PreyMatrix<F>,
    elite: EliteMatrix<F>,
    memory: Option<AgentMemory<F>>,
    t: usize,
    trace: Vec<TracePoint<F>>,
}

impl<'a, F: Real> MpaState<'a, F> {
    pub fn new(ctx: &'a EvaluationContext<F>, params: MpaParams<F>) -> Self {
        params.assert_valid();
        let bounds = ctx.bounds();
        let mut rng = rng_from_seed(params.seed);
        let prey = initialize(&params, &bounds, &mut rng);
        // placeholder elite; the first evaluation replaces it
        let elite = EliteMatrix {
            best: BestSolution {
                placement: prey.rows[0].clone(),
                breakdown: crate::objective::FitnessBreakdown {
                    f: F::neg_infinity(),
                    zeta: 0,
                    phi: 0,
                },
            },
        };
        Self {
            ctx,
            params,
            bounds,
            rng,
            prey,
            elite,
            memory: None,
            t: 0,
            trace: Vec::new(),
        }
    }

    pub fn params(&self) -> &MpaParams<F> {
        &self.params
    }

    pub fn elite(&self) -> &EliteMatrix<F> {
        &self.elite
    }

    /// Remembered per-agent fitness, available once the first iteration ran.
    pub fn memory(&self) -> Option<&AgentMemory<F>> {
        self.memory.as_ref()
    }

    /// Evaluates the population, refreshes the elite, and runs the
    /// per-agent memory pass (initializing the memory on first use).
    fn evaluate_save_update(&mut self) {
        let (breakdowns, best) = evaluate_all(self.ctx, &self.prey.rows);
        for (slot, b) in self.prey.fitness.iter_mut().zip(&breakdowns) {
            *slot = b.f;
        }
        self.elite.consider(&self.prey.rows[best], breakdowns[best]);
        match &mut self.memory {
            None => self.memory = Some(AgentMemory::of(&self.prey)),
            Some(memory) => memory_saving(&mut self.prey, memory),
        }
    }

    /// Runs one iteration and reports which phase it executed.
    pub fn advance(&mut self) -> Phase {
        assert!(self.t < self.params.t_max, "iteration budget exhausted");

        // first pass covers the initial population and later the rows the
        // perturbation produced at the end of the previous iteration
        self.evaluate_save_update();

        let phase = phase_for(self.t, self.params.t_max);
        match phase {
            Phase::Explore => phase1_update(
                &mut self.prey,
                &self.elite,
                &self.params,
                &self.bounds,
                &mut self.rng,
            ),
            Phase::Mixed => phase2_update(
                &mut self.prey,
                &self.elite,
                &self.params,
                self.t,
                &self.bounds,
                &mut self.rng,
            ),
            Phase::Exploit => phase3_update(
                &mut self.prey,
                &self.elite,
                &self.params,
                self.t,
                &self.bounds,
                &mut self.rng,
            ),
        }

        self.evaluate_save_update();

        fads_effect(
            &mut self.prey,
            &self.params,
            self.t,
            &self.bounds,
            &mut self.rng,
        );

        let b = self.elite.breakdown();
        self.trace.push(TracePoint {
            best_f: b.f,
            zeta: b.zeta,
            phi: b.phi,
        });
        self.t += 1;
        phase
    }
}

impl<F: Real> Optimizer<F> for MpaState<'_, F> {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Mpa
    }

    fn iteration(&self) -> usize {
        self.t
    }

    fn iteration_budget(&self) -> usize {
        self.params.t_max
    }

    fn step(&mut self) {
        self.advance();
    }

    fn population(&self) -> &[PlacementVector<F>] {
        &self.prey.rows
    }

    fn trace(&self) -> &[TracePoint<F>] {
        &self.trace
    }

    fn best(&self) -> &BestSolution<F> {
        self.elite.as_best()
    }

    fn into_record(self, wall_time: Duration) -> RunRecord<F> {
        RunRecord {
            algorithm: Algorithm::Mpa,
            seed: self.params.seed,
            params: self.params.echo(),
            fog_count: self.ctx.fog_count(),
            edge_count: self.ctx.edge_count(),
            trace: self.trace,
            best: self.elite.best,
            wall_time,
        }
    }
}

/// Runs the full search and returns its report.
pub fn run<F: Real>(ctx: &EvaluationContext<F>, params: &MpaParams<F>) -> RunRecord<F> {
    crate::search::run_to_end(MpaState::new(ctx, params.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EdgeNode, FogNode, Point2D, Scenario};
    use crate::objective::FitnessBreakdown;
    use rand::RngCore;

    /// Emits the same word forever, forcing uniform draws to a constant.
    struct ConstRng(u64);

    impl RngCore for ConstRng {
        fn next_u32(&mut self) -> u32 {
            (self.0 >> 32) as u32
        }

        fn next_u64(&mut self) -> u64 {
            self.0
        }

        fn fill_bytes(&mut self, dest: &mut [u8]) {
            for chunk in dest.chunks_mut(8) {
                let bytes = self.0.to_le_bytes();
                chunk.copy_from_slice(&bytes[..chunk.len()]);
            }
        }
    }

    fn ctx_2fog() -> EvaluationContext<f64> {
        let s = Scenario::new(
            1000.0,
            500.0,
            None,
            vec![
                FogNode::new(0, Point2D::new(100.0, 100.0), 100.0),
                FogNode::new(1, Point2D::new(400.0, 200.0), 100.0),
            ],
            vec![EdgeNode::new(0, Point2D::new(120.0, 110.0))],
        )
        .unwrap();
        EvaluationContext::new(s, 0.5).unwrap()
    }

    fn elite_of(values: Vec<f64>) -> EliteMatrix<f64> {
        EliteMatrix {
            best: BestSolution {
                placement: PlacementVector::new(values),
                breakdown: FitnessBreakdown { f: 0.9, zeta: 2, phi: 1 },
            },
        }
    }

    #[test]
    fn cf_endpoints_and_midpoint() {
        assert_eq!(cf::<f64>(0, 500), 1.0);
        assert_eq!(cf::<f64>(500, 500), 0.0);
        assert!((cf::<f64>(250, 500) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn phase_partition_covers_every_iteration() {
        for t_max in [3usize, 7, 10, 500, 1000] {
            let mut counts = [0usize; 3];
            for t in 0..t_max {
                match phase_for(t, t_max) {
                    Phase::Explore => counts[0] += 1,
                    Phase::Mixed => counts[1] += 1,
                    Phase::Exploit => counts[2] += 1,
                }
            }
            assert_eq!(counts.iter().sum::<usize>(), t_max);
            assert!(counts.iter().all(|&c| c > 0), "t_max={t_max}: {counts:?}");
        }
    }

    #[test]
    fn prey_step_matches_symbolic_substitution() {
        // noise all ones, r all 0.5, p = 0.5: x + 0.25 * (elite - x)
        let x = [10.0, 20.0];
        let elite = [30.0, 60.0];
        let got = prey_step_row(&x, &elite, &[1.0, 1.0], &[0.5, 0.5], 0.5);
        assert_eq!(got, vec![10.0 + 0.25 * 20.0, 20.0 + 0.25 * 40.0]);

        // prey at the elite with unit noise is a fixed point
        let same = prey_step_row(&elite, &elite, &[1.0, 1.0], &[0.7, 0.3], 0.5);
        assert_eq!(same, elite.to_vec());

        // noise all ones, r all ones: x + 0.5 * (elite - x)
        let got = prey_step_row(&x, &elite, &[1.0, 1.0], &[1.0, 1.0], 0.5);
        assert_eq!(got, vec![20.0, 40.0]);
    }

    #[test]
    fn predator_step_matches_symbolic_substitution() {
        let x = [10.0, 20.0];
        let elite = [30.0, 60.0];
        // cf = 0 collapses onto the elite
        assert_eq!(predator_step_row(&x, &elite, &[1.0, 1.0], 0.5, 0.0), elite.to_vec());
        // unit noise: elite + p * cf * (elite - x)
        let got = predator_step_row(&x, &elite, &[1.0, 1.0], 0.5, 0.8);
        assert_eq!(got, vec![30.0 + 0.4 * 20.0, 60.0 + 0.4 * 40.0]);
    }

    #[test]
    fn phase2_splits_population_at_floor_half() {
        // with p_const = 0 the prey half keeps its rows and the predator
        // half lands exactly on the elite, exposing the split index
        let ctx = ctx_2fog();
        let bounds = ctx.bounds();
        let mut params = MpaParams::<f64>::new(7, 9, 1);
        params.p_const = 0.0;
        let elite = elite_of(vec![500.0, 250.0, 600.0, 300.0]);
        let mut prey = initialize(&params, &bounds, &mut rng_from_seed(3));
        let before: Vec<_> = prey.rows.clone();
        phase2_update(&mut prey, &elite, &params, 3, &bounds, &mut rng_from_seed(4));
        for i in 0..7 {
            if i < 3 {
                assert_eq!(prey.rows[i], before[i], "prey half must hold at p=0");
            } else {
                assert_eq!(
                    prey.rows[i],
                    *elite.top_predator(),
                    "predator half must sit on the elite at p=0"
                );
            }
        }
    }

    #[test]
    fn phase2_predator_half_collapses_onto_elite_when_decay_is_zero() {
        let ctx = ctx_2fog();
        let bounds = ctx.bounds();
        let params = MpaParams::<f64>::new(6, 10, 1);
        let elite = elite_of(vec![500.0, 250.0, 600.0, 300.0]);
        let mut prey = initialize(&params, &bounds, &mut rng_from_seed(8));
        let before: Vec<_> = prey.rows.clone();
        // cf(t_max) = 0, so the second half lands exactly on the elite
        phase2_update(&mut prey, &elite, &params, 10, &bounds, &mut rng_from_seed(9));
        for i in 3..6 {
            assert_eq!(prey.rows[i], *elite.top_predator());
        }
        // the levy half still moved (same seed makes this deterministic)
        assert_ne!(prey.rows[0], before[0]);
    }

    #[test]
    fn initialize_centers_on_the_box_midpoint() {
        // single-fog context gives a 2-dimensional box (1000 x 500);
        // 100_000 rows put 1e5 samples on each coordinate, whose mean must
        // land within 1% of (lower + upper) / 2
        let template = Scenario::new(
            1000.0,
            500.0,
            None,
            vec![FogNode::new(0, Point2D::new(1.0, 1.0), 10.0)],
            vec![EdgeNode::new(0, Point2D::new(1.0, 1.0))],
        )
        .unwrap();
        let bounds = EvaluationContext::new(template, 0.5).unwrap().bounds();
        let params = MpaParams::<f64>::new(100_000, 9, 1);
        let prey = initialize(&params, &bounds, &mut rng_from_seed(99));
        for k in 0..2 {
            let mean = prey.rows.iter().map(|r| r.values()[k]).sum::<f64>()
                / prey.rows.len() as f64;
            let mid = 0.5 * (bounds.lower().values()[k] + bounds.upper().values()[k]);
            assert!(
                (mean - mid).abs() <= 0.01 * mid,
                "coordinate {k}: mean {mean} vs midpoint {mid}"
            );
        }
    }

    #[test]
    fn fads_rescatter_branch_is_identity_at_final_decay() {
        let ctx = ctx_2fog();
        let bounds = ctx.bounds();
        let mut params = MpaParams::<f64>::new(4, 10, 1);
        params.fads_prob = 1.0; // every agent takes the re-scatter branch
        let mut prey = initialize(&params, &bounds, &mut rng_from_seed(5));
        let before = prey.rows.clone();
        fads_effect(&mut prey, &params, 10, &bounds, &mut rng_from_seed(6));
        assert_eq!(prey.rows, before, "cf(t_max) = 0 must freeze the branch");
    }

    #[test]
    fn fads_drift_scale_reaches_unity() {
        // the drift factor p_f (1 - r) + r equals 1 when r = 1
        let p_f = 0.2;
        let r = 1.0;
        assert_eq!(p_f * (1.0 - r) + r, 1.0);
    }

    #[test]
    fn fads_respects_bounds_on_random_states() {
        let ctx = ctx_2fog();
        let bounds = ctx.bounds();
        let params = MpaParams::<f64>::new(8, 10, 1);
        let mut rng = rng_from_seed(42);
        for t in 0..200 {
            let mut prey = initialize(&params, &bounds, &mut rng);
            fads_effect(&mut prey, &params, t % 10, &bounds, &mut rng);
            for row in &prey.rows {
                assert!(bounds.contains(row.values()));
            }
        }
    }

    #[test]
    fn phase_updates_respect_bounds_on_random_states() {
        let ctx = ctx_2fog();
        let bounds = ctx.bounds();
        let params = MpaParams::<f64>::new(6, 9, 1);
        let elite = elite_of(vec![900.0, 450.0, 50.0, 10.0]);
        let mut rng = rng_from_seed(17);
        for round in 0..300 {
            let mut prey = initialize(&params, &bounds, &mut rng);
            match round % 3 {
                0 => phase1_update(&mut prey, &elite, &params, &bounds, &mut rng),
                1 => phase2_update(&mut prey, &elite, &params, 4, &bounds, &mut rng),
                _ => phase3_update(&mut prey, &elite, &params, 7, &bounds, &mut rng),
            }
            for row in &prey.rows {
                assert!(bounds.contains(row.values()));
            }
        }
    }

    #[test]
    fn memory_saving_keeps_the_better_row() {
        let better = PlacementVector::new(vec![1.0, 2.0]);
        let worse = PlacementVector::new(vec![3.0, 4.0]);

        // old 0.8, new 0.7: revert
        let mut prey = PreyMatrix { rows: vec![worse.clone()], fitness: vec![0.7] };
        let mut memory = AgentMemory { rows: vec![better.clone()], fitness: vec![0.8] };
        memory_saving(&mut prey, &mut memory);
        assert_eq!(prey.rows[0], better);
        assert_eq!(prey.fitness[0], 0.8);

        // old 0.7, new 0.8: keep the new row and update memory
        let mut prey = PreyMatrix { rows: vec![worse.clone()], fitness: vec![0.8] };
        let mut memory = AgentMemory { rows: vec![better], fitness: vec![0.7] };
        memory_saving(&mut prey, &mut memory);
        assert_eq!(prey.rows[0], worse);
        assert_eq!(memory.fitness[0], 0.8);
    }

    #[test]
    fn initialize_hits_bounds_under_forced_streams() {
        let ctx = ctx_2fog();
        let bounds = ctx.bounds();
        let params = MpaParams::<f64>::new(3, 9, 1);

        let mut zeros = ConstRng(0);
        let prey = initialize(&params, &bounds, &mut zeros);
        for row in &prey.rows {
            assert_eq!(row.values(), bounds.lower().values());
        }

        let mut ones = ConstRng(u64::MAX);
        let prey = initialize(&params, &bounds, &mut ones);
        for row in &prey.rows {
            for (v, hi) in row.values().iter().zip(bounds.upper().values()) {
                assert!(*v <= *hi && (hi - v) / hi < 1e-9, "{v} vs {hi}");
            }
        }
    }

    #[test]
    fn noise_vectors_are_deterministic_per_seed() {
        let a: Vec<f64> = brownian_vector(16, &mut rng_from_seed(11));
        let b: Vec<f64> = brownian_vector(16, &mut rng_from_seed(11));
        assert_eq!(a, b);

        let a: Vec<f64> = levy_vector(16, 1.5, &mut rng_from_seed(12));
        let b: Vec<f64> = levy_vector(16, 1.5, &mut rng_from_seed(12));
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn levy_median_is_finite_and_positive() {
        let mut draws: Vec<f64> = levy_vector(100_000, 1.5, &mut rng_from_seed(13))
            .into_iter()
            .map(f64::abs)
            .collect();
        draws.sort_by(f64::total_cmp);
        let median = draws[draws.len() / 2];
        assert!(median.is_finite() && median > 0.0);
    }

    #[test]
    fn mantegna_sigma_matches_reference_value() {
        // beta = 1.5 gives sigma_u ~ 0.6966 (hand-evaluated from the formula)
        let sigma: f64 = mantegna_sigma(1.5);
        assert!((sigma - 0.6965745).abs() < 1e-6, "{sigma}");
    }

    #[test]
    fn fads_mask_density_tracks_probability() {
        let mask: Vec<f64> = fads_mask(200_000, 0.2, &mut rng_from_seed(14));
        let density = mask.iter().sum::<f64>() / mask.len() as f64;
        assert!((density - 0.2).abs() < 0.01, "{density}");
        assert!(mask.iter().all(|&m| m == 0.0 || m == 1.0));
    }
}
