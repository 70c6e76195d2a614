//! Experiment drivers: algorithm comparisons, tradeoff-weight studies, and
//! density/range sweeps. Runs across seeds, algorithms, and sweep rows are
//! independent and execute in parallel; results are aggregated in config
//! order so reports are reproducible.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{hho_run, pso_run, sca_run, HhoParams, PsoParams, ScaParams};
use crate::error::Error;
use crate::lab::gen::{generate_scenario, GeneratorSpec, RangeSpec};
use crate::model::Scenario;
use crate::mpa::{self, MpaParams};
use crate::objective::EvaluationContext;
use crate::rng::derive_seed;
use crate::scalar::Real;
use crate::search::{Algorithm, RunRecord};

/// Population size and iteration budget shared by every run of an
/// experiment, so algorithm comparisons stay fair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizerBudget {
    pub population: usize,
    pub t_max: usize,
}

impl Default for OptimizerBudget {
    fn default() -> Self {
        Self {
            population: 30,
            t_max: 500,
        }
    }
}

/// One experiment: a scenario source, the contenders, the shared budget,
/// the tradeoff weight, and the seed list (one run per seed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, bound(serialize = "F: Serialize", deserialize = "F: Deserialize<'de> + Real"))]
pub struct ExperimentConfig<F> {
    pub generator: GeneratorSpec<F>,
    pub algorithms: Vec<Algorithm>,
    pub budget: OptimizerBudget,
    pub omega: F,
    pub seeds: Vec<u64>,
    pub out_dir: Option<PathBuf>,
}

impl<F: Real> Default for ExperimentConfig<F> {
    fn default() -> Self {
        Self {
            generator: GeneratorSpec::default(),
            algorithms: Algorithm::ALL.to_vec(),
            budget: OptimizerBudget::default(),
            omega: F::from_f64(0.5).unwrap(),
            seeds: (1..=10).collect(),
            out_dir: None,
        }
    }
}

impl<F: Real> ExperimentConfig<F> {
    pub fn validate(&self) -> Result<(), Error> {
        self.generator.validate()?;
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("no algorithms selected".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidConfig("at least one seed is required".into()));
        }
        if self.budget.population < 2 {
            return Err(Error::InvalidConfig("population must be at least 2".into()));
        }
        if self.budget.t_max < 3 {
            return Err(Error::InvalidConfig("t_max must be at least 3".into()));
        }
        if !(self.omega >= F::zero() && self.omega <= F::one()) {
            return Err(Error::InvalidOmega(self.omega.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(())
    }
}

/// Runs one algorithm on a prepared context with the shared budget.
pub fn run_algorithm<F: Real>(
    ctx: &EvaluationContext<F>,
    algorithm: Algorithm,
    budget: OptimizerBudget,
    seed: u64,
) -> RunRecord<F> {
    match algorithm {
        Algorithm::Mpa => mpa::run(ctx, &MpaParams::new(budget.population, budget.t_max, seed)),
        Algorithm::Pso => pso_run(ctx, &PsoParams::new(budget.population, budget.t_max, seed)),
        Algorithm::Sca => sca_run(ctx, &ScaParams::new(budget.population, budget.t_max, seed)),
        Algorithm::Hho => hho_run(ctx, &HhoParams::new(budget.population, budget.t_max, seed)),
    }
}

/// Per-algorithm aggregate over the seed list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub median_final_f: f64,
    pub mean_final_f: f64,
    pub mean_zeta_pct: f64,
    pub mean_phi_pct: f64,
    pub median_iters_to_95: f64,
}

/// Outcome of [`run_comparison`].
#[derive(Debug, Clone)]
pub struct ComparisonResult<F> {
    pub scenario: Scenario<F>,
    /// Ordered by (algorithm order in the config, seed order).
    pub runs: Vec<RunRecord<F>>,
    pub summaries: Vec<AlgorithmSummary>,
}

/// Runs every configured algorithm on one generated scenario, once per
/// seed, and summarizes each algorithm over its seeds.
pub fn run_comparison<F: Real>(cfg: &ExperimentConfig<F>) -> Result<ComparisonResult<F>, Error> {
    cfg.validate()?;
    let scenario = generate_scenario(&cfg.generator)?;
    run_comparison_on(cfg, scenario)
}

/// [`run_comparison`] on an explicit scenario (for example one loaded from
/// a file) instead of a generated one.
pub fn run_comparison_on<F: Real>(
    cfg: &ExperimentConfig<F>,
    scenario: Scenario<F>,
) -> Result<ComparisonResult<F>, Error> {
    cfg.validate()?;
    let ctx = EvaluationContext::new(scenario.clone(), cfg.omega)?;

    let jobs: Vec<(Algorithm, u64)> = cfg
        .algorithms
        .iter()
        .flat_map(|&a| cfg.seeds.iter().map(move |&s| (a, s)))
        .collect();
    let runs: Vec<RunRecord<F>> = jobs
        .par_iter()
        .map(|&(algorithm, seed)| run_algorithm(&ctx, algorithm, cfg.budget, seed))
        .collect();

    let summaries = cfg
        .algorithms
        .iter()
        .map(|&algorithm| {
            let of_algo: Vec<&RunRecord<F>> =
                runs.iter().filter(|r| r.algorithm == algorithm).collect();
            summarize(algorithm, &of_algo)
        })
        .collect();

    Ok(ComparisonResult {
        scenario,
        runs,
        summaries,
    })
}

fn summarize<F: Real>(algorithm: Algorithm, runs: &[&RunRecord<F>]) -> AlgorithmSummary {
    let finals: Vec<f64> = runs
        .iter()
        .map(|r| r.final_fitness().to_f64().unwrap())
        .collect();
    let iters: Vec<f64> = runs
        .iter()
        .map(|r| r.iterations_to_fraction(0.95) as f64)
        .collect();
    AlgorithmSummary {
        algorithm,
        median_final_f: median(&finals),
        mean_final_f: mean(&finals),
        mean_zeta_pct: mean(&runs.iter().map(|r| r.final_zeta_pct()).collect::<Vec<_>>()),
        mean_phi_pct: mean(&runs.iter().map(|r| r.final_phi_pct()).collect::<Vec<_>>()),
        median_iters_to_95: median(&iters),
    }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub(crate) fn median(xs: &[f64]) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// One aggregated report row keyed by the swept value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub connectivity_pct: f64,
    pub coverage_pct: f64,
    pub fitness_pct: f64,
}

/// Rows of a sweep, ordered by axis value as produced.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub axis: String,
    pub rows: Vec<SweepRow>,
}

/// What a sweep varies while everything else stays at the config values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    FogCount,
    EdgeCount,
    Range,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::FogCount => "fog_count",
            SweepAxis::EdgeCount => "edge_count",
            SweepAxis::Range => "range",
        }
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fog_count" => Ok(SweepAxis::FogCount),
            "edge_count" => Ok(SweepAxis::EdgeCount),
            "range" => Ok(SweepAxis::Range),
            other => Err(format!(
                "unknown sweep axis `{other}` (expected fog_count|edge_count|range)"
            )),
        }
    }
}

fn apply_axis<F: Real>(
    base: &GeneratorSpec<F>,
    axis: SweepAxis,
    value: f64,
) -> Result<GeneratorSpec<F>, Error> {
    let mut spec = base.clone();
    match axis {
        SweepAxis::FogCount | SweepAxis::EdgeCount => {
            if value.fract() != 0.0 || value < 1.0 {
                return Err(Error::InvalidConfig(format!(
                    "{} must be a positive integer, got {value}",
                    axis.name()
                )));
            }
            if axis == SweepAxis::FogCount {
                spec.fog_count = value as usize;
            } else {
                spec.edge_count = value as usize;
            }
        }
        SweepAxis::Range => {
            let r = F::from_f64(value)
                .ok_or_else(|| Error::InvalidConfig(format!("bad range value {value}")))?;
            spec.range = RangeSpec::Fixed(r);
        }
    }
    Ok(spec)
}

/// Sweeps one generator axis with the marine predator optimizer.
pub fn sweep<F: Real>(
    cfg: &ExperimentConfig<F>,
    axis: SweepAxis,
    values: &[f64],
) -> Result<SweepTable, Error> {
    sweep_with_algorithm(cfg, axis, values, Algorithm::Mpa)
}

/// Sweeps one generator axis: for every value a fresh scenario per
/// repetition, each run re-seeded through [`derive_seed`] so rows are
/// independent of one another and of the value list order.
pub fn sweep_with_algorithm<F: Real>(
    cfg: &ExperimentConfig<F>,
    axis: SweepAxis,
    values: &[f64],
    algorithm: Algorithm,
) -> Result<SweepTable, Error> {
    cfg.validate()?;
    if values.is_empty() {
        return Err(Error::InvalidConfig("sweep needs at least one value".into()));
    }
    // validate all rows up front so failures happen before any work
    let specs: Vec<GeneratorSpec<F>> = values
        .iter()
        .map(|&v| apply_axis(&cfg.generator, axis, v))
        .collect::<Result<_, _>>()?;

    let jobs: Vec<(usize, u64)> = (0..values.len())
        .flat_map(|vi| cfg.seeds.iter().map(move |&s| (vi, s)))
        .collect();
    let runs: Vec<Result<(usize, RunRecord<F>), Error>> = jobs
        .par_iter()
        .map(|&(vi, rep)| {
            let value_bits = values[vi].to_bits();
            let mut spec = specs[vi].clone();
            spec.seed = derive_seed(cfg.generator.seed, axis.name(), value_bits, rep);
            let scenario = generate_scenario(&spec)?;
            let ctx = EvaluationContext::new(scenario, cfg.omega)?;
            let run_seed = derive_seed(
                cfg.generator.seed,
                &format!("{}/run", axis.name()),
                value_bits,
                rep,
            );
            Ok((vi, run_algorithm(&ctx, algorithm, cfg.budget, run_seed)))
        })
        .collect();

    let mut per_value: Vec<Vec<RunRecord<F>>> = (0..values.len()).map(|_| Vec::new()).collect();
    for r in runs {
        let (vi, record) = r?;
        per_value[vi].push(record);
    }

    let rows = values
        .iter()
        .zip(&per_value)
        .map(|(&value, records)| aggregate_row(value, records))
        .collect();

    Ok(SweepTable {
        axis: axis.name().to_string(),
        rows,
    })
}

/// Repeats the marine predator run for each tradeoff weight on one shared
/// generated scenario; rows are ordered by ascending omega.
pub fn omega_study<F: Real>(
    cfg: &ExperimentConfig<F>,
    omegas: &[F],
) -> Result<SweepTable, Error> {
    cfg.validate()?;
    let scenario = generate_scenario(&cfg.generator)?;
    omega_study_on(cfg, scenario, omegas)
}

/// [`omega_study`] on an explicit scenario.
pub fn omega_study_on<F: Real>(
    cfg: &ExperimentConfig<F>,
    scenario: Scenario<F>,
    omegas: &[F],
) -> Result<SweepTable, Error> {
    cfg.validate()?;
    if omegas.is_empty() {
        return Err(Error::InvalidConfig("omega study needs at least one omega".into()));
    }
    for &w in omegas {
        if !(w >= F::zero() && w <= F::one()) {
            return Err(Error::InvalidOmega(w.to_f64().unwrap_or(f64::NAN)));
        }
    }

    let jobs: Vec<(usize, u64)> = (0..omegas.len())
        .flat_map(|wi| cfg.seeds.iter().map(move |&s| (wi, s)))
        .collect();
    let runs: Vec<Result<(usize, RunRecord<F>), Error>> = jobs
        .par_iter()
        .map(|&(wi, seed)| {
            let ctx = EvaluationContext::new(scenario.clone(), omegas[wi])?;
            Ok((wi, run_algorithm(&ctx, Algorithm::Mpa, cfg.budget, seed)))
        })
        .collect();

    let mut per_omega: Vec<Vec<RunRecord<F>>> = (0..omegas.len()).map(|_| Vec::new()).collect();
    for r in runs {
        let (wi, record) = r?;
        per_omega[wi].push(record);
    }

    let mut rows: Vec<SweepRow> = omegas
        .iter()
        .zip(&per_omega)
        .map(|(&w, records)| aggregate_row(w.to_f64().unwrap(), records))
        .collect();
    rows.sort_by(|a, b| a.axis_value.total_cmp(&b.axis_value));

    Ok(SweepTable {
        axis: "omega".to_string(),
        rows,
    })
}

fn aggregate_row<F: Real>(value: f64, records: &[RunRecord<F>]) -> SweepRow {
    SweepRow {
        axis_value: value,
        connectivity_pct: mean(&records.iter().map(|r| r.final_zeta_pct()).collect::<Vec<_>>()),
        coverage_pct: mean(&records.iter().map(|r| r.final_phi_pct()).collect::<Vec<_>>()),
        fitness_pct: mean(
            &records
                .iter()
                .map(|r| 100.0 * r.final_fitness().to_f64().unwrap())
                .collect::<Vec<_>>(),
        ),
    }
}
