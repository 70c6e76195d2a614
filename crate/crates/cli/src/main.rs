//! Command-line front end: generate scenarios, optimize placements, and
//! run the comparison / tradeoff / sweep experiments.
//!
//! Exit codes: 0 on success, 2 for invalid configuration or input files,
//! 3 for I/O failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fogplace::lab::{
    convergence_filename, export_comparison, generate_scenario, omega_study_on, read_scenario_json,
    run_algorithm, run_comparison_on, scenario_json_string, sweep_with_algorithm,
    write_convergence_csv, write_meta_json, write_scenario_json, write_summary_csv,
    write_sweep_csv, ExperimentConfig, RangeSpec, SweepAxis, SweepTable,
};
use fogplace::objective::EvaluationContext;
use fogplace::search::Algorithm;
use fogplace::{Error, RunRecord64, Scenario64};

#[derive(Parser)]
#[command(
    name = "fogplace",
    version,
    about = "Fog node placement optimizer: maximize network connectivity and edge coverage"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random scenario and emit it as JSON
    Gen(CommonArgs),
    /// Optimize one scenario with one algorithm
    Solve(CommonArgs),
    /// Run several algorithms on the same scenario and summarize
    Compare(CommonArgs),
    /// Mean connectivity/coverage/fitness per tradeoff weight
    OmegaStudy(OmegaArgs),
    /// Mean connectivity/coverage/fitness per swept parameter value
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario JSON to load instead of generating one
    #[arg(long)]
    scenario: Option<PathBuf>,

    /// Experiment config JSON; explicit flags override its values
    #[arg(long)]
    config: Option<PathBuf>,

    /// Number of fog nodes to generate
    #[arg(long)]
    fog: Option<usize>,

    /// Number of edge nodes to generate
    #[arg(long)]
    edge: Option<usize>,

    /// Transmission range: a fixed value `R` or an interval `LO:HI` (meters)
    #[arg(long)]
    range: Option<String>,

    /// Region width in meters
    #[arg(long)]
    width: Option<f64>,

    /// Region height in meters
    #[arg(long)]
    height: Option<f64>,

    /// Maximum edge nodes attachable per fog node (unlimited if omitted)
    #[arg(long)]
    capacity: Option<usize>,

    /// Seed for scenario generation
    #[arg(long)]
    scenario_seed: Option<u64>,

    /// Algorithm selection: one of mpa|pso|sca|hho, or a comma list for compare
    #[arg(long)]
    algo: Option<String>,

    /// Population size shared by every run
    #[arg(long)]
    pop: Option<usize>,

    /// Iteration budget shared by every run
    #[arg(long)]
    iters: Option<usize>,

    /// Tradeoff weight between connectivity and coverage
    #[arg(long)]
    omega: Option<f64>,

    /// Comma-separated seed list, one optimizer run per seed
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,

    /// Output file (gen) or directory (other subcommands)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OmegaArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Tradeoff weights to evaluate
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,0.5,0.7,0.9")]
    omegas: Vec<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// What to vary: fog_count, edge_count, or range
    #[arg(long)]
    axis: String,

    /// Values of the swept parameter
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Solve(args) => solve(args),
        Command::Compare(args) => compare(args),
        Command::OmegaStudy(args) => omega_study_cmd(args),
        Command::Sweep(args) => sweep_cmd(args),
    }
}

/// Builds the experiment config: defaults, then the config file, then
/// explicit flags.
fn build_config(args: &CommonArgs) -> Result<ExperimentConfig<f64>, Error> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            serde_json::from_str::<ExperimentConfig<f64>>(&text).map_err(|e| {
                Error::InvalidConfig(format!("{}: {e}", path.display()))
            })?
        }
        None => ExperimentConfig::default(),
    };

    if let Some(n) = args.fog {
        cfg.generator.fog_count = n;
    }
    if let Some(m) = args.edge {
        cfg.generator.edge_count = m;
    }
    if let Some(spec) = &args.range {
        cfg.generator.range = parse_range(spec)?;
    }
    if let Some(w) = args.width {
        cfg.generator.width = w;
    }
    if let Some(h) = args.height {
        cfg.generator.height = h;
    }
    if args.capacity.is_some() {
        cfg.generator.capacity = args.capacity;
    }
    if let Some(seed) = args.scenario_seed {
        cfg.generator.seed = seed;
    }
    if let Some(algos) = &args.algo {
        cfg.algorithms = parse_algorithms(algos)?;
    }
    if let Some(pop) = args.pop {
        cfg.budget.population = pop;
    }
    if let Some(iters) = args.iters {
        cfg.budget.t_max = iters;
    }
    if let Some(omega) = args.omega {
        cfg.omega = omega;
    }
    if let Some(seeds) = &args.seeds {
        cfg.seeds = seeds.clone();
    }
    if args.out.is_some() {
        cfg.out_dir = args.out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_range(spec: &str) -> Result<RangeSpec<f64>, Error> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::InvalidConfig(format!("bad range value `{s}`")))
    };
    match spec.split_once(':') {
        Some((lo, hi)) => Ok(RangeSpec::Uniform {
            lo: parse(lo)?,
            hi: parse(hi)?,
        }),
        None => Ok(RangeSpec::Fixed(parse(spec)?)),
    }
}

fn parse_algorithms(list: &str) -> Result<Vec<Algorithm>, Error> {
    list.split(',')
        .map(|s| s.trim().parse::<Algorithm>().map_err(Error::InvalidConfig))
        .collect()
}

/// Loads the scenario file when given, otherwise generates one.
fn obtain_scenario(args: &CommonArgs, cfg: &ExperimentConfig<f64>) -> Result<Scenario64, Error> {
    match &args.scenario {
        Some(path) => read_scenario_json(path),
        None => generate_scenario(&cfg.generator),
    }
}

fn gen(args: CommonArgs) -> Result<(), Error> {
    if args.scenario.is_some() {
        return Err(Error::InvalidConfig(
            "gen creates a scenario; --scenario makes no sense here".into(),
        ));
    }
    let cfg = build_config(&args)?;
    let scenario = generate_scenario(&cfg.generator)?;
    match &cfg.out_dir {
        Some(path) => {
            write_scenario_json(&scenario, path)?;
            eprintln!(
                "wrote scenario with {} fog / {} edge nodes to {}",
                scenario.fog_count(),
                scenario.edge_count(),
                path.display()
            );
        }
        None => println!("{}", scenario_json_string(&scenario)),
    }
    Ok(())
}

fn single_algorithm(cfg: &ExperimentConfig<f64>) -> Result<Algorithm, Error> {
    match cfg.algorithms.as_slice() {
        [one] => Ok(*one),
        [] => Ok(Algorithm::Mpa),
        _ if cfg.algorithms == Algorithm::ALL.to_vec() => Ok(Algorithm::Mpa),
        many => Err(Error::InvalidConfig(format!(
            "solve takes exactly one algorithm, got {}",
            many.len()
        ))),
    }
}

fn solve(args: CommonArgs) -> Result<(), Error> {
    let cfg = build_config(&args)?;
    let algorithm = single_algorithm(&cfg)?;
    let scenario = obtain_scenario(&args, &cfg)?;
    let ctx = EvaluationContext::new(scenario.clone(), cfg.omega)?;

    let mut records: Vec<RunRecord64> = Vec::new();
    for &seed in &cfg.seeds {
        let record = run_algorithm(&ctx, algorithm, cfg.budget, seed);
        println!(
            "{algorithm} seed {seed}: f = {:.4}, connected {}/{} fog, covered {}/{} edge, 95% at iteration {}",
            record.final_fitness(),
            record.best.breakdown.zeta,
            record.fog_count,
            record.best.breakdown.phi,
            record.edge_count,
            record.iterations_to_fraction(0.95),
        );
        records.push(record);
    }

    let best = records
        .iter()
        .max_by(|a, b| a.final_fitness().total_cmp(&b.final_fitness()))
        .expect("at least one seed");
    println!(
        "best: seed {} with f = {:.4} (zeta {}%, phi {}%)",
        best.seed,
        best.final_fitness(),
        best.final_zeta_pct(),
        best.final_phi_pct()
    );

    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.clone(),
            source: e,
        })?;
        write_scenario_json(&scenario, &dir.join("scenario.json"))?;
        for record in &records {
            write_convergence_csv(record, &dir.join(convergence_filename(record)))?;
        }
        write_summary_csv(&records, &dir.join("summary.csv"))?;
        let solved = ctx.decode(&best.best.placement)?;
        write_scenario_json(&solved, &dir.join("best_placement.json"))?;
        write_meta_json(&records, &dir.join("meta.json"))?;
        eprintln!("reports written to {}", dir.display());
    }
    Ok(())
}

fn compare(args: CommonArgs) -> Result<(), Error> {
    let cfg = build_config(&args)?;
    let scenario = obtain_scenario(&args, &cfg)?;
    let result = run_comparison_on(&cfg, scenario)?;

    println!("algorithm  median_f  mean_f    zeta%   phi%    iters_to_95");
    for s in &result.summaries {
        println!(
            "{:<9}  {:<8.4}  {:<8.4}  {:<6.2}  {:<6.2}  {}",
            s.algorithm.name(),
            s.median_final_f,
            s.mean_final_f,
            s.mean_zeta_pct,
            s.mean_phi_pct,
            s.median_iters_to_95
        );
    }

    if let Some(dir) = &cfg.out_dir {
        export_comparison(&result, dir)?;
        eprintln!("reports written to {}", dir.display());
    }
    Ok(())
}

fn print_table(table: &SweepTable) {
    println!("{:<12}  connectivity%  coverage%  fitness%", table.axis);
    for r in &table.rows {
        println!(
            "{:<12}  {:<13.2}  {:<9.2}  {:<8.2}",
            r.axis_value, r.connectivity_pct, r.coverage_pct, r.fitness_pct
        );
    }
}

fn write_table(table: &SweepTable, dir: &Path, filename: &str) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    let path = dir.join(filename);
    write_sweep_csv(table, &path)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn omega_study_cmd(args: OmegaArgs) -> Result<(), Error> {
    let cfg = build_config(&args.common)?;
    let scenario = obtain_scenario(&args.common, &cfg)?;
    let table = omega_study_on(&cfg, scenario, &args.omegas)?;
    print_table(&table);
    if let Some(dir) = cfg.out_dir.clone() {
        write_table(&table, &dir, "omega_study.csv")?;
    }
    Ok(())
}

fn sweep_cmd(args: SweepArgs) -> Result<(), Error> {
    if args.common.scenario.is_some() {
        return Err(Error::InvalidConfig(
            "sweep regenerates scenarios per row; --scenario is not applicable".into(),
        ));
    }
    let cfg = build_config(&args.common)?;
    let axis: SweepAxis = args.axis.parse().map_err(Error::InvalidConfig)?;
    let algorithm = single_algorithm(&cfg)?;
    let table = sweep_with_algorithm(&cfg, axis, &args.values, algorithm)?;
    print_table(&table);
    if let Some(dir) = cfg.out_dir.clone() {
        write_table(&table, &dir, &format!("sweep_{}.csv", axis.name()))?;
    }
    Ok(())
}
