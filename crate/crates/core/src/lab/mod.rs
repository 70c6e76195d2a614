//! Scenario generation, experiment orchestration, and report files.
//!
//! Everything here is reproducible: a config plus its seed list fully
//! determines every output byte. Wall-clock data goes to a metadata
//! sidecar, never into the CSV/JSON reports.

mod export;
mod gen;
mod experiment;

pub use experiment::{
    omega_study, omega_study_on, run_algorithm, run_comparison, run_comparison_on, sweep,
    sweep_with_algorithm, AlgorithmSummary, ComparisonResult, ExperimentConfig, OptimizerBudget,
    SweepAxis, SweepRow, SweepTable,
};
pub use export::{
    convergence_filename, export_comparison, read_scenario_json, scenario_json_string,
    write_convergence_csv, write_meta_json, write_scenario_json, write_summary_csv,
    write_sweep_csv,
};
pub use gen::{generate_scenario, GeneratorSpec, RangeSpec};
