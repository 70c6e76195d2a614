//! Report files.
//!
//! Three CSV shapes plus the scenario JSON document. Every byte of these
//! files is a pure function of the producing config and seeds; timestamps
//! and wall times go to a separate metadata sidecar.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lab::experiment::{ComparisonResult, SweepTable};
use crate::model::{EdgeNode, FogNode, Point2D, Scenario};
use crate::scalar::Real;
use crate::search::RunRecord;

/// Canonical convergence file name for a run.
pub fn convergence_filename(record: &RunRecord<impl Real>) -> String {
    format!("convergence_{}_seed{}.csv", record.algorithm, record.seed)
}

/// Per-iteration best-so-far trace: `iter,best_f,zeta,phi`, one row per
/// iteration, `iter` counting from 0.
pub fn write_convergence_csv<F: Real>(record: &RunRecord<F>, path: &Path) -> Result<(), Error> {
    let mut w = writer(path)?;
    let mut emit = || -> std::io::Result<()> {
        writeln!(w, "iter,best_f,zeta,phi")?;
        for (t, p) in record.trace.iter().enumerate() {
            writeln!(w, "{t},{},{},{}", p.best_f, p.zeta, p.phi)?;
        }
        w.flush()
    };
    emit().map_err(|e| Error::io(path, e))
}

/// One row per run: `algorithm,seed,final_f,final_zeta_pct,final_phi_pct,iters_to_95pct`.
pub fn write_summary_csv<F: Real>(records: &[RunRecord<F>], path: &Path) -> Result<(), Error> {
    let mut w = writer(path)?;
    let mut emit = || -> std::io::Result<()> {
        writeln!(w, "algorithm,seed,final_f,final_zeta_pct,final_phi_pct,iters_to_95pct")?;
        for r in records {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.algorithm,
                r.seed,
                r.final_fitness(),
                r.final_zeta_pct(),
                r.final_phi_pct(),
                r.iterations_to_fraction(0.95)
            )?;
        }
        w.flush()
    };
    emit().map_err(|e| Error::io(path, e))
}

/// Aggregated sweep rows: `axis_value,connectivity_pct,coverage_pct,fitness_pct`.
pub fn write_sweep_csv(table: &SweepTable, path: &Path) -> Result<(), Error> {
    let mut w = writer(path)?;
    let mut emit = || -> std::io::Result<()> {
        writeln!(w, "axis_value,connectivity_pct,coverage_pct,fitness_pct")?;
        for row in &table.rows {
            writeln!(
                w,
                "{},{},{},{}",
                row.axis_value, row.connectivity_pct, row.coverage_pct, row.fitness_pct
            )?;
        }
        w.flush()
    };
    emit().map_err(|e| Error::io(path, e))
}

fn writer(path: &Path) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(
        File::create(path).map_err(|e| Error::io(path, e))?,
    ))
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "F: Serialize", deserialize = "F: serde::de::DeserializeOwned"))]
struct ScenarioDoc<F> {
    width: F,
    height: F,
    capacity: Option<usize>,
    fog_nodes: Vec<FogDoc<F>>,
    edge_nodes: Vec<EdgeDoc<F>>,
}

#[derive(Serialize, Deserialize)]
struct FogDoc<F> {
    id: usize,
    x: F,
    y: F,
    range: F,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc<F> {
    id: usize,
    x: F,
    y: F,
}

impl<F: Real> ScenarioDoc<F> {
    fn of(s: &Scenario<F>) -> Self {
        Self {
            width: s.width(),
            height: s.height(),
            capacity: s.capacity(),
            fog_nodes: s
                .fog_nodes()
                .iter()
                .map(|f| FogDoc {
                    id: f.id,
                    x: f.location.x,
                    y: f.location.y,
                    range: f.range,
                })
                .collect(),
            edge_nodes: s
                .edge_nodes()
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id,
                    x: e.location.x,
                    y: e.location.y,
                })
                .collect(),
        }
    }

    fn into_scenario(self) -> Result<Scenario<F>, Error> {
        Scenario::new(
            self.width,
            self.height,
            self.capacity,
            self.fog_nodes
                .into_iter()
                .map(|f| FogNode::new(f.id, Point2D::new(f.x, f.y), f.range))
                .collect(),
            self.edge_nodes
                .into_iter()
                .map(|e| EdgeNode::new(e.id, Point2D::new(e.x, e.y)))
                .collect(),
        )
    }
}

/// The scenario document as a JSON string (pretty, stable field order).
pub fn scenario_json_string<F: Real + Serialize>(s: &Scenario<F>) -> String {
    serde_json::to_string_pretty(&ScenarioDoc::of(s)).expect("scenario serializes")
}

pub fn write_scenario_json<F: Real + Serialize>(s: &Scenario<F>, path: &Path) -> Result<(), Error> {
    let mut w = writer(path)?;
    let json = scenario_json_string(s);
    w.write_all(json.as_bytes())
        .and_then(|_| w.write_all(b"\n"))
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn read_scenario_json<F>(path: &Path) -> Result<Scenario<F>, Error>
where
    F: Real + serde::de::DeserializeOwned,
{
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: ScenarioDoc<F> = serde_json::from_str(&text).map_err(|e| {
        Error::InvalidScenario(format!("{}: {e}", path.display()))
    })?;
    doc.into_scenario()
}

#[derive(Serialize)]
struct RunMeta<'a> {
    algorithm: &'a str,
    seed: u64,
    params: &'a str,
    wall_seconds: f64,
}

/// Non-deterministic reporting data (timestamps, wall times), kept apart
/// from the reproducible reports.
pub fn write_meta_json<F: Real>(records: &[RunRecord<F>], path: &Path) -> Result<(), Error> {
    #[derive(Serialize)]
    struct Meta<'a> {
        created_unix_secs: u64,
        runs: Vec<RunMeta<'a>>,
    }
    let meta = Meta {
        created_unix_secs: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        runs: records
            .iter()
            .map(|r| RunMeta {
                algorithm: r.algorithm.name(),
                seed: r.seed,
                params: &r.params,
                wall_seconds: r.wall_time.as_secs_f64(),
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&meta).expect("meta serializes");
    std::fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
}

/// Writes a full comparison into a directory: the scenario, every run's
/// convergence trace, the per-run summary table, and the metadata sidecar.
pub fn export_comparison<F: Real + Serialize>(
    result: &ComparisonResult<F>,
    dir: &Path,
) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_scenario_json(&result.scenario, &dir.join("scenario.json"))?;
    for record in &result.runs {
        write_convergence_csv(record, &dir.join(convergence_filename(record)))?;
    }
    write_summary_csv(&result.runs, &dir.join("summary.csv"))?;
    write_meta_json(&result.runs, &dir.join("meta.json"))
}
