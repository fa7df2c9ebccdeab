//! CSV and JSON artifacts for runs and sweeps.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::LabelPermutation;
use crate::harness::{OrderingCheck, RunRecord, SweepSummary, TrainConfig, REFERENCE_TABLE};
use crate::pmf::Pmf;

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidInput(format!("csv: {other:?}")),
    }
}

/// Per-epoch metrics, the initial state first as epoch 0.
pub fn write_run_csv<W: Write>(record: &RunRecord, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for metrics in record.trace() {
        writer.serialize(metrics).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

/// Everything needed to replay a run and inspect its result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSidecar {
    pub config: TrainConfig,
    pub seed: u64,
    pub target_pmf: Pmf,
    pub init_pmf: Pmf,
    pub final_pmf: Pmf,
    pub final_params: Vec<f64>,
    pub permutation: LabelPermutation,
    pub final_rel_entropy: f64,
    pub min_rel_entropy: f64,
}

impl RunSidecar {
    pub fn new(config: &TrainConfig, record: &RunRecord) -> Self {
        Self {
            config: config.clone(),
            seed: record.seed,
            target_pmf: record.target_pmf.clone(),
            init_pmf: record.init_pmf.clone(),
            final_pmf: record.final_pmf.clone(),
            final_params: record.final_circuit.params().to_vec(),
            permutation: record.final_circuit.permutation().clone(),
            final_rel_entropy: record.final_rel_entropy(),
            min_rel_entropy: record.min_rel_entropy(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_reader(std::io::BufReader::new(File::open(path)?))?)
    }
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    data: &'a str,
    init: &'a str,
    k: usize,
    mean: f64,
    std: f64,
    min: f64,
}

/// Table-shaped summary: data, init, k, mean, std, min.
pub fn write_summary_csv<W: Write>(summary: &SweepSummary, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for c in &summary.cells {
        writer
            .serialize(SummaryRow {
                data: &c.data,
                init: c.init.name(),
                k: c.k,
                mean: c.mean,
                std: c.std,
                min: c.min,
            })
            .map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct DetailRow<'a> {
    data: &'a str,
    init: &'a str,
    k: usize,
    runs_ok: usize,
    runs_failed: usize,
    mean: f64,
    std: f64,
    min: f64,
    best_mean: f64,
    best_std: f64,
    best_min: f64,
    initial_rel_entropy: f64,
    reference_mean: Option<f64>,
    reference_min: Option<f64>,
}

/// Summary plus best-epoch statistics, failures and the published values.
pub fn write_details_csv<W: Write>(summary: &SweepSummary, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for c in &summary.cells {
        let reference = REFERENCE_TABLE
            .iter()
            .find(|r| r.0 == c.data && r.1 == c.init && r.2 == c.k);
        writer
            .serialize(DetailRow {
                data: &c.data,
                init: c.init.name(),
                k: c.k,
                runs_ok: c.runs_ok,
                runs_failed: c.runs_failed,
                mean: c.mean,
                std: c.std,
                min: c.min,
                best_mean: c.best_mean,
                best_std: c.best_std,
                best_min: c.best_min,
                initial_rel_entropy: c.initial_rel_entropy,
                reference_mean: reference.map(|r| r.3),
                reference_min: reference.map(|r| r.5),
            })
            .map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

/// Human-readable ordering report; returns whether every expected check held.
pub fn write_ordering_report<W: Write>(checks: &[OrderingCheck], mut out: W) -> Result<bool> {
    let mut all_ok = true;
    for c in checks {
        let verdict = match (c.expected_to_hold, c.holds) {
            (true, true) => "PASS",
            (true, false) => {
                all_ok = false;
                "FAIL"
            }
            (false, true) => "pass (not required)",
            (false, false) => "fail (not required)",
        };
        writeln!(
            out,
            "{verdict}: {} k={} {}: {} {:.5} < {} {:.5}",
            c.data,
            c.k,
            c.statistic,
            c.winner.name(),
            c.winner_value,
            c.loser.name(),
            c.loser_value
        )?;
    }
    Ok(all_ok)
}
