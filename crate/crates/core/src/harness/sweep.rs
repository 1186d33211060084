use std::io::Write;
use std::time::Instant;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::seeds::derive_seed;
use super::trial::{run_trial, scaled_seed_config, TrialOutcome};
use crate::error::{Error, Result};
use crate::recovery::{seed_size, SeedConfig};
use crate::types::NoiseParams;

pub const CSV_HEADER: &str = "n,k,delta,constant_c,seed_size,query_count,trials,successes,mean_hamming,wall_time_seconds";

/// Grid of experiment cells. Every `(n, k, delta, constant_c)` combination is one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub k_values: Vec<u32>,
    pub delta_values: Vec<f64>,
    pub constant_c_values: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    /// Multiplier on the seed size; `None` means 1.
    pub budget_scale: Option<f64>,
    /// Forces zero noise on every query.
    pub noiseless: bool,
    /// Whether to measure wall time. Off by default so outputs are reproducible byte for byte.
    pub record_timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_values: vec![200],
            k_values: vec![4],
            delta_values: vec![0.2],
            constant_c_values: vec![SeedConfig::default().constant_c],
            trials: 100,
            base_seed: 0,
            budget_scale: None,
            noiseless: false,
            record_timing: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let empty = [
            ("n_values", self.n_values.is_empty()),
            ("k_values", self.k_values.is_empty()),
            ("delta_values", self.delta_values.is_empty()),
            ("constant_c_values", self.constant_c_values.is_empty()),
        ];
        if let Some((name, _)) = empty.iter().find(|(_, e)| *e) {
            return Err(Error::InvalidInput(format!("{name} must not be empty")));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        if let Some(scale) = self.budget_scale {
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::InvalidInput(format!("budget scale must be positive, got {scale}")));
            }
        }
        Ok(())
    }
}

/// One row of sweep output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub n: usize,
    pub k: u32,
    pub delta: f64,
    pub constant_c: f64,
    pub seed_size: usize,
    pub query_count: usize,
    pub trials: usize,
    pub successes: usize,
    pub mean_hamming: f64,
    pub wall_time_seconds: f64,
}

impl ExperimentRecord {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

struct Cell {
    n: usize,
    params: NoiseParams,
    cfg: SeedConfig,
    seed_size: usize,
}

fn prepare_cell(n: usize, k: u32, delta: f64, c: f64, scale: Option<f64>) -> Result<Cell> {
    let params = NoiseParams::new(k, delta)?;
    let base = SeedConfig::with_constant(c);
    let cfg = match scale {
        Some(s) => scaled_seed_config(n, &params, &base, s)?,
        None => base,
    };
    let seed_size = seed_size(n, &params, &cfg)?;
    Ok(Cell { n, params, cfg, seed_size })
}

fn cell_words(n: usize, k: u32, delta: f64, c: f64, scale: Option<f64>, trial: usize) -> [u64; 6] {
    [n as u64, k as u64, delta.to_bits(), c.to_bits(), scale.unwrap_or(1.0).to_bits(), trial as u64]
}

/// Runs every valid cell of `config`. Invalid cells are skipped with a warning;
/// an error inside a trial aborts the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    let mut records = Vec::new();
    for &n in &config.n_values {
        for &k in &config.k_values {
            for &delta in &config.delta_values {
                for &c in &config.constant_c_values {
                    let cell = match prepare_cell(n, k, delta, c, config.budget_scale) {
                        Ok(cell) => cell,
                        Err(e) => {
                            warn!("skipping cell n={n} k={k} delta={delta} constant_c={c}: {e}");
                            continue;
                        }
                    };
                    let start = Instant::now();
                    let outcomes = (0..config.trials)
                        .into_par_iter()
                        .map(|trial| {
                            let seed = derive_seed(
                                config.base_seed,
                                &cell_words(n, k, delta, c, config.budget_scale, trial),
                            );
                            run_trial(cell.n, &cell.params, &cell.cfg, seed, config.noiseless)
                        })
                        .collect::<Result<Vec<TrialOutcome>>>()?;
                    let elapsed = start.elapsed().as_secs_f64();
                    let successes = outcomes.iter().filter(|o| o.success).count();
                    let total_hamming: usize = outcomes.iter().map(|o| o.hamming).sum();
                    records.push(ExperimentRecord {
                        n,
                        k,
                        delta,
                        constant_c: c,
                        seed_size: cell.seed_size,
                        query_count: cell.seed_size * (n - cell.seed_size),
                        trials: config.trials,
                        successes,
                        mean_hamming: total_hamming as f64 / config.trials as f64,
                        wall_time_seconds: if config.record_timing { elapsed } else { 0.0 },
                    });
                }
            }
        }
    }
    Ok(records)
}

/// Repeats the sweep once per budget scale, in the given order.
pub fn run_phase(config: &SweepConfig, scales: &[f64]) -> Result<Vec<(f64, Vec<ExperimentRecord>)>> {
    if scales.is_empty() {
        return Err(Error::InvalidInput("need at least one budget scale".into()));
    }
    scales
        .iter()
        .map(|&scale| {
            let cfg = SweepConfig { budget_scale: Some(scale), ..config.clone() };
            run_sweep(&cfg).map(|records| (scale, records))
        })
        .collect()
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer
        .write_record(CSV_HEADER.split(','))
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    for r in records {
        writer.serialize(r).map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn records_to_json(records: &[ExperimentRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}
