//! Experiment engine behind the command-line tool: single trials, parameter
//! sweeps, budget probes, tail-bound checks and maximum-likelihood comparisons.

mod lemma;
mod mle_check;
mod seeds;
mod sweep;
mod trial;

pub use lemma::{run_lemma_check, LemmaReport, LemmaRow};
pub use mle_check::{run_mle_comparison, MleReport, MleTrial, MLE_CHECK_MAX_K, MLE_CHECK_MAX_N};
pub use seeds::derive_seed;
pub use sweep::{
    records_to_csv, records_to_json, run_phase, run_sweep, write_csv, ExperimentRecord, SweepConfig, CSV_HEADER,
};
pub use trial::{run_trial, sample_truth, scaled_seed_config, TrialOutcome};
