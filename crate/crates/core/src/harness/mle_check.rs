use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::seeds::derive_seed;
use super::trial::sample_truth;
use crate::analysis::{brute_force_mle, recover_success};
use crate::error::{Error, Result};
use crate::oracle::FaultyOracle;
use crate::recovery::{run_algorithm1, SeedConfig};
use crate::types::{NoiseParams, QueryPlan};

pub const MLE_CHECK_MAX_N: usize = 8;
pub const MLE_CHECK_MAX_K: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MleTrial {
    /// The algorithm's node-0-normalized output is one of the MLE labelings.
    pub agrees: bool,
    pub mle_set_size: usize,
    pub algorithm_recovered_truth: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MleReport {
    pub n: usize,
    pub k: u32,
    pub delta: f64,
    pub trials: Vec<MleTrial>,
}

impl MleReport {
    pub fn agreement_rate(&self) -> f64 {
        self.trials.iter().filter(|t| t.agrees).count() as f64 / self.trials.len() as f64
    }

    /// Fraction of trials whose MLE set is a single labeling.
    pub fn unique_rate(&self) -> f64 {
        self.trials.iter().filter(|t| t.mle_set_size == 1).count() as f64 / self.trials.len() as f64
    }
}

/// Runs the algorithm, then queries every remaining pair of the same oracle and
/// checks the algorithm's answer against the MLE set of the complete transcript.
pub fn run_mle_comparison(
    n: usize,
    params: &NoiseParams,
    cfg: &SeedConfig,
    trials: usize,
    seed: u64,
    noiseless: bool,
) -> Result<MleReport> {
    if n > MLE_CHECK_MAX_N || params.k() > MLE_CHECK_MAX_K {
        return Err(Error::TooLarge(format!(
            "MLE comparison supports n <= {MLE_CHECK_MAX_N} and k <= {MLE_CHECK_MAX_K}, got n = {n}, k = {}",
            params.k()
        )));
    }
    if n < 4 {
        return Err(Error::InvalidInput(format!("need at least 4 nodes, got {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trial_seed = derive_seed(seed, &[n as u64, params.k() as u64, params.delta().to_bits(), trial as u64]);
            let truth = sample_truth(n, params.k(), trial_seed)?;
            let mut oracle = if noiseless {
                FaultyOracle::noiseless(truth.clone(), *params, trial_seed)?
            } else {
                FaultyOracle::new(truth.clone(), *params, trial_seed)?
            };
            let result = run_algorithm1(n, params, cfg, &mut oracle)?;
            let remaining: QueryPlan = QueryPlan::complete(n)
                .iter()
                .filter(|key| !oracle.issued().contains(key))
                .copied()
                .collect();
            oracle.execute_plan(&remaining)?;
            let mle = brute_force_mle(oracle.issued(), n, params)?;
            let normalized = result.labeling.normalized();
            Ok(MleTrial {
                agrees: mle.contains(&normalized),
                mle_set_size: mle.len(),
                algorithm_recovered_truth: recover_success(&result.labeling, &truth)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MleReport { n, k: params.k(), delta: params.delta(), trials: outcomes })
}
