use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{hamming_after_best_shift, recover_success};
use crate::error::{Error, Result};
use crate::oracle::FaultyOracle;
use crate::recovery::{run_algorithm1, seed_size, SeedConfig};
use crate::types::{Labeling, NoiseParams};

const TRUTH_SALT: u64 = 0x7472_7574_685f_6c61;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub success: bool,
    pub hamming: usize,
    pub query_count: usize,
}

/// Uniform labels with node 0 pinned to 0.
pub fn sample_truth(n: usize, k: u32, seed: u64) -> Result<Labeling> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ TRUTH_SALT);
    let mut labels: Vec<u32> = (0..n).map(|_| rng.random_range(0..k)).collect();
    if let Some(first) = labels.first_mut() {
        *first = 0;
    }
    Labeling::new(labels, k)
}

/// Seed configuration whose size is `ceil(scale * seed_size)`, at least 1.
pub fn scaled_seed_config(n: usize, params: &NoiseParams, cfg: &SeedConfig, scale: f64) -> Result<SeedConfig> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidInput(format!("budget scale must be positive, got {scale}")));
    }
    let base = seed_size(n, params, cfg)?;
    let size = ((base as f64 * scale).ceil() as usize).clamp(1, n / 2);
    Ok(SeedConfig { explicit_size: Some(size), ..*cfg })
}

/// One recovery attempt on a fresh random instance.
pub fn run_trial(
    n: usize,
    params: &NoiseParams,
    cfg: &SeedConfig,
    trial_seed: u64,
    noiseless: bool,
) -> Result<TrialOutcome> {
    let truth = sample_truth(n, params.k(), trial_seed)?;
    let mut oracle = if noiseless {
        FaultyOracle::noiseless(truth.clone(), *params, trial_seed)?
    } else {
        FaultyOracle::new(truth.clone(), *params, trial_seed)?
    };
    let result = run_algorithm1(n, params, cfg, &mut oracle)?;
    Ok(TrialOutcome {
        success: recover_success(&result.labeling, &truth)?,
        hamming: hamming_after_best_shift(&result.labeling, &truth)?,
        query_count: result.query_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_trial() {
        let p = NoiseParams::new(5, 0.1).unwrap();
        let cfg = SeedConfig::default();
        let out = run_trial(50, &p, &cfg, 3, true).unwrap();
        let s = seed_size(50, &p, &cfg).unwrap();
        assert_eq!(out, TrialOutcome { success: true, hamming: 0, query_count: s * (50 - s) });
    }

    #[test]
    fn trial_is_deterministic() {
        let p = NoiseParams::new(3, 0.3).unwrap();
        let cfg = SeedConfig::with_constant(2.0);
        let a = run_trial(120, &p, &cfg, 77, false).unwrap();
        let b = run_trial(120, &p, &cfg, 77, false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn truth_is_pinned_and_in_range() {
        let g = sample_truth(40, 6, 9).unwrap();
        assert_eq!(g.get(0), 0);
        assert!(g.labels().iter().any(|&l| l != 0));
        assert_eq!(g, sample_truth(40, 6, 9).unwrap());
    }

    #[test]
    fn scaled_config() {
        let p = NoiseParams::new(2, 0.05).unwrap();
        let cfg = SeedConfig::default();
        assert_eq!(scaled_seed_config(500, &p, &cfg, 1.0).unwrap().explicit_size, Some(250));
        assert_eq!(scaled_seed_config(500, &p, &cfg, 0.01).unwrap().explicit_size, Some(3));
        assert_eq!(scaled_seed_config(500, &p, &cfg, 1e-9).unwrap().explicit_size, Some(1));
        assert!(scaled_seed_config(500, &p, &cfg, 0.0).is_err());
    }
}
