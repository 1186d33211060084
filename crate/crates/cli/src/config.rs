use std::path::Path;

use faultyalign::harness::SweepConfig;
use serde::Deserialize;

/// Flat key/value sweep file. Every key is optional; command-line flags win.
///
/// ```toml
/// n_values = [200, 400]
/// k_values = [4]
/// delta_values = [0.2]
/// constant_c_values = [40.0]
/// trials = 100
/// base_seed = 7
/// budget_scale = 1.0
/// noiseless = false
/// record_timing = false
/// ```
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n_values: Option<Vec<usize>>,
    pub k_values: Option<Vec<u32>>,
    pub delta_values: Option<Vec<f64>>,
    pub constant_c_values: Option<Vec<f64>>,
    pub trials: Option<usize>,
    pub base_seed: Option<u64>,
    pub budget_scale: Option<f64>,
    pub noiseless: Option<bool>,
    pub record_timing: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }

    pub fn apply(self, cfg: &mut SweepConfig) {
        if let Some(v) = self.n_values {
            cfg.n_values = v;
        }
        if let Some(v) = self.k_values {
            cfg.k_values = v;
        }
        if let Some(v) = self.delta_values {
            cfg.delta_values = v;
        }
        if let Some(v) = self.constant_c_values {
            cfg.constant_c_values = v;
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        if let Some(v) = self.base_seed {
            cfg.base_seed = v;
        }
        if self.budget_scale.is_some() {
            cfg.budget_scale = self.budget_scale;
        }
        if let Some(v) = self.noiseless {
            cfg.noiseless = v;
        }
        if let Some(v) = self.record_timing {
            cfg.record_timing = v;
        }
    }
}
