//! Fixtures shared by the criterion benchmarks.

use faultyalign::harness::sample_truth;
use faultyalign::{FaultyOracle, Labeling, NoiseParams};

/// A fresh oracle over a random instance with node 0 pinned to label 0.
pub fn oracle(n: usize, k: u32, delta: f64, seed: u64) -> (Labeling, FaultyOracle) {
    let params = NoiseParams::new(k, delta).expect("valid benchmark parameters");
    let truth = sample_truth(n, k, seed).expect("valid benchmark instance");
    let oracle = FaultyOracle::new(truth.clone(), params, seed).expect("matching k");
    (truth, oracle)
}
