use crate::error::{Error, Result};
use crate::types::Labeling;

fn check_dims(estimate: &Labeling, truth: &Labeling) -> Result<()> {
    if estimate.n() != truth.n() || estimate.k() != truth.k() {
        return Err(Error::DimensionMismatch(format!(
            "estimate is (n = {}, k = {}) but truth is (n = {}, k = {})",
            estimate.n(),
            estimate.k(),
            truth.n(),
            truth.k()
        )));
    }
    Ok(())
}

/// True iff `estimate` equals `truth` up to a global cyclic shift.
pub fn recover_success(estimate: &Labeling, truth: &Labeling) -> Result<bool> {
    check_dims(estimate, truth)?;
    let k = truth.k();
    // the only candidate shift is the one that matches node 0
    let alpha = (estimate.get(0) + k - truth.get(0)) % k;
    Ok(estimate
        .labels()
        .iter()
        .zip(truth.labels())
        .all(|(&e, &t)| e == (t + alpha) % k))
}

/// Fewest mismatches over all global shifts of `truth`.
pub fn hamming_after_best_shift(estimate: &Labeling, truth: &Labeling) -> Result<usize> {
    check_dims(estimate, truth)?;
    let k = truth.k();
    let mut matches = vec![0usize; k as usize];
    for (&e, &t) in estimate.labels().iter().zip(truth.labels()) {
        matches[((e + k - t) % k) as usize] += 1;
    }
    Ok(truth.n() - matches.into_iter().max().unwrap_or(0))
}
