use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{Labeling, NoiseParams, QueryTranscript};

/// Largest number of labelings `brute_force_mle` will enumerate.
pub const MLE_ENUMERATION_LIMIT: u64 = 10_000_000;

/// Transcript pairs split by whether a labeling explains them with zero noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LikelihoodSplit {
    pub agree: usize,
    pub disagree: usize,
}

fn check_compatible(t: &QueryTranscript, g: &Labeling) -> Result<()> {
    if t.k() != g.k() || t.n() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "transcript is (n = {}, k = {}) but labeling is (n = {}, k = {})",
            t.n(),
            t.k(),
            g.n(),
            g.k()
        )));
    }
    Ok(())
}

fn agreements(t: &QueryTranscript, labels: &[u32], k: u32) -> usize {
    t.iter()
        .filter(|(key, a)| (labels[key.i()] + k - labels[key.j()]) % k == *a)
        .count()
}

pub fn likelihood_split(t: &QueryTranscript, g: &Labeling) -> Result<LikelihoodSplit> {
    check_compatible(t, g)?;
    let agree = agreements(t, g.labels(), g.k());
    Ok(LikelihoodSplit { agree, disagree: t.len() - agree })
}

/// `ln Pr[answers | g] = agree ln(1/k + delta) + disagree ln(1/k - delta/(k-1))`.
pub fn log_likelihood(t: &QueryTranscript, g: &Labeling, params: &NoiseParams) -> Result<f64> {
    if params.k() != g.k() {
        return Err(Error::DimensionMismatch("noise and labeling disagree on k".into()));
    }
    let split = likelihood_split(t, g)?;
    let mut ll = split.agree as f64 * params.p_zero().ln();
    if split.disagree > 0 {
        let p_other = params.p_other();
        if p_other <= 0.0 {
            return Err(Error::DegenerateLikelihood(format!(
                "{} pairs disagree but delta = (k-1)/k makes them impossible",
                split.disagree
            )));
        }
        ll += split.disagree as f64 * p_other.ln();
    }
    Ok(ll)
}

/// Every maximum-likelihood labeling with node 0 pinned to label 0, in
/// lexicographic order.
///
/// For any admissible bias a zero-noise pair is strictly more likely than a
/// given non-zero one, so the likelihood is maximized exactly where the number
/// of agreeing pairs is; comparing integer counts keeps ties exact.
pub fn brute_force_mle(t: &QueryTranscript, n: usize, params: &NoiseParams) -> Result<Vec<Labeling>> {
    let k = params.k();
    if t.n() != n || t.k() != k {
        return Err(Error::DimensionMismatch(format!(
            "transcript is (n = {}, k = {}), expected (n = {n}, k = {k})",
            t.n(),
            t.k()
        )));
    }
    let count = (k as u64).checked_pow((n - 1) as u32);
    match count {
        Some(c) if c <= MLE_ENUMERATION_LIMIT => {}
        _ => {
            return Err(Error::TooLarge(format!(
                "{k}^{} labelings exceeds the enumeration limit of {MLE_ENUMERATION_LIMIT}",
                n - 1
            )))
        }
    }

    let mut labels = vec![0u32; n];
    let mut best = 0usize;
    let mut winners: Vec<Vec<u32>> = Vec::new();
    loop {
        let agree = agreements(t, &labels, k);
        if agree > best || winners.is_empty() {
            best = agree;
            winners.clear();
        }
        if agree == best {
            winners.push(labels.clone());
        }
        // odometer over nodes 1..n, last node fastest
        let mut pos = n - 1;
        loop {
            if pos == 0 {
                return winners.into_iter().map(|l| Labeling::new(l, k)).collect();
            }
            labels[pos] += 1;
            if labels[pos] < k {
                break;
            }
            labels[pos] = 0;
            pos -= 1;
        }
    }
}
