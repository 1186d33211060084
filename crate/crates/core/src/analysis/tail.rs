//! Tail of a sum of i.i.d. votes in `{-1, 0, +1}`.
//!
//! Each vote is `+1` with probability `1/k + delta`, `-1` with probability
//! `1/k - delta/(k-1)` and `0` otherwise. This is the per-label contest inside
//! a plurality vote: the correct label against one specific wrong label.

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::NoiseParams;

/// Largest vote count accepted by the exact evaluator.
pub const TAIL_DP_LIMIT: usize = 100_000;

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailSpec {
    vote_count: usize,
    params: NoiseParams,
}

impl TailSpec {
    pub fn new(vote_count: usize, params: NoiseParams) -> Result<Self> {
        if vote_count == 0 {
            return Err(Error::InvalidInput("vote count must be at least 1".into()));
        }
        Ok(Self { vote_count, params })
    }

    pub fn vote_count(&self) -> usize {
        self.vote_count
    }

    pub fn params(&self) -> &NoiseParams {
        &self.params
    }

    /// `(Pr[+1], Pr[-1])` for a single vote.
    pub fn step_probs(&self) -> (f64, f64) {
        (self.params.p_zero(), self.params.p_other())
    }
}

/// `Pr[sum <= 0]` by dynamic programming over the support `-n..=n`.
///
/// Uses `O(n^2)` additions of non-negative terms, so the absolute rounding
/// error is bounded by roughly `n^2` machine epsilons relative to 1.
pub fn tail_probability_exact(spec: &TailSpec) -> Result<f64> {
    let n = spec.vote_count;
    if n > TAIL_DP_LIMIT {
        return Err(Error::TooLarge(format!("vote count {n} exceeds {TAIL_DP_LIMIT}")));
    }
    let (up, down) = spec.step_probs();
    let stay = (1.0 - up - down).max(0.0);
    // dist[i] = Pr[sum = i - n]
    let mut dist = vec![0.0f64; 2 * n + 1];
    let mut next = vec![0.0f64; 2 * n + 1];
    dist[n] = 1.0;
    for step in 0..n {
        let (lo, hi) = (n - step, n + step);
        next[lo - 1..=hi + 1].iter_mut().for_each(|x| *x = 0.0);
        for i in lo..=hi {
            let mass = dist[i];
            next[i + 1] += up * mass;
            next[i - 1] += down * mass;
            next[i] += stay * mass;
        }
        std::mem::swap(&mut dist, &mut next);
    }
    Ok(dist[..=n].iter().sum::<f64>().min(1.0))
}

/// Monte Carlo estimate with its 99% normal-approximation half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub half_width: f64,
    pub trials: u64,
}

impl McEstimate {
    pub fn covers(&self, value: f64) -> bool {
        (self.estimate - value).abs() <= self.half_width
    }
}

/// Empirical frequency of `sum <= 0` over `trials` independent sums.
///
/// Each sum is drawn through its counts: `N+ ~ Bin(n, p+)`, then
/// `N- ~ Bin(n - N+, p- / (1 - p+))`.
pub fn tail_probability_mc<R: Rng + ?Sized>(spec: &TailSpec, trials: u64, rng: &mut R) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let n = spec.vote_count as u64;
    let (up, down) = spec.step_probs();
    let up_dist = Binomial::new(n, up.min(1.0)).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let down_given_not_up = if up < 1.0 { (down / (1.0 - up)).clamp(0.0, 1.0) } else { 0.0 };
    let mut hits = 0u64;
    for _ in 0..trials {
        let ups = up_dist.sample(rng);
        let rest = n - ups;
        let downs = if rest == 0 || down_given_not_up == 0.0 {
            0
        } else {
            Binomial::new(rest, down_given_not_up)
                .map_err(|e| Error::InvalidInput(e.to_string()))?
                .sample(rng)
        };
        if ups <= downs {
            hits += 1;
        }
    }
    let estimate = hits as f64 / trials as f64;
    let half_width = Z_99 * (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(McEstimate { estimate, half_width, trials })
}
