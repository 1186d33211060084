//! Seed-based non-adaptive recovery.
//!
//! A seed set `S` is queried against every node outside it. Seed labels are
//! reconciled to a common shift by voting on differences of answers through the
//! non-seed nodes, then every non-seed node takes the plurality of
//! `seed_label(s) + f(v, s)` over the seed.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::FaultyOracle;
use crate::types::{Labeling, NoiseParams, QueryPlan, QueryTranscript};

/// Hidden constants of the seed-size formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedConfig {
    pub constant_c: f64,
    pub min_seed: usize,
    pub explicit_size: Option<usize>,
}

impl Default for SeedConfig {
    fn default() -> Self {
        Self { constant_c: 40.0, min_seed: 1, explicit_size: None }
    }
}

impl SeedConfig {
    pub fn with_constant(constant_c: f64) -> Self {
        Self { constant_c, ..Self::default() }
    }

    pub fn with_explicit_size(size: usize) -> Self {
        Self { explicit_size: Some(size), ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryResult {
    pub labeling: Labeling,
    pub seed: Vec<usize>,
    pub query_count: usize,
    /// Winning vote count minus runner-up count per node. `None` for the anchor,
    /// whose label is fixed rather than voted.
    pub per_node_margin: Vec<Option<u32>>,
}

/// `(ln n / (n k))^{1/4}`: below this bias the seed cannot be reconciled reliably.
pub fn validity_threshold(n: usize, k: u32) -> f64 {
    let n = n as f64;
    (n.ln() / (n * k as f64)).powf(0.25)
}

pub fn in_validity_regime(n: usize, params: &NoiseParams) -> bool {
    params.delta() >= validity_threshold(n, params.k())
}

/// Size of the seed set for `n` nodes.
///
/// `ceil(c ln n / (k delta^2))` when `delta <= 1/(2k)`, otherwise
/// `ceil(c ln n / delta)`; floored at `min_seed` and clamped to `n/2`.
pub fn seed_size(n: usize, params: &NoiseParams, cfg: &SeedConfig) -> Result<usize> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("need at least 4 nodes, got {n}")));
    }
    if !(cfg.constant_c > 0.0 && cfg.constant_c.is_finite()) {
        return Err(Error::InvalidInput(format!("constant_c must be positive, got {}", cfg.constant_c)));
    }
    if cfg.min_seed == 0 {
        return Err(Error::InvalidInput("min_seed must be at least 1".into()));
    }
    if let Some(size) = cfg.explicit_size {
        if size == 0 || size > n / 2 {
            return Err(Error::InvalidInput(format!(
                "explicit seed size {size} must lie in [1, {}]",
                n / 2
            )));
        }
        return Ok(size);
    }
    if !in_validity_regime(n, params) {
        warn!(
            "delta = {} is below the validity threshold {:.4} for n = {n}, k = {}; recovery is not expected to succeed",
            params.delta(),
            validity_threshold(n, params.k()),
            params.k()
        );
    }
    let ln_n = (n as f64).ln();
    let (k, delta) = (params.k() as f64, params.delta());
    let raw = if params.is_small_bias() {
        cfg.constant_c * ln_n / (k * delta * delta)
    } else {
        cfg.constant_c * ln_n / delta
    };
    let size = (raw.ceil() as usize).max(cfg.min_seed).min(n / 2);
    Ok(size)
}

/// Bias of the difference of two independent noise draws: `k delta^2 / (k-1)`.
pub fn effective_bias(params: &NoiseParams) -> f64 {
    let k = params.k() as f64;
    k * params.delta() * params.delta() / (k - 1.0)
}

/// Winner and margin over `0..k`; ties go to the smallest label.
fn tally<I: IntoIterator<Item = u32>>(values: I, k: u32) -> Result<(u32, u32)> {
    let mut counts = vec![0u32; k as usize];
    let mut total = 0usize;
    for v in values {
        let slot = counts
            .get_mut(v as usize)
            .ok_or(Error::AnswerOutOfRange { answer: v, k })?;
        *slot += 1;
        total += 1;
    }
    if total == 0 {
        return Err(Error::EmptyVote);
    }
    let mut best = 0usize;
    for (label, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = label;
        }
    }
    let runner_up = counts
        .iter()
        .enumerate()
        .filter(|&(label, _)| label != best)
        .map(|(_, &c)| c)
        .max()
        .unwrap_or(0);
    Ok((best as u32, counts[best] - runner_up))
}

/// Most frequent label; ties broken by the smallest label.
pub fn plurality(values: &[u32], k: u32) -> Result<u32> {
    tally(values.iter().copied(), k).map(|(label, _)| label)
}

fn pairwise_vote(t: &QueryTranscript, s: usize, s_prime: usize, others: &[usize]) -> Result<(u32, u32)> {
    if s == s_prime {
        return Err(Error::IdentityPair(s));
    }
    if others.is_empty() {
        return Err(Error::EmptyVote);
    }
    let k = t.k();
    let votes = others
        .iter()
        .map(|&b| Ok((t.lookup_oriented(s, b)? + k - t.lookup_oriented(s_prime, b)?) % k))
        .collect::<Result<Vec<u32>>>()?;
    tally(votes, k)
}

/// Plurality over `b` of `(f(s, b) - f(s', b)) mod k`, an estimate of `g(s) - g(s')`.
pub fn estimate_pairwise_diff(t: &QueryTranscript, s: usize, s_prime: usize, others: &[usize]) -> Result<u32> {
    pairwise_vote(t, s, s_prime, others).map(|(label, _)| label)
}

/// Labels for the seed, in seed order. The first seed node is the anchor and
/// gets label 0; each other seed node gets its estimated difference to the anchor.
pub fn align_seed(t: &QueryTranscript, seed: &[usize], rest: &[usize]) -> Result<Vec<u32>> {
    align_seed_with_margins(t, seed, rest).map(|(labels, _)| labels)
}

fn align_seed_with_margins(
    t: &QueryTranscript,
    seed: &[usize],
    rest: &[usize],
) -> Result<(Vec<u32>, Vec<Option<u32>>)> {
    let (&anchor, others) = seed
        .split_first()
        .ok_or_else(|| Error::InvalidInput("seed must contain at least one node".into()))?;
    if rest.is_empty() {
        return Err(Error::InvalidInput("no nodes outside the seed".into()));
    }
    let mut labels = Vec::with_capacity(seed.len());
    let mut margins = Vec::with_capacity(seed.len());
    labels.push(0);
    margins.push(None);
    for &s in others {
        let (label, margin) = pairwise_vote(t, s, anchor, rest)?;
        labels.push(label);
        margins.push(Some(margin));
    }
    Ok((labels, margins))
}

/// Completes a labeling from seed labels: every target `v` takes the plurality
/// over `s` of `(seed_label(s) + f(v, s)) mod k`. Nodes that are neither seed
/// nor target keep label 0.
pub fn extend_labels(
    t: &QueryTranscript,
    seed: &[usize],
    seed_labels: &[u32],
    targets: &[usize],
) -> Result<Labeling> {
    extend_with_margins(t, seed, seed_labels, targets).map(|(labeling, _)| labeling)
}

fn extend_with_margins(
    t: &QueryTranscript,
    seed: &[usize],
    seed_labels: &[u32],
    targets: &[usize],
) -> Result<(Labeling, Vec<Option<u32>>)> {
    if seed.len() != seed_labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} seed nodes but {} seed labels",
            seed.len(),
            seed_labels.len()
        )));
    }
    if seed.is_empty() {
        return Err(Error::EmptyVote);
    }
    let (n, k) = (t.n(), t.k());
    let mut labels = vec![0u32; n];
    let mut margins = vec![None; n];
    for (&s, &l) in seed.iter().zip(seed_labels) {
        if s >= n {
            return Err(Error::NodeOutOfRange { node: s, n });
        }
        if l >= k {
            return Err(Error::AnswerOutOfRange { answer: l, k });
        }
        labels[s] = l;
    }
    for &v in targets {
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
        let votes = seed
            .iter()
            .zip(seed_labels)
            .map(|(&s, &l)| Ok((l + t.lookup_oriented(v, s)?) % k))
            .collect::<Result<Vec<u32>>>()?;
        let (label, margin) = tally(votes, k)?;
        labels[v] = label;
        margins[v] = Some(margin);
    }
    Ok((Labeling::new(labels, k)?, margins))
}

/// The seed `{0, .., s-1}` and the complement, for `n` nodes.
pub fn partition(n: usize, seed_len: usize) -> (Vec<usize>, Vec<usize>) {
    ((0..seed_len).collect(), (seed_len..n).collect())
}

/// Every query the algorithm will make. Depends only on `(n, params, cfg)`.
pub fn plan_queries(n: usize, params: &NoiseParams, cfg: &SeedConfig) -> Result<QueryPlan> {
    let s = seed_size(n, params, cfg)?;
    let (seed, rest) = partition(n, s);
    Ok(QueryPlan::bipartite(&seed, &rest))
}

/// Runs the full algorithm against a fresh oracle.
pub fn run_algorithm1(
    n: usize,
    params: &NoiseParams,
    cfg: &SeedConfig,
    oracle: &mut FaultyOracle,
) -> Result<RecoveryResult> {
    if oracle.n() != n {
        return Err(Error::DimensionMismatch(format!("oracle holds {} nodes, expected {n}", oracle.n())));
    }
    if oracle.params().k() != params.k() {
        return Err(Error::DimensionMismatch("oracle and params disagree on k".into()));
    }
    if oracle.query_count() != 0 {
        return Err(Error::InvalidInput("oracle has already answered queries".into()));
    }
    let s = seed_size(n, params, cfg)?;
    if s >= n {
        return Err(Error::InvalidInput(format!("seed size {s} leaves no other nodes")));
    }
    let (seed, rest) = partition(n, s);
    let plan = QueryPlan::bipartite(&seed, &rest);
    let transcript = oracle.execute_plan(&plan)?;

    let (seed_labels, seed_margins) = align_seed_with_margins(&transcript, &seed, &rest)?;
    let (labeling, mut margins) = extend_with_margins(&transcript, &seed, &seed_labels, &rest)?;
    for (&s, m) in seed.iter().zip(seed_margins) {
        margins[s] = m;
    }
    Ok(RecoveryResult { labeling, seed, query_count: transcript.len(), per_node_margin: margins })
}
