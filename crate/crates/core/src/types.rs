//! Domain types shared by the oracle, the recovery algorithm and the analysis tools.
//!
//! Labels are non-negative residues in `0..k`; nodes are dense indices in `0..n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the zero-biased noise law over `Z_k`.
///
/// A noise draw is `0` with probability `1/k + delta` and each non-zero residue
/// with probability `1/k - delta/(k-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    k: u32,
    delta: f64,
}

impl NoiseParams {
    pub fn new(k: u32, delta: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!("k must be at least 2, got {k}")));
        }
        let max = Self::max_delta(k);
        if !delta.is_finite() || delta <= 0.0 || delta > max + 1e-12 {
            return Err(Error::InvalidParams(format!(
                "delta must lie in (0, {max}] for k = {k}, got {delta}"
            )));
        }
        Ok(Self { k, delta: delta.min(max) })
    }

    /// Largest admissible bias, `(k-1)/k`, at which the noise is identically zero.
    pub fn max_delta(k: u32) -> f64 {
        (k - 1) as f64 / k as f64
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Probability that a noise draw is zero.
    pub fn p_zero(&self) -> f64 {
        1.0 / self.k as f64 + self.delta
    }

    /// Probability of each individual non-zero residue.
    pub fn p_other(&self) -> f64 {
        (1.0 / self.k as f64 - self.delta / (self.k - 1) as f64).max(0.0)
    }

    /// `delta <= 1/(2k)`: the regime where seed sizes scale with `1/(k delta^2)`.
    pub fn is_small_bias(&self) -> bool {
        self.delta <= 1.0 / (2.0 * self.k as f64)
    }
}

/// An assignment of every node to a label in `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    labels: Vec<u32>,
    k: u32,
}

impl Labeling {
    pub fn new(labels: Vec<u32>, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidLabeling(format!("k must be at least 2, got {k}")));
        }
        if labels.len() < 2 {
            return Err(Error::InvalidLabeling(format!(
                "need at least 2 nodes, got {}",
                labels.len()
            )));
        }
        if let Some((v, &l)) = labels.iter().enumerate().find(|(_, &l)| l >= k) {
            return Err(Error::InvalidLabeling(format!("label {l} at node {v} is not below k = {k}")));
        }
        Ok(Self { labels, k })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn get(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn into_labels(self) -> Vec<u32> {
        self.labels
    }

    /// Adds `alpha` to every label modulo `k`.
    pub fn shift(&self, alpha: u32) -> Result<Self> {
        shift_labeling(self, alpha)
    }

    /// Shifts so that node 0 carries label 0.
    pub fn normalized(&self) -> Self {
        let alpha = (self.k - self.labels[0]) % self.k;
        shift_labeling(self, alpha).expect("alpha is reduced mod k")
    }
}

/// Returns `h` with `h(v) = (g(v) + alpha) mod k`.
pub fn shift_labeling(g: &Labeling, alpha: u32) -> Result<Labeling> {
    if alpha >= g.k {
        return Err(Error::InvalidInput(format!("shift {alpha} is not below k = {}", g.k)));
    }
    let labels = g.labels.iter().map(|&l| (l + alpha) % g.k).collect();
    Ok(Labeling { labels, k: g.k })
}

/// An unordered node pair stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QueryKey {
    i: usize,
    j: usize,
}

impl QueryKey {
    /// Builds the canonical key for `{x, y}` regardless of argument order.
    pub fn new(x: usize, y: usize) -> Result<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(Self { i: x, j: y }),
            std::cmp::Ordering::Greater => Ok(Self { i: y, j: x }),
            std::cmp::Ordering::Equal => Err(Error::IdentityPair(x)),
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }
}

/// A set of pairs to query, fixed before any answer is seen.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryPlan {
    pairs: BTreeSet<QueryKey>,
}

impl QueryPlan {
    pub fn new() -> Self {
        Self::default()
    }

    /// All pairs between `left` and `right`. Overlapping nodes are skipped.
    pub fn bipartite(left: &[usize], right: &[usize]) -> Self {
        let pairs = left
            .iter()
            .flat_map(|&a| right.iter().filter_map(move |&b| QueryKey::new(a, b).ok()))
            .collect();
        Self { pairs }
    }

    /// Every pair of `0..n`.
    pub fn complete(n: usize) -> Self {
        let pairs = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| QueryKey { i, j }))
            .collect();
        Self { pairs }
    }

    /// Returns `false` if the pair was already present.
    pub fn insert(&mut self, key: QueryKey) -> bool {
        self.pairs.insert(key)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, key: &QueryKey) -> bool {
        self.pairs.contains(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = &QueryKey> {
        self.pairs.iter()
    }
}

impl FromIterator<QueryKey> for QueryPlan {
    fn from_iter<T: IntoIterator<Item = QueryKey>>(iter: T) -> Self {
        Self { pairs: iter.into_iter().collect() }
    }
}

/// Oracle answers keyed by unordered pair. The answer stored for `(i, j)`,
/// `i < j`, is `f(i, j) = (g(i) - g(j) + noise) mod k`; the reverse direction is
/// its negation. Each pair is stored at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryTranscript {
    n: usize,
    k: u32,
    answers: BTreeMap<QueryKey, u32>,
}

impl QueryTranscript {
    pub fn new(n: usize, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
        }
        if n < 2 {
            return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
        }
        Ok(Self { n, k, answers: BTreeMap::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.answers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.answers.is_empty()
    }

    pub fn contains(&self, key: &QueryKey) -> bool {
        self.answers.contains_key(key)
    }

    /// Records the canonical-orientation answer for `key`. Re-inserting a key is rejected.
    pub fn insert(&mut self, key: QueryKey, answer: u32) -> Result<()> {
        if key.j >= self.n {
            return Err(Error::NodeOutOfRange { node: key.j, n: self.n });
        }
        if answer >= self.k {
            return Err(Error::AnswerOutOfRange { answer, k: self.k });
        }
        match self.answers.entry(key) {
            std::collections::btree_map::Entry::Occupied(_) => Err(Error::RepeatQuery(key.i, key.j)),
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(answer);
                Ok(())
            }
        }
    }

    /// The stored answer for `key` in canonical orientation.
    pub fn get(&self, key: &QueryKey) -> Option<u32> {
        self.answers.get(key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (QueryKey, u32)> + '_ {
        self.answers.iter().map(|(&key, &a)| (key, a))
    }

    /// `f(x, y)`: the stored answer when `x < y`, otherwise its negation mod `k`.
    pub fn lookup_oriented(&self, x: usize, y: usize) -> Result<u32> {
        let key = QueryKey::new(x, y)?;
        let a = self.get(&key).ok_or(Error::MissingPair(x, y))?;
        Ok(if x < y { a } else { (self.k - a) % self.k })
    }

    /// Line format: a `k=<k>,n=<n>` header, then one `i,j,answer` line per pair in key order.
    pub fn to_text(&self) -> String {
        let mut out = format!("k={},n={}\n", self.k, self.n);
        for (key, a) in &self.answers {
            writeln!(out, "{},{},{}", key.i, key.j, a).expect("writing to a String");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let (k, n) = parse_header(header)?;
        let mut t = Self::new(n, k)?;
        for (lineno, line) in lines.enumerate() {
            let fields: Vec<&str> = line.trim().split(',').collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected i,j,answer", lineno + 2)));
            }
            let num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 2)))
            };
            let (i, j, a) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
            if i >= j {
                return Err(Error::Parse(format!("line {}: expected i < j", lineno + 2)));
            }
            let answer = u32::try_from(a).map_err(|e| Error::Parse(e.to_string()))?;
            t.insert(QueryKey { i, j }, answer)?;
        }
        Ok(t)
    }
}

fn parse_header(header: &str) -> Result<(u32, usize)> {
    let mut k = None;
    let mut n = None;
    for part in header.trim().split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field {part:?}")))?;
        match name.trim() {
            "k" => k = value.trim().parse::<u32>().ok(),
            "n" => n = value.trim().parse::<usize>().ok(),
            other => return Err(Error::Parse(format!("unknown header field {other:?}"))),
        }
    }
    match (k, n) {
        (Some(k), Some(n)) => Ok((k, n)),
        _ => Err(Error::Parse(format!("header must be k=<k>,n=<n>, got {header:?}"))),
    }
}
