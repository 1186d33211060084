//! Simulated faulty oracle.
//!
//! The oracle hides a ground-truth labeling and answers each unordered pair at
//! most once with `(g(i) - g(j) + noise) mod k`. Noise for a pair is a pure
//! function of `(seed, i, j)`, so transcripts do not depend on query order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::types::{Labeling, NoiseParams, QueryKey, QueryPlan, QueryTranscript};

/// Draws one noise value from the zero-biased law of `params`.
pub fn sample_noise<R: Rng + ?Sized>(params: &NoiseParams, rng: &mut R) -> u32 {
    if rng.random_bool(params.p_zero().min(1.0)) {
        0
    } else {
        // conditionally uniform over the non-zero residues
        rng.random_range(1..params.k())
    }
}

#[derive(Debug, Clone)]
pub struct FaultyOracle {
    truth: Labeling,
    params: NoiseParams,
    rng_seed: u64,
    noiseless: bool,
    issued: QueryTranscript,
}

impl FaultyOracle {
    pub fn new(truth: Labeling, params: NoiseParams, rng_seed: u64) -> Result<Self> {
        if truth.k() != params.k() {
            return Err(Error::DimensionMismatch(format!(
                "labeling has k = {} but noise has k = {}",
                truth.k(),
                params.k()
            )));
        }
        let issued = QueryTranscript::new(truth.n(), truth.k())?;
        Ok(Self { truth, params, rng_seed, noiseless: false, issued })
    }

    /// Oracle whose noise is identically zero. Test mode only.
    pub fn noiseless(truth: Labeling, params: NoiseParams, rng_seed: u64) -> Result<Self> {
        let mut oracle = Self::new(truth, params, rng_seed)?;
        oracle.noiseless = true;
        Ok(oracle)
    }

    pub fn n(&self) -> usize {
        self.truth.n()
    }

    pub fn params(&self) -> &NoiseParams {
        &self.params
    }

    pub fn is_noiseless(&self) -> bool {
        self.noiseless
    }

    pub fn query_count(&self) -> usize {
        self.issued.len()
    }

    /// Every answer issued so far.
    pub fn issued(&self) -> &QueryTranscript {
        &self.issued
    }

    /// Hidden truth, exposed for scoring in experiments.
    pub fn truth(&self) -> &Labeling {
        &self.truth
    }

    fn noise_for(&self, key: QueryKey) -> u32 {
        if self.noiseless {
            return 0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        rng.set_stream(((key.i() as u64) << 32) | key.j() as u64);
        sample_noise(&self.params, &mut rng)
    }

    fn answer(&mut self, key: QueryKey) -> Result<u32> {
        let n = self.n();
        if key.j() >= n {
            return Err(Error::NodeOutOfRange { node: key.j(), n });
        }
        if self.issued.contains(&key) {
            return Err(Error::RepeatQuery(key.i(), key.j()));
        }
        let k = self.params.k();
        let diff = (self.truth.get(key.i()) + k - self.truth.get(key.j())) % k;
        let a = (diff + self.noise_for(key)) % k;
        self.issued.insert(key, a)?;
        Ok(a)
    }

    /// Queries `f(i, j)` once. The answer is returned in the requested
    /// orientation; the stored answer is the canonical `(min, max)` one.
    pub fn query(&mut self, i: usize, j: usize) -> Result<u32> {
        let key = QueryKey::new(i, j)?;
        let a = self.answer(key)?;
        let k = self.params.k();
        Ok(if i < j { a } else { (k - a) % k })
    }

    /// Issues every query of `plan` and returns the answers for exactly those pairs.
    ///
    /// The plan is checked in full before any query is issued, so a repeat
    /// leaves the oracle untouched.
    pub fn execute_plan(&mut self, plan: &QueryPlan) -> Result<QueryTranscript> {
        let n = self.n();
        if let Some(key) = plan.iter().find(|key| self.issued.contains(key)) {
            return Err(Error::RepeatQuery(key.i(), key.j()));
        }
        if let Some(key) = plan.iter().find(|key| key.j() >= n) {
            return Err(Error::NodeOutOfRange { node: key.j(), n });
        }
        let mut out = QueryTranscript::new(n, self.params.k())?;
        for &key in plan.iter() {
            let a = self.answer(key)?;
            out.insert(key, a)?;
        }
        Ok(out)
    }
}
