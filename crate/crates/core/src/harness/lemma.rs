use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::seeds::derive_seed;
use crate::analysis::{fit_tail_exponent, tail_probability_exact, tail_probability_mc, Regime, TailFit, TailSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaRow {
    pub vote_count: usize,
    pub k: u32,
    pub delta: f64,
    pub exact: f64,
    pub mc_estimate: f64,
    pub mc_half_width: f64,
    pub predictor: f64,
    pub mc_covers_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub regime: Regime,
    pub rows: Vec<LemmaRow>,
    /// Present when the grid has at least five points.
    pub fit: Option<TailFit>,
}

impl LemmaReport {
    pub fn coverage(&self) -> f64 {
        self.rows.iter().filter(|r| r.mc_covers_exact).count() as f64 / self.rows.len() as f64
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("vote_count,k,delta,exact,mc_estimate,mc_half_width,predictor,mc_covers_exact\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:e},{},{},{},{}\n",
                r.vote_count, r.k, r.delta, r.exact, r.mc_estimate, r.mc_half_width, r.predictor, r.mc_covers_exact
            ));
        }
        if let Some(fit) = &self.fit {
            out.push_str(&format!("# slope={},intercept={},r_squared={}\n", fit.slope, fit.intercept, fit.r_squared));
        }
        out
    }
}

/// Exact tail, Monte Carlo tail and (for five or more points) the regime fit
/// for every grid point.
pub fn run_lemma_check(grid: &[TailSpec], trials: u64, seed: u64) -> Result<LemmaReport> {
    let first = grid.first().ok_or_else(|| Error::InvalidInput("empty grid".into()))?;
    let regime = Regime::of(first);
    if grid.iter().any(|s| Regime::of(s) != regime) {
        return Err(Error::RegimeMixing);
    }
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(idx, spec)| {
            let exact = tail_probability_exact(spec)?;
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[idx as u64]));
            let mc = tail_probability_mc(spec, trials, &mut rng)?;
            Ok(LemmaRow {
                vote_count: spec.vote_count(),
                k: spec.params().k(),
                delta: spec.params().delta(),
                exact,
                mc_estimate: mc.estimate,
                mc_half_width: mc.half_width,
                predictor: regime.predictor(spec),
                mc_covers_exact: mc.covers(exact),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = if grid.len() >= 5 { Some(fit_tail_exponent(grid)?) } else { None };
    Ok(LemmaReport { regime, rows, fit })
}
