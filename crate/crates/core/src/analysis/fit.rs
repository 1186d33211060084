use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tail::{tail_probability_exact, TailSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `delta <= 1/(2k)`; predictor `delta^2 n k`.
    SmallBias,
    /// `delta > 1/(2k)`; predictor `delta n`.
    LargeBias,
}

impl Regime {
    pub fn of(spec: &TailSpec) -> Self {
        if spec.params().is_small_bias() {
            Regime::SmallBias
        } else {
            Regime::LargeBias
        }
    }

    pub fn predictor(&self, spec: &TailSpec) -> f64 {
        let n = spec.vote_count() as f64;
        let delta = spec.params().delta();
        match self {
            Regime::SmallBias => delta * delta * n * spec.params().k() as f64,
            Regime::LargeBias => delta * n,
        }
    }
}

/// Least-squares line of `-ln Pr[sum <= 0]` against the regime predictor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub regime: Regime,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `(predictor, -ln tail)` per grid point, in grid order.
    pub points: Vec<(f64, f64)>,
}

pub fn fit_tail_exponent(grid: &[TailSpec]) -> Result<TailFit> {
    if grid.len() < 5 {
        return Err(Error::DegenerateGrid(format!("need at least 5 points, got {}", grid.len())));
    }
    let regime = Regime::of(&grid[0]);
    if grid.iter().any(|s| Regime::of(s) != regime) {
        return Err(Error::RegimeMixing);
    }
    let xs: Vec<f64> = grid.iter().map(|s| regime.predictor(s)).collect();
    let mean_x = xs.iter().sum::<f64>() / xs.len() as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx <= f64::EPSILON * mean_x.abs().max(1.0) {
        return Err(Error::DegenerateGrid("predictor has zero variance".into()));
    }

    let tails = grid
        .par_iter()
        .map(tail_probability_exact)
        .collect::<Result<Vec<f64>>>()?;
    if let Some(t) = tails.iter().find(|&&t| !(t > 0.0 && t < 1.0)) {
        return Err(Error::DegenerateGrid(format!("tail probability {t} is not in (0, 1)")));
    }
    let ys: Vec<f64> = tails.iter().map(|t| -t.ln()).collect();
    let mean_y = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let syy: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(TailFit { regime, slope, intercept, r_squared, points: xs.into_iter().zip(ys).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::NoiseParams;

    fn grid(k: u32, delta: f64, ns: impl IntoIterator<Item = usize>) -> Vec<TailSpec> {
        let p = NoiseParams::new(k, delta).unwrap();
        ns.into_iter().map(|n| TailSpec::new(n, p).unwrap()).collect()
    }

    #[test]
    fn constant_grid_is_degenerate() {
        let g = grid(4, 0.02, [500; 6]);
        assert!(matches!(fit_tail_exponent(&g), Err(Error::DegenerateGrid(_))));
    }

    #[test]
    fn too_few_points() {
        let g = grid(4, 0.02, [100, 200, 300, 400]);
        assert!(matches!(fit_tail_exponent(&g), Err(Error::DegenerateGrid(_))));
    }

    #[test]
    fn mixed_regimes_rejected() {
        let mut g = grid(4, 0.02, [100, 200, 300]);
        g.extend(grid(4, 0.2, [100, 200, 300]));
        assert_eq!(fit_tail_exponent(&g), Err(Error::RegimeMixing));
    }

    #[test]
    fn small_bias_grid_is_linear() {
        let fit = fit_tail_exponent(&grid(4, 0.02, (1..=10).map(|i| 200 * i))).unwrap();
        assert_eq!(fit.regime, Regime::SmallBias);
        assert!(fit.slope > 0.0);
        assert!(fit.r_squared >= 0.95, "{fit:?}");
    }

    #[test]
    fn large_bias_grid_is_linear() {
        let fit = fit_tail_exponent(&grid(2, 0.3, (1..=10).map(|i| 20 * i))).unwrap();
        assert_eq!(fit.regime, Regime::LargeBias);
        assert!(fit.slope > 0.0);
        assert!(fit.r_squared >= 0.95, "{fit:?}");
    }

    #[test]
    fn points_increase_with_vote_count() {
        let fit = fit_tail_exponent(&grid(3, 0.5, [10, 20, 30, 40, 50])).unwrap();
        assert_eq!(fit.points.len(), 5);
        assert!(fit.points.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
    }
}
