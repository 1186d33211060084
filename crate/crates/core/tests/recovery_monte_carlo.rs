//! Statistical behaviour of the recovery algorithm on random instances.

use faultyalign::harness::{derive_seed, run_trial, sample_truth, scaled_seed_config};
use faultyalign::recovery::partition;
use faultyalign::{align_seed, extend_labels, seed_size, FaultyOracle, NoiseParams, QueryPlan, SeedConfig};
use proptest::prelude::*;

/// One-sided critical value of the standard normal at 1e-3.
const Z_ONE_SIDED_1E3: f64 = 3.090_232_306_167_813;

fn success_count(n: usize, params: &NoiseParams, cfg: &SeedConfig, trials: usize, base: u64) -> usize {
    (0..trials)
        .filter(|&t| run_trial(n, params, cfg, derive_seed(base, &[t as u64]), false).unwrap().success)
        .count()
}

/// True when the drop from `a` to `b` successes (out of `trials` each) is
/// significant at 1e-3 under a one-sided two-proportion test.
fn significant_drop(a: usize, b: usize, trials: usize) -> bool {
    let (pa, pb) = (a as f64 / trials as f64, b as f64 / trials as f64);
    let pooled = (a + b) as f64 / (2 * trials) as f64;
    let se = (pooled * (1.0 - pooled) * 2.0 / trials as f64).sqrt();
    se > 0.0 && (pa - pb) / se > Z_ONE_SIDED_1E3
}

/// Probability that the seed alignment vote over `votes` non-seed nodes picks
/// the true difference, by enumerating every vote pattern.
fn exact_alignment_success(params: &NoiseParams, votes: u32) -> f64 {
    let k = params.k();
    let pr = |i: u32| if i == 0 { params.p_zero() } else { params.p_other() };
    let diff_pr: Vec<f64> = (0..k).map(|z| (0..k).map(|j| pr(j) * pr((j + k - z) % k)).sum()).collect();
    let mut total = 0.0;
    for truth in 0..k {
        for code in 0..(k as u64).pow(votes) {
            let mut c = code;
            let mut counts = vec![0u32; k as usize];
            let mut p = 1.0;
            for _ in 0..votes {
                let z = (c % k as u64) as u32;
                c /= k as u64;
                p *= diff_pr[z as usize];
                counts[((truth + z) % k) as usize] += 1;
            }
            let best = *counts.iter().max().unwrap();
            let winner = counts.iter().position(|&x| x == best).unwrap() as u32;
            if winner == truth {
                total += p;
            }
        }
    }
    total / k as f64
}

#[test]
fn seed_alignment_strong_bias() {
    let params = NoiseParams::new(3, 0.6).unwrap();
    let exact = exact_alignment_success(&params, 6);
    assert!((exact - 0.993_863_755_693_333).abs() < 1e-12, "{exact}");

    let (seed, rest) = partition(8, 2);
    let trials = 1000;
    let mut hits = 0;
    for t in 0..trials {
        let s = derive_seed(2024, &[t]);
        let truth = sample_truth(8, 3, s).unwrap();
        let mut oracle = FaultyOracle::new(truth.clone(), params, s).unwrap();
        let transcript = oracle.execute_plan(&QueryPlan::bipartite(&seed, &rest)).unwrap();
        let labels = align_seed(&transcript, &seed, &rest).unwrap();
        if labels[1] == (truth.get(1) + 3 - truth.get(0)) % 3 {
            hits += 1;
        }
    }
    assert!(hits >= 990, "{hits}/1000 alignments correct, exact rate {exact}");
}

/// Extension at n=200, k=4, delta=0.2 with the default constant.
#[test]
fn extension_n200_k4() {
    let params = NoiseParams::new(4, 0.2).unwrap();
    let cfg = SeedConfig::with_constant(40.0);
    let s = seed_size(200, &params, &cfg).unwrap();
    let (seed, rest) = partition(200, s);
    let mut successes = 0;
    for t in 0..100u64 {
        let trial_seed = derive_seed(77, &[t]);
        let truth = sample_truth(200, 4, trial_seed).unwrap();
        let mut oracle = FaultyOracle::new(truth.clone(), params, trial_seed).unwrap();
        let transcript = oracle.execute_plan(&QueryPlan::bipartite(&seed, &rest)).unwrap();
        let seed_labels = align_seed(&transcript, &seed, &rest).unwrap();
        let out = extend_labels(&transcript, &seed, &seed_labels, &rest).unwrap();
        if faultyalign::analysis::recover_success(&out, &truth).unwrap() {
            successes += 1;
        }
    }
    assert!(successes >= 99, "{successes}/100 exact recoveries");
}

#[test]
fn full_run_n500_k2_delta_0_1() {
    let params = NoiseParams::new(2, 0.1).unwrap();
    let successes = success_count(500, &params, &SeedConfig::with_constant(40.0), 100, 500);
    assert!(successes >= 95, "{successes}/100 exact recoveries");
}

/// Inside the validity regime the algorithm recovers exactly with high probability.
#[test]
fn recovers_inside_validity_regime() {
    for &(n, k, delta) in &[(200usize, 4u32, 0.45), (500, 2, 0.3), (400, 3, 0.5)] {
        let params = NoiseParams::new(k, delta).unwrap();
        assert!(faultyalign::recovery::in_validity_regime(n, &params));
        let successes = success_count(n, &params, &SeedConfig::default(), 100, 9);
        assert!(successes >= 99, "n={n} k={k} delta={delta}: {successes}/100");
    }
}

#[test]
fn success_non_decreasing_in_delta() {
    let n = 150;
    let trials = 200;
    let deltas = [0.3, 0.35, 0.4, 0.45, 0.5, 0.55];
    let rates: Vec<usize> = deltas
        .iter()
        .map(|&d| success_count(n, &NoiseParams::new(3, d).unwrap(), &SeedConfig::default(), trials, 31))
        .collect();
    for (w, d) in rates.windows(2).zip(deltas.windows(2)) {
        assert!(!significant_drop(w[0], w[1], trials), "drop from delta {} to {}: {rates:?}", d[0], d[1]);
    }
    assert!(rates.last().unwrap() > rates.first().unwrap());
}

#[test]
fn success_non_increasing_as_budget_shrinks() {
    let n = 300;
    let trials = 200;
    let params = NoiseParams::new(2, 0.35).unwrap();
    let base = SeedConfig::with_constant(4.0);
    let scales = [1.0, 0.5, 0.25, 0.1, 0.03, 0.01];
    let rates: Vec<usize> = scales
        .iter()
        .map(|&scale| {
            let cfg = scaled_seed_config(n, &params, &base, scale).unwrap();
            success_count(n, &params, &cfg, trials, 55)
        })
        .collect();
    for w in rates.windows(2) {
        assert!(!significant_drop(w[1], w[0], trials), "gain while shrinking budget: {rates:?}");
    }
    assert!(rates[0] > *rates.last().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn budget_is_n_log_n_order(n in 4usize..100_000, k in 2u32..10, frac in 0.01f64..1.0, c in 0.1f64..80.0, min_seed in 1usize..5) {
        let params = NoiseParams::new(k, frac * NoiseParams::max_delta(k)).unwrap();
        let cfg = SeedConfig { constant_c: c, min_seed, explicit_size: None };
        let s = seed_size(n, &params, &cfg).unwrap();
        let queries = (s * (n - s)) as f64;
        let (ln_n, kf, d) = ((n as f64).ln(), k as f64, params.delta());
        let bound_c = c + min_seed as f64 + 1.0;
        let order = if params.is_small_bias() { ln_n / (kf * d * d) } else { ln_n / d };
        prop_assert!(queries <= bound_c * n as f64 * order);
    }
}
