//! Exact and statistical oracles used to check the recovery algorithm.

mod fit;
mod likelihood;
mod scoring;
mod tail;

pub use fit::{fit_tail_exponent, Regime, TailFit};
pub use likelihood::{brute_force_mle, likelihood_split, log_likelihood, LikelihoodSplit, MLE_ENUMERATION_LIMIT};
pub use scoring::{hamming_after_best_shift, recover_success};
pub use tail::{tail_probability_exact, tail_probability_mc, McEstimate, TailSpec, TAIL_DP_LIMIT, Z_99};
