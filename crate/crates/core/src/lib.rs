//! Exact recovery of labels in `Z_k`, up to a global cyclic shift, from noisy
//! pairwise-difference queries to a faulty oracle.
//!
//! The crate is organised bottom-up:
//!
//! - [`types`]: labelings, noise parameters, query plans and transcripts.
//! - [`oracle`]: the simulated oracle answering each pair at most once.
//! - [`recovery`]: the seed-set algorithm (seed sizing, plurality votes,
//!   seed alignment and label extension).
//! - [`analysis`]: scoring up to shift, brute-force maximum likelihood, and
//!   exact/Monte Carlo evaluation of the vote-sum tail bounds.
//! - [`harness`]: trials, sweeps and reports used by the command-line tool.

pub mod analysis;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod recovery;
pub mod types;

pub use error::{Error, Result};
pub use oracle::{sample_noise, FaultyOracle};
pub use recovery::{
    align_seed, effective_bias, estimate_pairwise_diff, extend_labels, plan_queries, plurality, run_algorithm1,
    seed_size, RecoveryResult, SeedConfig,
};
pub use types::{shift_labeling, Labeling, NoiseParams, QueryKey, QueryPlan, QueryTranscript};
