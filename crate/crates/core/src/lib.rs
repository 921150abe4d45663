//! Simulation and analysis of CHSH trial data.
//!
//! Two ways of computing the CHSH quantity Γ are provided: the pooled sum over
//! a single counterfactual run (every trial carries outcomes for all four
//! settings), and the sum of four per-experiment correlations over disjoint
//! sub-runs. Only the first is bounded by 2 unconditionally. The [`resort`]
//! module tries to re-sort sub-run data into the factorized form the bound
//! needs and reports whether that succeeds.

pub mod dataset;
pub mod error;
pub mod estimators;
pub mod outcome;
pub mod report;
pub mod resort;
pub mod rng;
pub mod settings;
pub mod sources;

pub use dataset::{CounterfactualDataset, CounterfactualTrial, SubRunDataset, SubRunTrial};
pub use error::{Error, Result};
pub use estimators::{
    gamma_pooled, gamma_subruns, split_random, termwise_bound_check, theory_gamma, BoundReport,
    GammaResult,
};
pub use outcome::{correlation, sequences_identical, switch_pattern, Outcome, OutcomeSequence};
pub use resort::{
    align_permutation, closure_probability, gamma_resorted, resort_cascade, ClosureMode,
    ResortPolicy, ResortReport, TrialPermutation,
};
pub use rng::RngSpec;
pub use settings::{Angle, SettingPair, SettingsQuad};
pub use sources::{generate_subruns, lhv_generate, qm_generate, CorrelationLaw, LhvModel};

/// The local-realistic bound on |Γ| for a single counterfactual run.
pub const CHSH_BOUND: f64 = 2.0;
