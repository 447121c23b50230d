//! Classical and quantum correlations of finite-dimensional bipartite states.
//!
//! The crate computes von Neumann entropies and mutual information, the
//! conditional operator `exp₂(-log₂ρ_A ⊗ 1 + log₂ρ_AB)` and its (possibly
//! negative) conditional entropy, three one-way discord measures optimized
//! over rank-1 projective measurements, a staged zero-discord classifier,
//! and the work that local or global demons can extract from a bipartite
//! Szilard engine. Logarithms are base 2 throughout.
//!
//! ```
//! use discordant::{example_state, optimize_discord, DiscordMeasure, OptimizerConfig, Subsystem};
//!
//! let state = example_state(0.5, 0.5).unwrap();
//! let d2 = optimize_discord(DiscordMeasure::D2, &state, Subsystem::A, &OptimizerConfig::default()).unwrap();
//! assert!((d2.value - 0.1996).abs() < 1e-3);
//! ```

pub mod correlations;
pub mod demon;
pub mod discord;
pub mod document;
pub mod error;
pub mod measurement;
pub mod operator;
pub mod optimize;
pub mod states;
pub mod tolerance;

pub use correlations::{
    binary_entropy, cerf_adami_conditional_entropy, cerf_adami_operator, conditional_entropy_after_measurement,
    information_function, measured_entropy, mutual_information, one_way_purification_rate, shannon_entropy,
    von_neumann_entropy, ConditionalOperator, Entropies, JointDistribution,
};
pub use demon::{work_ledger, work_single, WorkLedger, WorkValues};
pub use discord::{
    bell_mixture_discord_closed_form, classify_zero_discord, discord_d1_at, discord_d2_at, discord_d3,
    discord_d3_symmetric, one_way_deficit, optimize_discord, ClassificationMethod, DiscordAt, DiscordMeasure,
    DiscordReport, OptimizerDiagnostics, Verdict, ZeroDiscordVerdict,
};
pub use document::{ExplicitState, FamilySpec, MeasurementDocument, StateDocument};
pub use error::{Error, Result};
pub use measurement::{
    conditional_state, dephase, outcome_probabilities, outcomes, post_measurement_state, MeasurementParameters,
    Outcome, ProjectiveMeasurement,
};
pub use operator::{
    commutator_norm, eig, matrix_exp, matrix_log_on_support, partial_trace, tensor, CMatrix, CVector, EigenSystem,
    HermitianOperator, Subsystem,
};
pub use optimize::{multistart_minimize, nelder_mead, MultistartResult, OptimizerConfig};
pub use states::{
    bell_mixture, classical_classical_state, example_state, random_state, teahouse_ensemble, zero_discord_state,
    BipartiteState, PureStateEnsemble,
};
