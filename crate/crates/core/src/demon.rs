//! Work extractable by a global demon and by local goblins on a bipartite
//! Szilard engine, in units of `kT` (with base-2 logarithms, i.e. bits of work).
//!
//! Memory-reset costs are not included.

use serde::{Deserialize, Serialize};

use crate::correlations::{conditional_entropy_after_measurement, entropy_unchecked, information_function, Entropies};
use crate::discord::{discord_d3, optimize_discord, DiscordMeasure};
use crate::error::{Error, Result};
use crate::measurement::{post_measurement_state, ProjectiveMeasurement};
use crate::operator::{eig, HermitianOperator, Subsystem};
use crate::optimize::OptimizerConfig;
use crate::states::BipartiteState;

/// Agreement required between the direct work differences and the discord values.
pub const LEDGER_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct WorkLedger {
    pub kt: f64,
    /// Global demon with full quantum control.
    pub w_plus: f64,
    /// Local goblins that do not communicate.
    pub w_local: f64,
    /// Alice knows the full state and announces her outcomes.
    pub w2: f64,
    /// Alice knows only her marginal and measures in its eigenbasis.
    pub w3: f64,
    pub delta_l: f64,
    pub delta_2: f64,
    pub delta_3: f64,
    pub measurement_w2: ProjectiveMeasurement,
}

/// Serializable view of the scalar ledger entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkValues {
    pub kt: f64,
    pub w_plus: f64,
    pub w_local: f64,
    pub w2: f64,
    pub w3: f64,
    pub delta_l: f64,
    pub delta_2: f64,
    pub delta_3: f64,
}

impl WorkLedger {
    pub fn values(&self) -> WorkValues {
        WorkValues {
            kt: self.kt,
            w_plus: self.w_plus,
            w_local: self.w_local,
            w2: self.w2,
            w3: self.w3,
            delta_l: self.delta_l,
            delta_2: self.delta_2,
            delta_3: self.delta_3,
        }
    }
}

/// `W⁺ = kT·K(ρ)` for a single system.
pub fn work_single(rho: &HermitianOperator, kt: f64) -> Result<f64> {
    Ok(kt * information_function(rho)?)
}

fn check_kt(kt: f64) -> Result<()> {
    if !(kt.is_finite() && kt > 0.0) {
        return Err(Error::OutOfRange { name: "kT", value: kt });
    }
    Ok(())
}

/// Work values for the four scenarios with Alice on subsystem A.
///
/// The differences are formed from the work values and then compared with
/// `kT·I`, `kT·D2` and `kT·D3` from the discord module; a disagreement
/// beyond [`LEDGER_TOLERANCE`]·kT is an error.
pub fn work_ledger(state: &BipartiteState, kt: f64, config: &OptimizerConfig) -> Result<WorkLedger> {
    check_kt(kt)?;
    let (da, db) = state.dims();
    let e = Entropies::of(state);
    let log_da = (da as f64).log2();
    let log_db = (db as f64).log2();

    let w_plus = kt * (log_da + log_db - e.s_ab);
    let w_local = kt * (log_da + log_db - e.s_a - e.s_b);

    let d2 = optimize_discord(DiscordMeasure::D2, state, Subsystem::A, config)?;
    let measurement_w2 = d2.optimal_measurement.clone().expect("D2 reports its argmin");
    let post = post_measurement_state(state, &measurement_w2)?;
    let w2 = kt * (log_da + log_db - entropy_unchecked(post.rho()));

    let star = ProjectiveMeasurement::from_eigensystem(&eig(&state.rho_a()), Subsystem::A);
    let cond = conditional_entropy_after_measurement(state, &star)?;
    let w3 = kt * ((log_da - e.s_a) + (log_db - cond));

    let ledger = WorkLedger {
        kt,
        w_plus,
        w_local,
        w2,
        w3,
        delta_l: w_plus - w_local,
        delta_2: w_plus - w2,
        delta_3: w_plus - w3,
        measurement_w2,
    };

    let d3 = discord_d3(state, Subsystem::A)?;
    let checks = [
        ("delta_L = kT·I", ledger.delta_l, kt * e.mutual_information()),
        ("delta_2 = kT·D2", ledger.delta_2, kt * d2.value),
        ("delta_3 = kT·D3", ledger.delta_3, kt * d3.value),
    ];
    for (check, direct, via_discord) in checks {
        let residual = (direct - via_discord).abs();
        if residual > LEDGER_TOLERANCE * kt {
            return Err(Error::Inconsistent { check, residual });
        }
    }
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::binary_entropy;
    use crate::states::{bell_mixture, example_state};

    #[test]
    fn bell_state_ledger() {
        let l = work_ledger(&bell_mixture(1.0).unwrap(), 1.0, &OptimizerConfig::default()).unwrap();
        assert!((l.w_plus - 2.0).abs() < 1e-10);
        assert!(l.w_local.abs() < 1e-10);
        assert!((l.delta_l - 2.0).abs() < 1e-10);
    }

    #[test]
    fn example_state_ledger() {
        let l = work_ledger(&example_state(0.5, 0.5).unwrap(), 1.0, &OptimizerConfig::default()).unwrap();
        assert!((l.delta_2 - 0.20).abs() < 5e-3);
        assert!((l.delta_3 - 0.21).abs() < 5e-3);
        assert!(l.w_plus >= l.w2 && l.w2 >= l.w3);
    }

    #[test]
    fn maximally_mixed_ledger_is_zero() {
        for dims in [(2, 2), (2, 3), (3, 3)] {
            let l = work_ledger(&BipartiteState::maximally_mixed(dims), 1.0, &OptimizerConfig::default()).unwrap();
            let v = l.values();
            for x in [v.w_plus, v.w_local, v.w2, v.w3, v.delta_l, v.delta_2, v.delta_3] {
                assert!(x.abs() < 1e-10, "{dims:?} {v:?}");
            }
        }
    }

    #[test]
    fn single_system_work() {
        assert!((work_single(&HermitianOperator::from_real_diagonal(&[1.0, 0.0]), 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(work_single(&HermitianOperator::identity(2).scaled(0.5), 1.0).unwrap().abs() < 1e-15);
        let w = work_single(&HermitianOperator::from_real_diagonal(&[0.75, 0.25]), 1.0).unwrap();
        assert!((w - (1.0 - binary_entropy(0.25))).abs() < 1e-12);
        assert!((w - 0.188_721_875_540_867).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_positive_temperature() {
        let s = bell_mixture(1.0).unwrap();
        assert!(work_ledger(&s, 0.0, &OptimizerConfig::default()).is_err());
    }
}
