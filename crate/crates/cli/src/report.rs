//! Serializable reports assembled from library results.

use discordant::{
    cerf_adami_conditional_entropy, classify_zero_discord, discord_d1_at, discord_d2_at, discord_d3,
    discord_d3_symmetric, optimize_discord, work_ledger, BipartiteState, ClassificationMethod, DiscordMeasure,
    DiscordReport, Entropies, MeasurementDocument, OptimizerConfig, OptimizerDiagnostics, Subsystem, Verdict,
    WorkLedger, WorkValues, ZeroDiscordVerdict,
};
use serde::Serialize;

use crate::CliError;

/// Residual allowed in the reported cross-identities before a WARN is raised.
pub const IDENTITY_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct DiscordOut {
    pub measure: DiscordMeasure,
    pub side: Subsystem,
    pub value: f64,
    pub j_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_measurement: Option<MeasurementDocument>,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted_infimum: Option<f64>,
    pub consistency_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<OptimizerDiagnostics>,
}

impl From<&DiscordReport> for DiscordOut {
    fn from(r: &DiscordReport) -> Self {
        Self {
            measure: r.measure,
            side: r.side,
            value: r.value,
            j_value: r.j_value,
            optimal_measurement: r.optimal_measurement.as_ref().map(MeasurementDocument::from),
            degenerate: r.degenerate,
            restricted_infimum: r.restricted_infimum,
            consistency_residual: r.consistency_residual,
            diagnostics: r.diagnostics.clone(),
        }
    }
}

pub fn discord(measure: DiscordMeasure, state: &BipartiteState, side: Subsystem, config: &OptimizerConfig) -> Result<DiscordReport, CliError> {
    let report = match measure {
        DiscordMeasure::D1 | DiscordMeasure::D2 => optimize_discord(measure, state, side, config),
        DiscordMeasure::D3 => discord_d3(state, side),
        DiscordMeasure::D3Sym => discord_d3_symmetric(state),
    };
    report.map_err(CliError::Computation)
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictOut {
    pub side: Subsystem,
    pub verdict: Verdict,
    pub method: ClassificationMethod,
    pub commutator_norm: f64,
    pub residual_discord: Option<f64>,
    pub eigenstructure_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MeasurementDocument>,
}

impl From<&ZeroDiscordVerdict> for VerdictOut {
    fn from(v: &ZeroDiscordVerdict) -> Self {
        Self {
            side: v.side,
            verdict: v.verdict,
            method: v.method,
            commutator_norm: v.commutator_norm,
            residual_discord: v.residual_discord,
            eigenstructure_norm: v.eigenstructure_norm,
            witness: v.witness.as_ref().map(MeasurementDocument::from),
        }
    }
}

pub fn classify(state: &BipartiteState, side: Subsystem) -> Result<VerdictOut, CliError> {
    classify_zero_discord(state, side)
        .map(|v| VerdictOut::from(&v))
        .map_err(CliError::Computation)
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerOut {
    #[serde(flatten)]
    pub values: WorkValues,
    pub measurement_w2: MeasurementDocument,
}

impl From<&WorkLedger> for LedgerOut {
    fn from(l: &WorkLedger) -> Self {
        Self {
            values: l.values(),
            measurement_w2: MeasurementDocument::from(&l.measurement_w2),
        }
    }
}

pub fn demon(state: &BipartiteState, kt: f64, config: &OptimizerConfig) -> Result<LedgerOut, CliError> {
    work_ledger(state, kt, config)
        .map(|l| LedgerOut::from(&l))
        .map_err(CliError::Computation)
}

#[derive(Debug, Clone, Serialize)]
pub struct StateSummary {
    pub dims: [usize; 2],
    pub purity: f64,
    pub spectrum: Vec<f64>,
    pub spectrum_a: Vec<f64>,
    pub spectrum_b: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropiesOut {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
    pub mutual_information: f64,
    /// `S(ρ_AB) - S(ρ_A)` evaluated through the conditional operator.
    pub conditional_entropy_b_given_a: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SideDiscords {
    pub d1: DiscordOut,
    pub d2: DiscordOut,
    pub d3: DiscordOut,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscordBlock {
    pub a: SideDiscords,
    pub b: SideDiscords,
    pub d3sym: DiscordOut,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub a: VerdictOut,
    pub b: VerdictOut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Ok,
    Warn,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: f64, rhs: f64) -> Self {
        let residual = (lhs - rhs).abs();
        Self {
            name,
            lhs,
            rhs,
            residual,
            tolerance: IDENTITY_TOLERANCE,
            status: if residual <= IDENTITY_TOLERANCE { CheckStatus::Ok } else { CheckStatus::Warn },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub state: StateSummary,
    pub entropies: EntropiesOut,
    pub discord: DiscordBlock,
    pub classification: Classification,
    pub demon: LedgerOut,
    pub identities: Vec<IdentityCheck>,
    pub warnings: Vec<String>,
    pub optimizer: OptimizerConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

fn side_discords(state: &BipartiteState, side: Subsystem, config: &OptimizerConfig) -> Result<(SideDiscords, [DiscordReport; 2]), CliError> {
    let d1 = discord(DiscordMeasure::D1, state, side, config)?;
    let d2 = discord(DiscordMeasure::D2, state, side, config)?;
    let d3 = discord(DiscordMeasure::D3, state, side, config)?;
    Ok((
        SideDiscords {
            d1: (&d1).into(),
            d2: (&d2).into(),
            d3: (&d3).into(),
        },
        [d1, d2],
    ))
}

/// Everything the library computes for one state.
pub fn analyze(state: &BipartiteState, config: &OptimizerConfig) -> Result<AnalysisReport, CliError> {
    let (da, db) = state.dims();
    let e = Entropies::of(state);
    let conditional = cerf_adami_conditional_entropy(state).map_err(CliError::Computation)?;

    let (a, [d1a, d2a]) = side_discords(state, Subsystem::A, config)?;
    let (b, _) = side_discords(state, Subsystem::B, config)?;
    let d3sym = discord(DiscordMeasure::D3Sym, state, Subsystem::A, config)?;
    let ledger = work_ledger(state, 1.0, config).map_err(CliError::Computation)?;

    let mut identities = Vec::new();
    let pi1 = d1a.optimal_measurement.as_ref().expect("optimized D1 has an argmin");
    let at1 = discord_d1_at(state, pi1).map_err(CliError::Computation)?;
    identities.push(IdentityCheck::new(
        "conditional entropy: S(rho_B|A) = S(B|Pi) - D1^Pi",
        conditional,
        at1.parts.conditional_entropy - at1.value,
    ));
    let pi2 = d2a.optimal_measurement.as_ref().expect("optimized D2 has an argmin");
    let d1_at2 = discord_d1_at(state, pi2).map_err(CliError::Computation)?;
    let d2_at2 = discord_d2_at(state, pi2).map_err(CliError::Computation)?;
    identities.push(IdentityCheck::new(
        "D1^Pi = D2^Pi - [H(A^Pi) - S(rho_A)]",
        d1_at2.value,
        d2_at2.value - (d2_at2.parts.measured_entropy - e.s_a),
    ));
    identities.push(IdentityCheck::new("delta_L = kT I", ledger.delta_l, e.mutual_information()));
    identities.push(IdentityCheck::new("delta_2 = kT D2", ledger.delta_2, d2a.value));

    let mut warnings: Vec<String> = identities
        .iter()
        .filter(|c| c.status == CheckStatus::Warn)
        .map(|c| format!("identity `{}` off by {:.3e}", c.name, c.residual))
        .collect();
    for r in [&a.d1, &a.d2, &b.d1, &b.d2] {
        if let Some(diag) = &r.diagnostics {
            if !diag.converged {
                warnings.push(format!("{} on side {} did not converge within the evaluation budget", r.measure, r.side));
            }
        }
    }
    let d3sym = DiscordOut::from(&d3sym);
    for r in [&a.d3, &b.d3, &d3sym] {
        if r.degenerate {
            warnings.push(format!(
                "{} on side {} uses a degenerate marginal; the value depends on the eigenbasis convention",
                r.measure, r.side
            ));
        }
    }

    Ok(AnalysisReport {
        state: StateSummary {
            dims: [da, db],
            purity: state.purity(),
            spectrum: state.rho().eigenvalues(),
            spectrum_a: state.rho_a().eigenvalues(),
            spectrum_b: state.rho_b().eigenvalues(),
        },
        entropies: EntropiesOut {
            s_a: e.s_a,
            s_b: e.s_b,
            s_ab: e.s_ab,
            mutual_information: e.mutual_information(),
            conditional_entropy_b_given_a: conditional,
        },
        discord: DiscordBlock { a, b, d3sym },
        classification: Classification {
            a: classify(state, Subsystem::A)?,
            b: classify(state, Subsystem::B)?,
        },
        demon: LedgerOut::from(&ledger),
        identities,
        warnings,
        optimizer: config.clone(),
        timing: None,
    })
}
