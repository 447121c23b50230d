//! Discord versus local distinguishability for four ensembles of orthogonal states.
//!
//! The discord column is recomputed; the "locally measurable" column is a
//! cited literature result and is printed as such.

use discordant::states::{teahouse_doubled_weights, teahouse_equal_weights};
use discordant::{
    bell_mixture, bell_mixture_discord_closed_form, binary_entropy, classical_classical_state, optimize_discord,
    teahouse_ensemble, BipartiteState, DiscordMeasure, OptimizerConfig, Subsystem, Verdict,
};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::input::split_param;
use crate::report::classify;
use crate::CliError;

pub const DEFAULT_A: f64 = 0.25;

/// Values below this count as vanishing discord.
pub const ZERO_THRESHOLD: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub row: usize,
    pub states: String,
    pub d1_a: f64,
    pub d1_b: f64,
    pub verdict_a: Verdict,
    pub verdict_b: Verdict,
    /// `D^A=D^B=0` or `D1^A>0`, derived from the values above.
    pub discord: String,
    /// Literature value, not computed here.
    pub locally_measurable: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

pub fn parse_a(params: &[String]) -> Result<f64, CliError> {
    let mut a = DEFAULT_A;
    for p in params {
        match split_param(p)? {
            ("a", v) => a = v.parse().map_err(|e| CliError::Parse(format!("a={v}: {e}")))?,
            (k, _) => return Err(CliError::Parse(format!("table1 takes only `a`, got `{k}`"))),
        }
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(CliError::Validation(discordant::Error::OutOfRange { name: "a", value: a }));
    }
    Ok(a)
}

fn row(
    index: usize,
    states: String,
    state: &BipartiteState,
    locally_measurable: &'static str,
    closed_form: Option<f64>,
    config: &OptimizerConfig,
) -> Result<Row, CliError> {
    let d1 = |side| {
        optimize_discord(DiscordMeasure::D1, state, side, config)
            .map(|r| r.value)
            .map_err(CliError::Computation)
    };
    let d1_a = d1(Subsystem::A)?;
    let d1_b = d1(Subsystem::B)?;
    let discord = if d1_a.max(d1_b) < ZERO_THRESHOLD {
        "D^A=D^B=0".to_string()
    } else if d1_a >= ZERO_THRESHOLD {
        "D1^A>0".to_string()
    } else {
        "D1^B>0".to_string()
    };
    Ok(Row {
        row: index,
        states,
        d1_a,
        d1_b,
        verdict_a: classify(state, Subsystem::A)?.verdict,
        verdict_b: classify(state, Subsystem::B)?.verdict,
        discord,
        locally_measurable,
        closed_form,
    })
}

pub fn table1(a: f64, config: &OptimizerConfig) -> Result<Table, CliError> {
    let validation = CliError::Validation;
    let teahouse_equal = teahouse_ensemble(&teahouse_equal_weights()).map_err(validation)?.density_matrix();
    let bi_orthogonal = classical_classical_state(&DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 0.5])).map_err(validation)?;
    let entangled = bell_mixture(a).map_err(validation)?;
    let teahouse_doubled = teahouse_ensemble(&teahouse_doubled_weights()).map_err(validation)?.density_matrix();

    let closed = bell_mixture_discord_closed_form(a).map_err(validation)?;
    let rows = vec![
        row(1, "9 teahouse states, equal weights".into(), &teahouse_equal, "no", None, config)?,
        row(2, "2 product bi-orthogonal states |00>, |11>".into(), &bi_orthogonal, "yes", None, config)?,
        row(3, format!("2 entangled orthogonal states, Bell mixture a = {a}"), &entangled, "yes", Some(closed), config)?,
        row(4, "9 teahouse states, psi_7 and psi_9 doubled".into(), &teahouse_doubled, "no", None, config)?,
    ];

    let printed = a * a.log2() - (1.0 - a) * a.log2() + 1.0;
    let mut notes = vec![
        "\"locally measurable\" is cited from the literature, not computed".to_string(),
        format!(
            "row 3 closed form uses 1 - H2(a) = {closed:.6}; the variant a*log2(a) - (1-a)*log2(a) + 1 = {printed:.6} \
             does not vanish at a = 1/2 and disagrees with the optimized value"
        ),
        "D1 is the minimum over rank-1 projective measurements".to_string(),
    ];
    if a == 0.5 {
        notes.push(format!("a = 1/2 gives the equal Bell mixture, whose discord vanishes (H2(1/2) = {})", binary_entropy(0.5)));
    }
    Ok(Table { rows, notes })
}
