//! Turning `--input` / `--family` arguments into validated states.

use std::io::Read;

use discordant::states::{teahouse_doubled_weights, teahouse_equal_weights};
use discordant::{BipartiteState, FamilySpec, StateDocument};
use serde_json::{Map, Number, Value};

use crate::args::StateInput;
use crate::CliError;

/// One-line parameter help per family, in listing order.
pub const FAMILY_HELP: [(&str, &str); 6] = [
    ("example_state", "b=<0..1> c=<0..1>  two-qubit example with two non-orthogonal branches"),
    ("bell_mixture", "a=<0..1>  a|Ψ+⟩⟨Ψ+| + (1-a)|Ψ-⟩⟨Ψ-|"),
    ("teahouse_ensemble", "weights=equal|doubled|w1,...,w9  mixture of the nine 3x3 product states"),
    ("classical_classical", "w=<row;row;...>  Σ w_ab |a⟩⟨a| ⊗ |b⟩⟨b|"),
    ("zero_discord", "p, basis_a, sigmas_b  (JSON document only; see `states emit --explicit`)"),
    ("random", "dims=<dA,dB> rank=<r> seed=<n>  seeded random density matrix"),
];

fn scalar(s: &str) -> Result<Value, CliError> {
    let s = s.trim();
    if let Ok(u) = s.parse::<u64>() {
        return Ok(Value::Number(u.into()));
    }
    if let Ok(f) = s.parse::<f64>() {
        return Number::from_f64(f)
            .map(Value::Number)
            .ok_or_else(|| CliError::Parse(format!("non-finite parameter value `{s}`")));
    }
    Ok(Value::String(s.to_string()))
}

fn list(s: &str) -> Result<Value, CliError> {
    s.split(',').map(scalar).collect::<Result<Vec<_>, _>>().map(Value::Array)
}

/// `k=v` → JSON value: `;` separates rows, `,` separates items.
fn param_value(v: &str) -> Result<Value, CliError> {
    if v.contains(';') {
        v.split(';').map(list).collect::<Result<Vec<_>, _>>().map(Value::Array)
    } else if v.contains(',') {
        list(v)
    } else {
        scalar(v)
    }
}

pub fn split_param(p: &str) -> Result<(&str, &str), CliError> {
    p.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .filter(|(k, _)| !k.is_empty())
        .ok_or_else(|| CliError::Parse(format!("parameter `{p}` is not of the form key=value")))
}

/// Builds a family specification from `--param` pairs.
pub fn family_spec(name: &str, params: &[String]) -> Result<FamilySpec, CliError> {
    if !FamilySpec::NAMES.contains(&name) {
        return Err(CliError::Parse(format!(
            "unknown family `{name}` (known: {})",
            FamilySpec::NAMES.join(", ")
        )));
    }
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(name.into()));
    for p in params {
        let (k, v) = split_param(p)?;
        let value = match (name, k, v) {
            ("teahouse_ensemble", "weights", "equal") => serde_json::to_value(teahouse_equal_weights()).unwrap(),
            ("teahouse_ensemble", "weights", "doubled") => serde_json::to_value(teahouse_doubled_weights()).unwrap(),
            ("classical_classical", "w", _) if !v.contains(';') => Value::Array(vec![param_value(v)?]),
            _ => param_value(v)?,
        };
        if obj.insert(k.to_string(), value).is_some() {
            return Err(CliError::Parse(format!("parameter `{k}` given twice")));
        }
    }
    serde_json::from_value(Value::Object(obj)).map_err(|e| CliError::Parse(format!("family `{name}`: {e}")))
}

pub fn read_document(path: &std::path::Path) -> Result<StateDocument, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Parse(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("reading {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn document(input: &StateInput) -> Result<StateDocument, CliError> {
    match (&input.input, &input.family) {
        (Some(path), _) => read_document(path),
        (None, Some(name)) => Ok(StateDocument::family(family_spec(name, &input.params)?)),
        (None, None) => Err(CliError::Parse("one of --input or --family is required".into())),
    }
}

pub fn load(input: &StateInput) -> Result<(StateDocument, BipartiteState), CliError> {
    let doc = document(input)?;
    let state = doc.to_state().map_err(CliError::Validation)?;
    Ok((doc, state))
}
