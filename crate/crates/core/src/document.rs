//! JSON interchange for states and measurements.
//!
//! Complex numbers are two-element `[re, im]` arrays; matrices are flat
//! row-major lists of such pairs. A [`StateDocument`] carries exactly one of
//! `family` (a named constructor with its parameters) or `explicit`
//! (dimensions plus the density matrix).
//!
//! ```json
//! {"family": {"name": "example_state", "b": 0.5, "c": 0.5}}
//! {"explicit": {"dims": [2, 2], "entries": [[0.25, 0.0], [0.0, 0.0], ...]}}
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::ProjectiveMeasurement;
use crate::operator::{CMatrix, CVector, HermitianOperator, Subsystem};
use crate::states::{self, BipartiteState};

pub type ComplexPair = [f64; 2];

fn to_pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

fn from_pair(p: &ComplexPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Row-major `[re, im]` entries of a square matrix.
pub fn matrix_entries(m: &CMatrix) -> Vec<ComplexPair> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out.push(to_pair(m[(r, c)]));
        }
    }
    out
}

fn square_from_entries(entries: &[ComplexPair]) -> Result<CMatrix> {
    let n = (entries.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != entries.len() {
        return Err(Error::InvalidParameters(format!(
            "{} matrix entries do not form a square matrix",
            entries.len()
        )));
    }
    Ok(CMatrix::from_fn(n, n, |r, c| from_pair(&entries[r * n + c])))
}

fn vector_from_pairs(v: &[ComplexPair]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(from_pair))
}

/// Parameters of a named state family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    ExampleState { b: f64, c: f64 },
    BellMixture { a: f64 },
    TeahouseEnsemble { weights: Vec<f64> },
    ClassicalClassical { w: Vec<Vec<f64>> },
    ZeroDiscord {
        p: Vec<f64>,
        basis_a: Vec<Vec<ComplexPair>>,
        sigmas_b: Vec<Vec<ComplexPair>>,
    },
    Random { dims: [usize; 2], rank: usize, seed: u64 },
}

impl FamilySpec {
    pub const NAMES: [&'static str; 6] = [
        "example_state",
        "bell_mixture",
        "teahouse_ensemble",
        "classical_classical",
        "zero_discord",
        "random",
    ];

    pub fn build(&self) -> Result<BipartiteState> {
        match self {
            FamilySpec::ExampleState { b, c } => states::example_state(*b, *c),
            FamilySpec::BellMixture { a } => states::bell_mixture(*a),
            FamilySpec::TeahouseEnsemble { weights } => {
                Ok(states::teahouse_ensemble(weights)?.density_matrix())
            }
            FamilySpec::ClassicalClassical { w } => {
                let rows = w.len();
                let cols = w.first().map_or(0, Vec::len);
                if w.iter().any(|r| r.len() != cols) {
                    return Err(Error::BadWeights("ragged weight table".into()));
                }
                let flat: Vec<f64> = w.iter().flatten().copied().collect();
                states::classical_classical_state(&DMatrix::from_row_slice(rows, cols, &flat))
            }
            FamilySpec::ZeroDiscord { p, basis_a, sigmas_b } => {
                let basis: Vec<CVector> = basis_a.iter().map(|v| vector_from_pairs(v)).collect();
                let sigmas = sigmas_b
                    .iter()
                    .map(|e| HermitianOperator::new(square_from_entries(e)?))
                    .collect::<Result<Vec<_>>>()?;
                states::zero_discord_state(p, &basis, &sigmas)
            }
            FamilySpec::Random { dims, rank, seed } => states::random_state((dims[0], dims[1]), *rank, *seed),
        }
    }
}

/// Dimensions and row-major density-matrix entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitState {
    pub dims: [usize; 2],
    pub entries: Vec<ComplexPair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<ExplicitState>,
}

impl StateDocument {
    pub fn family(spec: FamilySpec) -> Self {
        Self {
            family: Some(spec),
            explicit: None,
        }
    }

    pub fn explicit(state: &BipartiteState) -> Self {
        let (da, db) = state.dims();
        Self {
            family: None,
            explicit: Some(ExplicitState {
                dims: [da, db],
                entries: matrix_entries(state.rho().matrix()),
            }),
        }
    }

    /// Builds and validates the described state.
    pub fn to_state(&self) -> Result<BipartiteState> {
        match (&self.family, &self.explicit) {
            (Some(f), None) => f.build(),
            (None, Some(e)) => {
                let [da, db] = e.dims;
                if e.entries.len() != da * db * da * db {
                    return Err(Error::DimensionMismatch {
                        expected: da * db * da * db,
                        found: e.entries.len(),
                    });
                }
                BipartiteState::from_matrix(square_from_entries(&e.entries)?, (da, db))
            }
            _ => Err(Error::InvalidParameters(
                "a state document needs exactly one of `family` or `explicit`".into(),
            )),
        }
    }
}

/// Serializable form of a [`ProjectiveMeasurement`]: basis vectors as `[re, im]` lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDocument {
    pub subsystem: Subsystem,
    pub basis: Vec<Vec<ComplexPair>>,
}

impl From<&ProjectiveMeasurement> for MeasurementDocument {
    fn from(m: &ProjectiveMeasurement) -> Self {
        Self {
            subsystem: m.subsystem(),
            basis: m
                .basis()
                .iter()
                .map(|v| v.iter().map(|&z| to_pair(z)).collect())
                .collect(),
        }
    }
}

impl MeasurementDocument {
    pub fn to_measurement(&self) -> Result<ProjectiveMeasurement> {
        let basis = self.basis.iter().map(|v| vector_from_pairs(v)).collect();
        ProjectiveMeasurement::from_basis(basis, self.subsystem)
    }
}
