//! Rank-1 projective measurements on one side of a bipartite state.
//!
//! # Parameter chart
//!
//! A measurement on a `d`-dimensional subsystem is parameterized by
//! `d(d-1)` real angles. The basis is the set of columns of
//!
//! ```text
//! U = G(0,1) · G(0,2) · … · G(0,d-1) · G(1,2) · … · G(d-2,d-1)
//! ```
//!
//! where the planes are taken in lexicographic order and the `k`-th plane
//! consumes the angle pair `(θ_k, φ_k) = (params[2k], params[2k+1])`. On its
//! plane `(i, j)` each factor acts as
//!
//! ```text
//! ⎡ cos(θ/2)          -e^{-iφ} sin(θ/2) ⎤
//! ⎣ e^{iφ} sin(θ/2)    cos(θ/2)         ⎦
//! ```
//!
//! so for a qubit `(θ, φ)` are the Bloch-sphere angles of the first basis
//! vector: the origin is the computational basis and `(π/2, 0)` is the σx
//! eigenbasis `{|+⟩, |−⟩}`. Every orthonormal basis is reached (up to the
//! column phases, which do not affect the projectors); the inverse map is
//! [`ProjectiveMeasurement::parameters`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{CMatrix, CVector, EigenSystem, HermitianOperator, Subsystem};
use crate::states::BipartiteState;
use crate::tolerance;

/// Chart coordinates for [`ProjectiveMeasurement::from_parameters`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementParameters(pub Vec<f64>);

impl MeasurementParameters {
    /// Number of angles needed for a `d`-dimensional subsystem.
    pub fn count(d: usize) -> usize {
        d * d.saturating_sub(1)
    }

    pub fn zeros(d: usize) -> Self {
        Self(vec![0.0; Self::count(d)])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

fn planes(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (i + 1..d).map(move |j| (i, j)))
}

/// A complete set of orthogonal rank-1 projectors `|u_a⟩⟨u_a|` on one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    subsystem: Subsystem,
    basis: Vec<CVector>,
}

impl ProjectiveMeasurement {
    /// Validates that `basis` is orthonormal and complete.
    pub fn from_basis(basis: Vec<CVector>, subsystem: Subsystem) -> Result<Self> {
        let d = basis.first().map_or(0, |v| v.len());
        if d == 0 || basis.len() != d {
            return Err(Error::IncompleteBasis {
                dim: d,
                found: basis.len(),
            });
        }
        let mut deviation: f64 = 0.0;
        for (i, u) in basis.iter().enumerate() {
            if u.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: u.len(),
                });
            }
            for (j, v) in basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((u.dotc(v) - Complex64::new(target, 0.0)).norm());
            }
        }
        if deviation.is_nan() || deviation > tolerance::ORTHONORMALITY {
            return Err(Error::NonOrthogonalBasis { deviation });
        }
        Ok(Self { subsystem, basis })
    }

    pub fn computational(d: usize, subsystem: Subsystem) -> Self {
        let basis = (0..d)
            .map(|i| {
                let mut v = CVector::zeros(d);
                v[i] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        Self { subsystem, basis }
    }

    /// Measurement in the columns of a unitary.
    pub fn from_unitary(u: &CMatrix, subsystem: Subsystem) -> Result<Self> {
        let basis = (0..u.ncols()).map(|j| u.column(j).into_owned()).collect();
        Self::from_basis(basis, subsystem)
    }

    /// Measurement in the eigenbasis of an operator (the `Π*` family).
    pub fn from_eigensystem(es: &EigenSystem, subsystem: Subsystem) -> Self {
        Self {
            subsystem,
            basis: es.basis(),
        }
    }

    /// Maps chart coordinates onto a measurement on subsystem A.
    pub fn from_parameters(params: &MeasurementParameters, d: usize) -> Result<Self> {
        let expected = MeasurementParameters::count(d);
        if params.0.len() != expected {
            return Err(Error::BadParameterCount {
                expected,
                found: params.0.len(),
            });
        }
        if d == 0 {
            return Err(Error::IncompleteBasis { dim: 0, found: 0 });
        }
        let u = chart_unitary(&params.0, d);
        let basis = (0..d).map(|j| u.column(j).into_owned()).collect();
        Ok(Self {
            subsystem: Subsystem::A,
            basis,
        })
    }

    /// The same basis applied to the other (or the same) subsystem.
    pub fn on(mut self, subsystem: Subsystem) -> Self {
        self.subsystem = subsystem;
        self
    }

    pub fn subsystem(&self) -> Subsystem {
        self.subsystem
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CVector] {
        &self.basis
    }

    pub fn projectors(&self) -> Vec<HermitianOperator> {
        self.basis.iter().map(HermitianOperator::projector).collect()
    }

    /// Chart coordinates reproducing this measurement (inverse of [`Self::from_parameters`]).
    ///
    /// Runs a complex-Givens QR elimination of the basis matrix in the chart's
    /// plane order; the leftover diagonal phases are dropped.
    pub fn parameters(&self) -> MeasurementParameters {
        let d = self.dim();
        let mut m = CMatrix::from_fn(d, d, |r, c| self.basis[c][r]);
        let mut out = Vec::with_capacity(MeasurementParameters::count(d));
        for (i, j) in planes(d) {
            let x = m[(i, i)];
            let y = m[(j, i)];
            let (theta, phi) = if y.norm() < 1e-15 {
                (0.0, 0.0)
            } else if x.norm() < 1e-15 {
                (std::f64::consts::PI, y.arg())
            } else {
                (2.0 * y.norm().atan2(x.norm()), y.arg() - x.arg())
            };
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let e = Complex64::from_polar(1.0, phi);
            for col in 0..d {
                let (ri, rj) = (m[(i, col)], m[(j, col)]);
                m[(i, col)] = ri * c + e.conj() * rj * s;
                m[(j, col)] = -e * ri * s + rj * c;
            }
            out.push(theta);
            out.push(phi);
        }
        MeasurementParameters(out)
    }

    /// `1 - min_a max_b |⟨u_a|v_b⟩|`: zero iff the bases agree up to permutation and phases.
    pub fn basis_mismatch(&self, other: &ProjectiveMeasurement) -> f64 {
        if self.dim() != other.dim() {
            return 1.0;
        }
        let worst = self
            .basis
            .iter()
            .map(|u| {
                other
                    .basis
                    .iter()
                    .map(|v| u.dotc(v).norm())
                    .fold(0.0, f64::max)
            })
            .fold(1.0, f64::min);
        1.0 - worst
    }
}

fn chart_unitary(params: &[f64], d: usize) -> CMatrix {
    let mut u = CMatrix::identity(d, d);
    for (k, (i, j)) in planes(d).enumerate() {
        let (theta, phi) = (params[2 * k], params[2 * k + 1]);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let e = Complex64::from_polar(1.0, phi);
        for r in 0..d {
            let (ci, cj) = (u[(r, i)], u[(r, j)]);
            u[(r, i)] = ci * c + cj * e * s;
            u[(r, j)] = -ci * e.conj() * s + cj * c;
        }
    }
    u
}

/// Result of one measurement outcome.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub probability: f64,
    /// Normalized state of the unmeasured side; `None` when the outcome is impossible.
    pub conditional: Option<HermitianOperator>,
}

fn check_side(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<()> {
    let d = state.dim_of(m.subsystem);
    if d != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: m.dim(),
        });
    }
    Ok(())
}

/// Unnormalized blocks `(⟨u|⊗1) ρ (|u⟩⊗1)` for a measurement on the first factor.
pub(crate) fn blocks_on_first(rho: &CMatrix, dims: (usize, usize), basis: &[CVector]) -> Vec<CMatrix> {
    let (da, db) = dims;
    basis
        .iter()
        .map(|u| {
            let mut block = CMatrix::zeros(db, db);
            for i in 0..da {
                let ui = u[i].conj();
                if ui.norm() == 0.0 {
                    continue;
                }
                for j in 0..da {
                    let w = ui * u[j];
                    if w.norm() == 0.0 {
                        continue;
                    }
                    for k in 0..db {
                        for l in 0..db {
                            block[(k, l)] += w * rho[(i * db + k, j * db + l)];
                        }
                    }
                }
            }
            block
        })
        .collect()
}

/// Moves the measured side into the first tensor slot.
pub(crate) fn oriented(state: &BipartiteState, side: Subsystem) -> std::borrow::Cow<'_, BipartiteState> {
    match side {
        Subsystem::A => std::borrow::Cow::Borrowed(state),
        Subsystem::B => std::borrow::Cow::Owned(state.swapped()),
    }
}

/// All outcomes of `m` on `state`, in basis order.
pub fn outcomes(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<Vec<Outcome>> {
    check_side(state, m)?;
    let s = oriented(state, m.subsystem);
    let blocks = blocks_on_first(s.rho().matrix(), s.dims(), &m.basis);
    Ok(blocks
        .into_iter()
        .map(|block| {
            let p = block.trace().re.max(0.0);
            let conditional = (p > tolerance::IMPOSSIBLE_OUTCOME)
                .then(|| HermitianOperator::symmetrized(block / Complex64::new(p, 0.0)));
            Outcome {
                probability: p,
                conditional,
            }
        })
        .collect())
}

/// Probability of outcome `a` and the normalized state left on the other side.
pub fn conditional_state(
    state: &BipartiteState,
    m: &ProjectiveMeasurement,
    outcome: usize,
) -> Result<Outcome> {
    check_side(state, m)?;
    if outcome >= m.dim() {
        return Err(Error::OutOfRange {
            name: "outcome",
            value: outcome as f64,
        });
    }
    Ok(outcomes(state, m)?.swap_remove(outcome))
}

/// Outcome distribution `p_a = ⟨u_a|ρ_side|u_a⟩`.
pub fn outcome_probabilities(rho: &HermitianOperator, m: &ProjectiveMeasurement) -> Result<Vec<f64>> {
    if rho.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: m.dim(),
        });
    }
    Ok(m
        .basis
        .iter()
        .map(|u| (u.adjoint() * rho.matrix() * u)[(0, 0)].re.max(0.0))
        .collect())
}

/// `Σ_a Π_a ⊗ (p_a ρ^a)`, the state after a non-selective measurement.
pub fn post_measurement_state(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<BipartiteState> {
    check_side(state, m)?;
    let s = oriented(state, m.subsystem);
    let dims = s.dims();
    let blocks = blocks_on_first(s.rho().matrix(), dims, &m.basis);
    let n = dims.0 * dims.1;
    let mut out = CMatrix::zeros(n, n);
    for (u, block) in m.basis.iter().zip(&blocks) {
        out += (u * u.adjoint()).kronecker(block);
    }
    let measured = BipartiteState::from_parts(HermitianOperator::symmetrized(out), dims);
    Ok(match m.subsystem {
        Subsystem::A => measured,
        Subsystem::B => measured.swapped(),
    })
}

/// Dephasing channel `ρ ↦ Σ_a Π_a ρ Π_a` in the given orthonormal basis.
pub fn dephase(rho: &HermitianOperator, basis: &[CVector]) -> Result<HermitianOperator> {
    if basis.len() != rho.dim() {
        return Err(Error::IncompleteBasis {
            dim: rho.dim(),
            found: basis.len(),
        });
    }
    let m = ProjectiveMeasurement::from_basis(basis.to_vec(), Subsystem::A)?;
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for (u, p) in m.basis.iter().zip(outcome_probabilities(rho, &m)?) {
        out += u * u.adjoint() * Complex64::new(p, 0.0);
    }
    Ok(HermitianOperator::symmetrized(out))
}
