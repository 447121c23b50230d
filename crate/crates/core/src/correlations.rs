//! Classical and quantum entropies and the correlation quantities built on them.
//!
//! All logarithms are base 2.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measurement::{outcome_probabilities, outcomes, post_measurement_state, ProjectiveMeasurement};
use crate::operator::{eig, matrix_exp, matrix_log_on_support, CMatrix, HermitianOperator, Subsystem};
use crate::states::{outside_support_weight, validate_density_matrix, BipartiteState};
use crate::tolerance;

fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Shannon entropy in bits, with `0·log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    let sum: f64 = p.iter().sum();
    if p.iter().any(|&x| !x.is_finite() || x < -1e-15) || (sum - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { sum });
    }
    Ok(p.iter().map(|&x| plogp(x)).sum())
}

/// `H₂(p) = -p log p - (1-p) log(1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    plogp(p) + plogp(1.0 - p)
}

/// Entropy of a spectrum, ignoring eigenvalues at or below the support clip.
pub(crate) fn spectrum_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&x| x > tolerance::SUPPORT_CLIP)
        .map(|&x| plogp(x))
        .sum()
}

/// A joint distribution `p(a, b)` stored as an `n_A × n_B` table.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    p: DMatrix<f64>,
}

impl JointDistribution {
    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if p.iter().any(|&x| !x.is_finite() || x < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { p })
    }

    pub fn table(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn marginal_a(&self) -> Vec<f64> {
        self.p.row_iter().map(|r| r.sum()).collect()
    }

    pub fn marginal_b(&self) -> Vec<f64> {
        self.p.column_iter().map(|c| c.sum()).collect()
    }

    pub fn entropy_a(&self) -> f64 {
        self.marginal_a().iter().map(|&x| plogp(x)).sum()
    }

    pub fn entropy_b(&self) -> f64 {
        self.marginal_b().iter().map(|&x| plogp(x)).sum()
    }

    pub fn joint_entropy(&self) -> f64 {
        self.p.iter().map(|&x| plogp(x)).sum()
    }

    /// `H(A|B) = Σ_b p(b) H(A|b)`, evaluated from the conditional distributions.
    pub fn conditional_entropy_a_given_b(&self) -> f64 {
        self.p
            .column_iter()
            .map(|col| {
                let pb: f64 = col.sum();
                if pb <= 0.0 {
                    return 0.0;
                }
                pb * col.iter().map(|&x| plogp(x / pb)).sum::<f64>()
            })
            .sum()
    }

    /// `H(B|A)`, the mirror of [`Self::conditional_entropy_a_given_b`].
    pub fn conditional_entropy_b_given_a(&self) -> f64 {
        self.p
            .row_iter()
            .map(|row| {
                let pa: f64 = row.sum();
                if pa <= 0.0 {
                    return 0.0;
                }
                pa * row.iter().map(|&x| plogp(x / pa)).sum::<f64>()
            })
            .sum()
    }

    /// `I(A:B) = H(A) + H(B) - H(A,B)`.
    pub fn mutual_information(&self) -> f64 {
        self.entropy_a() + self.entropy_b() - self.joint_entropy()
    }

    /// `J(A:B) = H(A) - H(A|B)`.
    pub fn j_information(&self) -> f64 {
        self.entropy_a() - self.conditional_entropy_a_given_b()
    }
}

/// Von Neumann entropy `-tr ρ log ρ` in bits.
pub fn von_neumann_entropy(rho: &HermitianOperator) -> Result<f64> {
    validate_density_matrix(rho)?;
    Ok(spectrum_entropy(&rho.eigenvalues()))
}

/// Entropy of an operator known to be a density matrix.
pub(crate) fn entropy_unchecked(rho: &HermitianOperator) -> f64 {
    spectrum_entropy(&rho.eigenvalues())
}

/// Entropy of a small Hermitian block given as a raw matrix.
pub(crate) fn entropy_of_block(m: &CMatrix) -> f64 {
    if m.nrows() == 1 {
        return 0.0;
    }
    if m.nrows() == 2 {
        // closed form for the 2×2 case
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let b = m[(0, 1)];
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        return spectrum_entropy(&[mean - radius, mean + radius]);
    }
    let values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    spectrum_entropy(&values)
}

/// Marginal and joint entropies of a bipartite state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropies {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
}

impl Entropies {
    pub fn of(state: &BipartiteState) -> Self {
        Self {
            s_a: entropy_unchecked(&state.rho_a()),
            s_b: entropy_unchecked(&state.rho_b()),
            s_ab: entropy_unchecked(state.rho()),
        }
    }

    pub fn mutual_information(&self) -> f64 {
        self.s_a + self.s_b - self.s_ab
    }

    pub fn of_side(&self, side: Subsystem) -> f64 {
        match side {
            Subsystem::A => self.s_a,
            Subsystem::B => self.s_b,
        }
    }
}

/// Quantum mutual information `S(ρ_A) + S(ρ_B) - S(ρ_AB)`.
pub fn mutual_information(state: &BipartiteState) -> f64 {
    Entropies::of(state).mutual_information()
}

/// `S(ρ_B|Π^A) = Σ_a p_a S(ρ_{B|Π_a})`; impossible outcomes contribute nothing.
pub fn conditional_entropy_after_measurement(
    state: &BipartiteState,
    m: &ProjectiveMeasurement,
) -> Result<f64> {
    Ok(outcomes(state, m)?
        .iter()
        .filter_map(|o| o.conditional.as_ref().map(|c| o.probability * entropy_unchecked(c)))
        .sum())
}

/// Shannon entropy `H(A^Π)` of the outcome distribution on the measured side.
pub fn measured_entropy(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<f64> {
    let p = outcome_probabilities(&state.marginal(m.subsystem()), m)?;
    Ok(p.iter().map(|&x| plogp(x)).sum())
}

/// `K(ρ) = log₂ d - S(ρ)`.
pub fn information_function(rho: &HermitianOperator) -> Result<f64> {
    Ok((rho.dim() as f64).log2() - von_neumann_entropy(rho)?)
}

/// Positive operator generating the conditional entropy: `exp₂(-log₂ ρ_A ⊗ 1 + log₂ ρ_AB)`.
///
/// Generally not of unit trace.
#[derive(Debug, Clone)]
pub struct ConditionalOperator {
    op: HermitianOperator,
    /// `log₂` of the operator on the support of `ρ_AB` (zero elsewhere).
    log: HermitianOperator,
}

impl ConditionalOperator {
    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn log2(&self) -> &HermitianOperator {
        &self.log
    }

    pub fn trace(&self) -> f64 {
        self.op.trace()
    }
}

/// The conditional operator of `B` given `A`.
///
/// The exponent is compressed to the support of `ρ_AB`; the operator vanishes
/// on the kernel. Fails with `SupportMismatch` when `ρ_AB` has weight outside
/// the support of `ρ_A ⊗ 1`.
pub fn cerf_adami_operator(state: &BipartiteState) -> Result<ConditionalOperator> {
    let marginal = state.embedded_marginal(Subsystem::A);
    let weight = outside_support_weight(state.rho(), &marginal);
    if weight > 1e-10 {
        return Err(Error::SupportMismatch { weight });
    }
    let log_a = matrix_log_on_support(&marginal, tolerance::SUPPORT_CLIP)?;
    let log_ab = matrix_log_on_support(state.rho(), tolerance::SUPPORT_CLIP)?;
    let exponent = log_ab.plus(&log_a.scaled(-1.0))?;

    let es = eig(state.rho());
    let support: Vec<usize> = (0..es.dim())
        .filter(|&i| es.values[i] > tolerance::SUPPORT_CLIP)
        .collect();
    let n = state.dim();
    let mut v = CMatrix::zeros(n, support.len());
    for (k, &i) in support.iter().enumerate() {
        v.set_column(k, &es.vectors.column(i));
    }
    let compressed = HermitianOperator::symmetrized(v.adjoint() * exponent.matrix() * &v);
    let exp_c = matrix_exp(&compressed);
    let lift = |h: &HermitianOperator| HermitianOperator::symmetrized(&v * h.matrix() * v.adjoint());
    Ok(ConditionalOperator {
        op: lift(&exp_c),
        log: lift(&compressed),
    })
}

/// `S(ρ_{B|A}) = -tr ρ_AB log₂ ρ_{B|A}`; negative for entangled states.
pub fn cerf_adami_conditional_entropy(state: &BipartiteState) -> Result<f64> {
    let op = cerf_adami_operator(state)?;
    let value: Complex64 = (state.rho().matrix() * op.log.matrix()).trace();
    Ok(-value.re)
}

/// `log₂(d_A d_B) + I(ρ^Π) - S(ρ_A) - S(ρ_B)` at the supplied measurement.
pub fn one_way_purification_rate(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<f64> {
    let post = post_measurement_state(state, m)?;
    let e = Entropies::of(state);
    Ok((state.dim() as f64).log2() + mutual_information(&post) - e.s_a - e.s_b)
}
