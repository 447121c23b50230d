//! Dense Hermitian operator algebra.
//!
//! Everything in the crate that holds a density matrix, a marginal or a
//! projector stores it as a [`HermitianOperator`]. Spectral functions are
//! evaluated through [`eig`], whose output ordering is deterministic so that
//! eigenbasis-dependent quantities are reproducible run to run.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Which half of a bipartite system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Subsystem {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

impl std::fmt::Display for Subsystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Subsystem::A => f.write_str("A"),
            Subsystem::B => f.write_str("B"),
        }
    }
}

/// A square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    m: CMatrix,
}

impl HermitianOperator {
    /// Validates Hermiticity and symmetrizes away the residual rounding.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let deviation = max_abs(&(&m - m.adjoint()));
        if !deviation.is_finite() || deviation > tolerance::HERMITICITY {
            return Err(Error::NonHermitian { deviation });
        }
        Ok(Self::symmetrized(m))
    }

    /// For matrices that are Hermitian by construction up to rounding.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Self { m: h }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: CMatrix::zeros(dim, dim),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let mut m = CMatrix::zeros(d, d);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        Self { m }
    }

    /// Builds an operator from real row-major entries; fails if not symmetric.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let d = rows.len();
        let mut m = CMatrix::zeros(d, d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(x, 0.0);
            }
        }
        Self::new(m)
    }

    /// The rank-1 operator |v⟩⟨v| (no normalization applied).
    pub fn projector(v: &CVector) -> Self {
        Self {
            m: v * v.adjoint(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            m: &self.m * Complex64::new(s, 0.0),
        }
    }

    pub fn plus(&self, other: &HermitianOperator) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(Self {
            m: &self.m + &other.m,
        })
    }

    /// Eigenvalues in ascending order, without eigenvectors.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = if self.dim() == 1 {
            vec![self.m[(0, 0)].re]
        } else {
            self.m.clone().symmetric_eigenvalues().iter().copied().collect()
        };
        values.sort_by(f64::total_cmp);
        values
    }

    /// Max-abs entrywise distance to another operator.
    pub fn distance(&self, other: &HermitianOperator) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs(&(&self.m - &other.m))
    }
}

pub fn pauli_x() -> HermitianOperator {
    HermitianOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("symmetric")
}

pub fn pauli_y() -> HermitianOperator {
    let i = Complex64::i();
    let m = CMatrix::from_row_slice(2, 2, &[Complex64::new(0.0, 0.0), -i, i, Complex64::new(0.0, 0.0)]);
    HermitianOperator::new(m).expect("Hermitian")
}

pub fn pauli_z() -> HermitianOperator {
    HermitianOperator::from_real_diagonal(&[1.0, -1.0])
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_same_dim(x: &HermitianOperator, y: &HermitianOperator) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(())
}

/// Spectral decomposition with a reproducible eigenvector convention.
///
/// Eigenvalues ascend. Each eigenvector is phase-fixed so its first
/// non-negligible component is real and positive. Inside a run of exactly
/// tied eigenvalues the solver's basis is arbitrary, so it is replaced by
/// the Gram-Schmidt orthonormalization of the projected computational basis
/// vectors, taken in index order.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, matching `values`.
    pub vectors: CMatrix,
    /// Index runs whose adjacent eigenvalues differ by less than the degeneracy gap.
    pub groups: Vec<Vec<usize>>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, i: usize) -> CVector {
        self.vectors.column(i).into_owned()
    }

    pub fn basis(&self) -> Vec<CVector> {
        (0..self.dim()).map(|i| self.vector(i)).collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.groups.iter().any(|g| g.len() > 1)
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        spectral_sum(&self.vectors, &self.values)
    }
}

fn spectral_sum(vectors: &CMatrix, values: &[f64]) -> HermitianOperator {
    let n = vectors.nrows();
    let mut scaled = vectors.clone();
    for (j, &lambda) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(lambda);
    }
    let m = if values.is_empty() {
        CMatrix::zeros(n, n)
    } else {
        &scaled * vectors.adjoint()
    };
    HermitianOperator::symmetrized(m)
}

pub fn eig(h: &HermitianOperator) -> EigenSystem {
    let n = h.dim();
    let (raw_values, raw_vectors) = if n == 1 {
        (vec![h.m[(0, 0)].re], CMatrix::identity(1, 1))
    } else {
        let se = SymmetricEigen::new(h.m.clone());
        (se.eigenvalues.iter().copied().collect::<Vec<_>>(), se.eigenvectors)
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw_values[i].total_cmp(&raw_values[j]));
    let values: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &raw_vectors.column(src));
    }

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= tolerance::EIGEN_TIE {
            end += 1;
        }
        if end - start > 1 {
            canonicalize_subspace(&mut vectors, start..end);
        }
        start = end;
    }
    for j in 0..n {
        let mut col = vectors.column(j).into_owned();
        fix_phase(&mut col);
        vectors.set_column(j, &col);
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match groups.last_mut() {
            Some(g) if values[i] - values[i - 1] < tolerance::DEGENERACY_GAP => g.push(i),
            _ => groups.push(vec![i]),
        }
    }

    EigenSystem {
        values,
        vectors,
        groups,
    }
}

/// Multiplies `v` by a phase so that its first non-negligible entry is real positive.
pub fn fix_phase(v: &mut CVector) {
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-10).copied() {
        let phase = z.conj() / z.norm();
        v.iter_mut().for_each(|x| *x *= phase);
    }
}

fn canonicalize_subspace(vectors: &mut CMatrix, range: std::ops::Range<usize>) {
    let n = vectors.nrows();
    let block = vectors.columns(range.start, range.len()).into_owned();
    let proj = &block * block.adjoint();
    let mut chosen: Vec<CVector> = Vec::with_capacity(range.len());
    for e in 0..n {
        if chosen.len() == range.len() {
            break;
        }
        let mut w = proj.column(e).into_owned();
        // two Gram-Schmidt passes keep the result orthonormal to rounding
        for _ in 0..2 {
            for u in &chosen {
                let overlap = u.dotc(&w);
                w -= u * overlap;
            }
        }
        let norm = w.norm();
        if norm > 1e-6 {
            chosen.push(w / Complex64::new(norm, 0.0));
        }
    }
    if chosen.len() == range.len() {
        for (k, u) in chosen.into_iter().enumerate() {
            vectors.set_column(range.start + k, &u);
        }
    }
}

fn spectral_map(h: &HermitianOperator, f: impl Fn(f64) -> f64) -> HermitianOperator {
    let es = eig(h);
    let mapped: Vec<f64> = es.values.iter().map(|&x| f(x)).collect();
    spectral_sum(&es.vectors, &mapped)
}

/// Base-2 logarithm on the support; eigenvalues at or below `clip` map to zero.
pub fn matrix_log_on_support(h: &HermitianOperator, clip: f64) -> Result<HermitianOperator> {
    let es = eig(h);
    let min = es.values.first().copied().unwrap_or(0.0);
    if min < -tolerance::NEGATIVITY {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    let logs: Vec<f64> = es
        .values
        .iter()
        .map(|&x| if x <= clip { 0.0 } else { x.log2() })
        .collect();
    Ok(spectral_sum(&es.vectors, &logs))
}

/// Base-2 spectral exponential, the inverse of [`matrix_log_on_support`] on full-rank input.
pub fn matrix_exp(h: &HermitianOperator) -> HermitianOperator {
    spectral_map(h, f64::exp2)
}

/// Kronecker product `x ⊗ y`.
pub fn tensor(x: &HermitianOperator, y: &HermitianOperator) -> HermitianOperator {
    HermitianOperator {
        m: x.m.kronecker(&y.m),
    }
}

/// Traces out one factor of a `d_A·d_B` operator, returning the factor named by `keep`.
pub fn partial_trace(
    h: &HermitianOperator,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<HermitianOperator> {
    let (da, db) = dims;
    if h.dim() != da * db {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: h.dim(),
        });
    }
    let m = &h.m;
    let out = match keep {
        Subsystem::A => CMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()
        }),
        Subsystem::B => CMatrix::from_fn(db, db, |k, l| {
            (0..da).map(|i| m[(i * db + k, i * db + l)]).sum()
        }),
    };
    Ok(HermitianOperator::symmetrized(out))
}

/// Max-abs entry of `xy - yx`.
pub fn commutator_norm(x: &HermitianOperator, y: &HermitianOperator) -> Result<f64> {
    check_same_dim(x, y)?;
    Ok(max_abs(&(&x.m * &y.m - &y.m * &x.m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eig_sorts_diagonal_ascending() {
        let es = eig(&HermitianOperator::from_real_diagonal(&[2.0, 1.0]));
        assert_eq!(es.values, vec![1.0, 2.0]);
        assert!((es.vectors[(1, 0)] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn eig_pauli_x() {
        let es = eig(&pauli_x());
        assert!((es.values[0] + 1.0).abs() < 1e-14);
        assert!((es.values[1] - 1.0).abs() < 1e-14);
        // phase convention: first component real positive
        for i in 0..2 {
            let v = es.vector(i);
            assert!(v[0].re > 0.0 && v[0].im.abs() < 1e-14);
        }
    }

    #[test]
    fn eig_marginal_of_example_family() {
        let b = 0.5;
        let es = eig(&HermitianOperator::from_real_diagonal(&[(1.0 + b) / 2.0, (1.0 - b) / 2.0]));
        assert!((es.values[0] - 0.25).abs() < 1e-15);
        assert!((es.values[1] - 0.75).abs() < 1e-15);
        assert!(!es.is_degenerate());
    }

    #[test]
    fn eig_degenerate_subspace_is_canonical() {
        // rotate I/2 ⊕ 1 by a unitary; the tied pair must come back as a canonical basis
        let es = eig(&HermitianOperator::from_real_diagonal(&[0.5, 0.5, 1.0]));
        assert_eq!(es.groups, vec![vec![0, 1], vec![2]]);
        assert!((es.vectors[(0, 0)] - c(1.0)).norm() < 1e-14);
        assert!((es.vectors[(1, 1)] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn log_examples() {
        let z = matrix_log_on_support(&HermitianOperator::identity(3), tolerance::SUPPORT_CLIP).unwrap();
        assert!(max_abs(z.matrix()) < 1e-14);
        let half = matrix_log_on_support(&HermitianOperator::from_real_diagonal(&[0.5, 0.5]), 1e-12).unwrap();
        assert!(half.distance(&HermitianOperator::from_real_diagonal(&[-1.0, -1.0])) < 1e-14);
        let pure = matrix_log_on_support(&HermitianOperator::from_real_diagonal(&[1.0, 0.0]), 1e-12).unwrap();
        assert!(max_abs(pure.matrix()) < 1e-14);
    }

    #[test]
    fn log_rejects_negative() {
        let err = matrix_log_on_support(&HermitianOperator::from_real_diagonal(&[1.0, -1e-6]), 1e-12);
        assert!(matches!(err, Err(Error::NotPositiveSemidefinite { .. })));
        // rounding-level negativity is tolerated
        assert!(matrix_log_on_support(&HermitianOperator::from_real_diagonal(&[1.0, -1e-11]), 1e-12).is_ok());
    }

    #[test]
    fn exp_examples() {
        let id = matrix_exp(&HermitianOperator::zeros(2));
        assert!(id.distance(&HermitianOperator::identity(2)) < 1e-15);
        let half = matrix_exp(&HermitianOperator::from_real_diagonal(&[-1.0, -1.0]));
        assert!(half.distance(&HermitianOperator::from_real_diagonal(&[0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn tensor_examples() {
        let i4 = tensor(&HermitianOperator::identity(2), &HermitianOperator::identity(2));
        assert!(i4.distance(&HermitianOperator::identity(4)) < 1e-15);
        let d = tensor(
            &HermitianOperator::from_real_diagonal(&[1.0, 0.0]),
            &HermitianOperator::from_real_diagonal(&[0.0, 1.0]),
        );
        assert!(d.distance(&HermitianOperator::from_real_diagonal(&[0.0, 1.0, 0.0, 0.0])) < 1e-15);
        // σz ⊗ σx couples |00⟩↔|01⟩ with +1 and |10⟩↔|11⟩ with -1
        let zx = tensor(&pauli_z(), &pauli_x());
        let m = zx.matrix();
        assert_eq!(m[(0, 1)], c(1.0));
        assert_eq!(m[(2, 3)], c(-1.0));
        assert_eq!(m[(0, 0)], c(0.0));
    }

    #[test]
    fn partial_trace_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = CVector::from_vec(vec![c(0.0), c(s), c(s), c(0.0)]);
        let bell = HermitianOperator::projector(&psi);
        let ra = partial_trace(&bell, (2, 2), Subsystem::A).unwrap();
        assert!(ra.distance(&HermitianOperator::identity(2).scaled(0.5)) < 1e-15);
        assert!(matches!(
            partial_trace(&bell, (3, 2), Subsystem::A),
            Err(Error::DimensionMismatch { expected: 6, found: 4 })
        ));
    }

    #[test]
    fn commutator_examples() {
        let a = HermitianOperator::from_real_diagonal(&[1.0, 2.0]);
        let b = HermitianOperator::from_real_diagonal(&[3.0, 4.0]);
        assert_eq!(commutator_norm(&a, &b).unwrap(), 0.0);
        assert!((commutator_norm(&pauli_z(), &pauli_x()).unwrap() - 2.0).abs() < 1e-15);
        assert!(commutator_norm(&a, &HermitianOperator::identity(3)).is_err());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(HermitianOperator::new(m), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn pauli_y_is_hermitian_with_unit_spectrum() {
        let v = pauli_y().eigenvalues();
        assert!((v[0] + 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
    }
}
