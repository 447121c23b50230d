//! Validated bipartite density matrices and the standard state families.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::operator::{
    self, pauli_x, pauli_z, partial_trace, tensor, CMatrix, CVector, HermitianOperator, Subsystem,
};
use crate::tolerance;

/// A density matrix on `C^{d_A} ⊗ C^{d_B}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    dims: (usize, usize),
    rho: HermitianOperator,
}

impl BipartiteState {
    /// Checks dimension, unit trace and positivity.
    pub fn new(rho: HermitianOperator, dims: (usize, usize)) -> Result<Self> {
        let (da, db) = dims;
        if da == 0 || db == 0 {
            return Err(Error::NotDensityMatrix("subsystem dimensions must be positive".into()));
        }
        if rho.dim() != da * db {
            return Err(Error::DimensionMismatch {
                expected: da * db,
                found: rho.dim(),
            });
        }
        validate_density_matrix(&rho)?;
        Ok(Self { dims, rho })
    }

    /// Wraps an operator that is a density matrix by construction.
    pub(crate) fn from_parts(rho: HermitianOperator, dims: (usize, usize)) -> Self {
        debug_assert_eq!(rho.dim(), dims.0 * dims.1);
        Self { dims, rho }
    }

    pub fn from_matrix(m: CMatrix, dims: (usize, usize)) -> Result<Self> {
        Self::new(HermitianOperator::new(m)?, dims)
    }

    /// The pure state |ψ⟩⟨ψ|; `psi` is normalized first.
    pub fn pure(psi: &CVector, dims: (usize, usize)) -> Result<Self> {
        let norm = psi.norm();
        if norm < 1e-12 {
            return Err(Error::InvalidParameters("zero state vector".into()));
        }
        let unit = psi / Complex64::new(norm, 0.0);
        Self::new(HermitianOperator::projector(&unit), dims)
    }

    pub fn product(rho_a: &HermitianOperator, rho_b: &HermitianOperator) -> Result<Self> {
        validate_density_matrix(rho_a)?;
        validate_density_matrix(rho_b)?;
        Ok(Self::from_parts(tensor(rho_a, rho_b), (rho_a.dim(), rho_b.dim())))
    }

    pub fn maximally_mixed(dims: (usize, usize)) -> Self {
        let n = dims.0 * dims.1;
        Self::from_parts(HermitianOperator::identity(n).scaled(1.0 / n as f64), dims)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    pub fn dim_of(&self, side: Subsystem) -> usize {
        match side {
            Subsystem::A => self.dims.0,
            Subsystem::B => self.dims.1,
        }
    }

    pub fn rho(&self) -> &HermitianOperator {
        &self.rho
    }

    pub fn marginal(&self, side: Subsystem) -> HermitianOperator {
        partial_trace(&self.rho, self.dims, side).expect("dims validated at construction")
    }

    pub fn rho_a(&self) -> HermitianOperator {
        self.marginal(Subsystem::A)
    }

    pub fn rho_b(&self) -> HermitianOperator {
        self.marginal(Subsystem::B)
    }

    pub fn purity(&self) -> f64 {
        let m = self.rho.matrix();
        (m * m).trace().re
    }

    /// The same state with the tensor factors exchanged, `(d_B, d_A)`.
    pub fn swapped(&self) -> Self {
        let (da, db) = self.dims;
        let m = self.rho.matrix();
        let idx = |i: usize| {
            let (a, b) = (i / db, i % db);
            b * da + a
        };
        let mut out = CMatrix::zeros(da * db, da * db);
        for r in 0..da * db {
            for c in 0..da * db {
                out[(idx(r), idx(c))] = m[(r, c)];
            }
        }
        Self::from_parts(HermitianOperator::symmetrized(out), (db, da))
    }

    /// `ρ_side ⊗ 1` (or `1 ⊗ ρ_B`) embedded in the full space.
    pub fn embedded_marginal(&self, side: Subsystem) -> HermitianOperator {
        let (da, db) = self.dims;
        match side {
            Subsystem::A => tensor(&self.rho_a(), &HermitianOperator::identity(db)),
            Subsystem::B => tensor(&HermitianOperator::identity(da), &self.rho_b()),
        }
    }

    /// Convex combination `(1-t)·self + t·other`.
    pub fn mix(&self, other: &BipartiteState, t: f64) -> Result<Self> {
        if other.dims != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::OutOfRange { name: "t", value: t });
        }
        let rho = self.rho.scaled(1.0 - t).plus(&other.rho.scaled(t))?;
        Ok(Self::from_parts(rho, self.dims))
    }
}

/// Unit trace within 1e-10 and no eigenvalue below -1e-10.
pub fn validate_density_matrix(rho: &HermitianOperator) -> Result<()> {
    let tr = rho.trace();
    if !tr.is_finite() || (tr - 1.0).abs() > tolerance::TRACE {
        return Err(Error::NotDensityMatrix(format!("trace {tr} differs from 1")));
    }
    let min = rho.eigenvalues().first().copied().unwrap_or(0.0);
    if min < -tolerance::NEGATIVITY {
        return Err(Error::NotDensityMatrix(format!(
            "negative eigenvalue {min:e}"
        )));
    }
    Ok(())
}

/// Orthogonal pure states with prior weights.
#[derive(Debug, Clone)]
pub struct PureStateEnsemble {
    pub dims: (usize, usize),
    pub members: Vec<(f64, CVector)>,
}

impl PureStateEnsemble {
    pub fn new(dims: (usize, usize), members: Vec<(f64, CVector)>) -> Result<Self> {
        let n = dims.0 * dims.1;
        check_weights(members.iter().map(|(w, _)| *w))?;
        for (_, v) in &members {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if (v.norm() - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidParameters(format!(
                    "ensemble vector has norm {}",
                    v.norm()
                )));
            }
        }
        Ok(Self { dims, members })
    }

    /// Largest `|⟨ψ_i|ψ_j⟩|` over distinct members.
    pub fn max_overlap(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, (_, u)) in self.members.iter().enumerate() {
            for (_, v) in &self.members[i + 1..] {
                worst = worst.max(u.dotc(v).norm());
            }
        }
        worst
    }

    /// Gram matrix of the member vectors.
    pub fn gram(&self) -> CMatrix {
        let k = self.members.len();
        CMatrix::from_fn(k, k, |i, j| self.members[i].1.dotc(&self.members[j].1))
    }

    pub fn density_matrix(&self) -> BipartiteState {
        let n = self.dims.0 * self.dims.1;
        let mut m = CMatrix::zeros(n, n);
        for (w, v) in &self.members {
            m += v * v.adjoint() * Complex64::new(*w, 0.0);
        }
        BipartiteState::from_parts(HermitianOperator::symmetrized(m), self.dims)
    }
}

fn check_weights(weights: impl Iterator<Item = f64>) -> Result<()> {
    let mut sum = 0.0;
    for w in weights {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::BadWeights(format!("negative or non-finite weight {w}")));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::BadWeights(format!("weights sum to {sum}")));
    }
    Ok(())
}

fn real_vector(entries: &[f64]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&x| Complex64::new(x, 0.0)))
}

fn kron_vec(u: &CVector, v: &CVector) -> CVector {
    u.kronecker(v)
}

/// `(1 + b σz⊗1 + c σx⊗σx) / 4` on two qubits.
pub fn example_state(b: f64, c: f64) -> Result<BipartiteState> {
    let id2 = HermitianOperator::identity(2);
    let rho = HermitianOperator::identity(4)
        .plus(&tensor(&pauli_z(), &id2).scaled(b))?
        .plus(&tensor(&pauli_x(), &pauli_x()).scaled(c))?
        .scaled(0.25);
    BipartiteState::new(rho, (2, 2)).map_err(|e| {
        Error::InvalidParameters(format!("b = {b}, c = {c} does not give a state: {e}"))
    })
}

/// `|Ψ±⟩ = (|01⟩ ± |10⟩)/√2`.
pub fn bell_psi(plus: bool) -> CVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    real_vector(&[0.0, s, if plus { s } else { -s }, 0.0])
}

/// `a |Ψ+⟩⟨Ψ+| + (1-a) |Ψ-⟩⟨Ψ-|`.
pub fn bell_mixture(a: f64) -> Result<BipartiteState> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::OutOfRange { name: "a", value: a });
    }
    PureStateEnsemble::new((2, 2), vec![(a, bell_psi(true)), (1.0 - a, bell_psi(false))])
        .map(|e| e.density_matrix())
}

/// The nine orthogonal product vectors on 3×3, in the order
/// `|1⟩|1⟩, |0⟩|0±1⟩, |2⟩|1±2⟩, |1±2⟩|0⟩, |0±1⟩|2⟩`.
pub fn teahouse_vectors() -> Vec<CVector> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket = |i: usize| {
        let mut v = [0.0; 3];
        v[i] = 1.0;
        real_vector(&v)
    };
    let sup = |i: usize, j: usize, sign: f64| {
        let mut v = [0.0; 3];
        v[i] = s;
        v[j] = sign * s;
        real_vector(&v)
    };
    vec![
        kron_vec(&ket(1), &ket(1)),
        kron_vec(&ket(0), &sup(0, 1, 1.0)),
        kron_vec(&ket(0), &sup(0, 1, -1.0)),
        kron_vec(&ket(2), &sup(1, 2, 1.0)),
        kron_vec(&ket(2), &sup(1, 2, -1.0)),
        kron_vec(&sup(1, 2, 1.0), &ket(0)),
        kron_vec(&sup(1, 2, -1.0), &ket(0)),
        kron_vec(&sup(0, 1, 1.0), &ket(2)),
        kron_vec(&sup(0, 1, -1.0), &ket(2)),
    ]
}

pub fn teahouse_ensemble(weights: &[f64]) -> Result<PureStateEnsemble> {
    if weights.len() != 9 {
        return Err(Error::BadWeights(format!("expected 9 weights, found {}", weights.len())));
    }
    let members = weights.iter().copied().zip(teahouse_vectors()).collect();
    let ensemble = PureStateEnsemble::new((3, 3), members)?;
    debug_assert!(ensemble.max_overlap() <= 1e-12);
    Ok(ensemble)
}

/// Equal weights on all nine teahouse vectors.
pub fn teahouse_equal_weights() -> [f64; 9] {
    [1.0 / 9.0; 9]
}

/// Weight doubled on the seventh and ninth vectors (1-based), renormalized.
pub fn teahouse_doubled_weights() -> [f64; 9] {
    let mut w = [1.0 / 11.0; 9];
    w[6] = 2.0 / 11.0;
    w[8] = 2.0 / 11.0;
    w
}

/// `Σ_a p_a |a⟩⟨a| ⊗ σ_a` for orthonormal `basis_a`.
pub fn zero_discord_state(
    p: &[f64],
    basis_a: &[CVector],
    sigmas_b: &[HermitianOperator],
) -> Result<BipartiteState> {
    if p.is_empty() || p.len() != basis_a.len() || p.len() != sigmas_b.len() {
        return Err(Error::InvalidParameters(format!(
            "{} weights, {} basis vectors, {} conditional states",
            p.len(),
            basis_a.len(),
            sigmas_b.len()
        )));
    }
    check_weights(p.iter().copied())?;
    let da = basis_a[0].len();
    if basis_a.len() > da {
        return Err(Error::InvalidParameters(format!(
            "{} projectors on a {da}-dimensional subsystem",
            basis_a.len()
        )));
    }
    let db = sigmas_b[0].dim();
    let mut deviation: f64 = 0.0;
    for (i, u) in basis_a.iter().enumerate() {
        if u.len() != da {
            return Err(Error::DimensionMismatch {
                expected: da,
                found: u.len(),
            });
        }
        for (j, v) in basis_a.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            deviation = deviation.max((u.dotc(v) - Complex64::new(target, 0.0)).norm());
        }
    }
    if deviation > tolerance::ORTHONORMALITY {
        return Err(Error::NonOrthogonalBasis { deviation });
    }
    let mut m = CMatrix::zeros(da * db, da * db);
    for ((&w, u), sigma) in p.iter().zip(basis_a).zip(sigmas_b) {
        if sigma.dim() != db {
            return Err(Error::DimensionMismatch {
                expected: db,
                found: sigma.dim(),
            });
        }
        validate_density_matrix(sigma)?;
        let block = tensor(&HermitianOperator::projector(u), sigma);
        m += block.matrix() * Complex64::new(w, 0.0);
    }
    BipartiteState::new(HermitianOperator::symmetrized(m), (da, db))
}

/// Diagonal state `Σ_ab w_ab |a⟩⟨a| ⊗ |b⟩⟨b|` from a `d_A × d_B` weight table.
pub fn classical_classical_state(w: &DMatrix<f64>) -> Result<BipartiteState> {
    let (da, db) = (w.nrows(), w.ncols());
    if da == 0 || db == 0 {
        return Err(Error::BadWeights("empty weight table".into()));
    }
    check_weights(w.iter().copied())?;
    let mut diag = Vec::with_capacity(da * db);
    for a in 0..da {
        for b in 0..db {
            diag.push(w[(a, b)]);
        }
    }
    Ok(BipartiteState::from_parts(
        HermitianOperator::from_real_diagonal(&diag),
        (da, db),
    ))
}

/// Random state of the given rank: the marginal of a Haar-random pure state on
/// `C^{d_A d_B} ⊗ C^{rank}`. Deterministic in `seed`.
pub fn random_state(dims: (usize, usize), rank: usize, seed: u64) -> Result<BipartiteState> {
    let n = dims.0 * dims.1;
    if rank == 0 || rank > n {
        return Err(Error::BadRank { rank, max: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = random_density(n, rank, &mut rng);
    BipartiteState::new(rho, dims)
}

/// Induced-measure random density matrix on `C^n` with the given rank.
pub fn random_density<R: Rng>(n: usize, rank: usize, rng: &mut R) -> HermitianOperator {
    let g = CMatrix::from_fn(n, rank, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    HermitianOperator::symmetrized(m / Complex64::new(tr, 0.0))
}

/// Haar-random orthonormal basis of `C^d` (columns of a QR-corrected Ginibre matrix).
pub fn random_basis<R: Rng>(d: usize, rng: &mut R) -> Vec<CVector> {
    let g = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut out: Vec<CVector> = Vec::with_capacity(d);
    for j in 0..d {
        let mut w = g.column(j).into_owned();
        for _ in 0..2 {
            for u in &out {
                let overlap = u.dotc(&w);
                w -= u * overlap;
            }
        }
        let norm = w.norm();
        out.push(w / Complex64::new(norm, 0.0));
    }
    out
}

pub(crate) fn outside_support_weight(state: &HermitianOperator, support_of: &HermitianOperator) -> f64 {
    let es = operator::eig(support_of);
    let mut weight = 0.0;
    for (i, &lambda) in es.values.iter().enumerate() {
        if lambda <= tolerance::SUPPORT_CLIP {
            let v = es.vector(i);
            weight += (v.adjoint() * state.matrix() * &v)[(0, 0)].re;
        }
    }
    weight
}
