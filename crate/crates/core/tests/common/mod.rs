#![allow(dead_code)]

use discordant::states::bell_psi;
use discordant::{
    BipartiteState, CMatrix, CVector, HermitianOperator, MeasurementParameters, ProjectiveMeasurement, Subsystem,
};
use num_complex::Complex64;

pub fn measurement(angles: &[f64], d: usize, side: Subsystem) -> ProjectiveMeasurement {
    let k = MeasurementParameters::count(d);
    ProjectiveMeasurement::from_parameters(&MeasurementParameters(angles[..k].to_vec()), d)
        .unwrap()
        .on(side)
}

pub fn unitary(angles: &[f64], d: usize) -> CMatrix {
    let m = measurement(angles, d, Subsystem::A);
    CMatrix::from_columns(m.basis())
}

/// Hermitian matrix from `2n²` reals: real parts then imaginary parts, symmetrized.
pub fn hermitian(n: usize, raw: &[f64]) -> HermitianOperator {
    let m = CMatrix::from_fn(n, n, |r, c| Complex64::new(raw[r * n + c], raw[n * n + r * n + c]));
    HermitianOperator::new((&m + m.adjoint()) * Complex64::new(0.5, 0.0)).unwrap()
}

/// Bell-diagonal weights rotated by local unitaries; the A marginal is always I/2.
pub fn rotated_bell_diagonal(weights: [f64; 4], angles_a: &[f64], angles_b: &[f64]) -> BipartiteState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x: f64| Complex64::new(x, 0.0);
    let phi = |sign: f64| CVector::from_vec(vec![c(s), c(0.0), c(0.0), c(sign * s)]);
    let bells = [phi(1.0), phi(-1.0), bell_psi(true), bell_psi(false)];
    let total: f64 = weights.iter().sum();
    let u = unitary(angles_a, 2).kronecker(&unitary(angles_b, 2));
    let mut rho = CMatrix::zeros(4, 4);
    for (w, v) in weights.iter().zip(&bells) {
        let rv = &u * v;
        rho += (&rv * rv.adjoint()) * c(w / total);
    }
    BipartiteState::from_matrix(rho, (2, 2)).unwrap()
}

pub fn pure_state(dims: (usize, usize), raw: &[f64]) -> BipartiteState {
    let n = dims.0 * dims.1;
    let v = CVector::from_fn(n, |i, _| Complex64::new(raw[i], raw[n + i]));
    let norm = v.norm();
    BipartiteState::pure(&(v / Complex64::new(norm, 0.0)), dims).unwrap()
}
