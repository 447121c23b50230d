//! Numerical thresholds shared across the crate.
//!
//! Every comparison against zero in the library goes through one of these
//! constants so that the classification bands stay consistent between modules.

/// Max-abs deviation from the conjugate transpose accepted for a Hermitian operator.
pub const HERMITICITY: f64 = 1e-12;

/// Eigenvalues below this (negated) are genuine negativity, not rounding noise.
pub const NEGATIVITY: f64 = 1e-10;

/// Eigenvalues at or below this are treated as zero (outside the support).
pub const SUPPORT_CLIP: f64 = 1e-12;

/// Adjacent eigenvalues closer than this belong to one degeneracy group.
pub const DEGENERACY_GAP: f64 = 1e-8;

/// Eigenvalues closer than this are exact ties; their eigenvectors are canonicalized.
pub const EIGEN_TIE: f64 = 1e-12;

/// Allowed deviation of a density-matrix trace from one.
pub const TRACE: f64 = 1e-10;

/// Orthonormality / completeness tolerance for measurement bases.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Outcomes with probability at or below this contribute nothing.
pub const IMPOSSIBLE_OUTCOME: f64 = 1e-12;

/// Discord values below this (in bits) are reported as zero.
pub const ZERO_DISCORD: f64 = 1e-7;

/// Decision threshold for the commutator and eigen-structure tests.
pub const COMMUTATOR: f64 = 1e-8;

/// A decisive quantity within this factor of its threshold is ambiguous.
pub const AMBIGUITY_FACTOR: f64 = 10.0;
