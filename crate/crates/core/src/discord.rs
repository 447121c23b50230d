//! Discord measures, their optimization over projective measurements, and
//! zero-discord classification.
//!
//! Three one-way measures are provided for a measurement `Π` on one side:
//!
//! * `D1^Π = S(ρ_A) + S(ρ_B|Π) - S(ρ_AB)`, minimized over `Π`;
//! * `D2^Π = H(A^Π) + S(ρ_B|Π) - S(ρ_AB) = S(ρ^Π) - S(ρ_AB)`, minimized over `Π`;
//! * `D3`, the `D2` functional at the eigenbasis of the measured marginal.
//!
//! plus the symmetric measurement-induced disturbance. All values are in
//! bits, and the minimization is over rank-1 projective measurements only.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::correlations::{binary_entropy, entropy_unchecked, Entropies, JointDistribution};
use crate::error::{Error, Result};
use crate::measurement::{blocks_on_first, oriented, post_measurement_state, MeasurementParameters, ProjectiveMeasurement};
use crate::operator::{commutator_norm, eig, max_abs, CMatrix, CVector, EigenSystem, HermitianOperator, Subsystem};
use crate::optimize::{multistart_minimize, OptimizerConfig};
use crate::states::BipartiteState;
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiscordMeasure {
    D1,
    D2,
    D3,
    #[serde(rename = "D3SYM")]
    D3Sym,
}

impl std::fmt::Display for DiscordMeasure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiscordMeasure::D1 => "D1",
            DiscordMeasure::D2 => "D2",
            DiscordMeasure::D3 => "D3",
            DiscordMeasure::D3Sym => "D3sym",
        })
    }
}

impl std::str::FromStr for DiscordMeasure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "d1" => Ok(DiscordMeasure::D1),
            "d2" => Ok(DiscordMeasure::D2),
            "d3" => Ok(DiscordMeasure::D3),
            "d3sym" => Ok(DiscordMeasure::D3Sym),
            other => Err(format!("unknown measure `{other}` (expected D1, D2, D3 or D3sym)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerDiagnostics {
    /// Total number of starting points (seeds plus random restarts).
    pub restarts_used: usize,
    pub best_restart: usize,
    pub best_per_restart: Vec<f64>,
    pub converged: bool,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
pub struct DiscordReport {
    pub measure: DiscordMeasure,
    pub side: Subsystem,
    pub value: f64,
    /// Argmin for D1/D2; `None` for D3 and D3sym where the basis is forced.
    pub optimal_measurement: Option<ProjectiveMeasurement>,
    /// The classical-correlation counterpart `J` of the reported discord.
    pub j_value: f64,
    pub diagnostics: Option<OptimizerDiagnostics>,
    /// Set when a marginal entering the forced eigenbasis is degenerate.
    pub degenerate: bool,
    /// For degenerate D3: minimum over all bases diagonalizing the marginal.
    pub restricted_infimum: Option<f64>,
    /// Disagreement between the two algebraic forms of the value, where one exists.
    pub consistency_residual: f64,
}

/// The measurement-dependent pieces of the discord functionals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasuredParts {
    /// `H(A^Π)`, entropy of the outcome distribution.
    pub measured_entropy: f64,
    /// `S(ρ_B|Π)`, averaged entropy of the conditional states.
    pub conditional_entropy: f64,
}

/// A state oriented so that the measured side is the first tensor factor,
/// with its entropies cached for repeated functional evaluations.
struct Measured {
    state: BipartiteState,
    entropies: Entropies,
}

impl Measured {
    fn new(state: &BipartiteState, side: Subsystem) -> Self {
        let state = oriented(state, side).into_owned();
        let entropies = Entropies::of(&state);
        Self { state, entropies }
    }

    fn d(&self) -> usize {
        self.state.dims().0
    }

    fn parts(&self, basis: &[CVector]) -> MeasuredParts {
        let blocks = blocks_on_first(self.state.rho().matrix(), self.state.dims(), basis);
        let mut measured_entropy = 0.0;
        let mut conditional_entropy = 0.0;
        for block in &blocks {
            let p = block.trace().re;
            if p <= tolerance::IMPOSSIBLE_OUTCOME {
                continue;
            }
            measured_entropy -= p * p.log2();
            let normalized = block / Complex64::new(p, 0.0);
            conditional_entropy += p * crate::correlations::entropy_of_block(&normalized);
        }
        MeasuredParts {
            measured_entropy,
            conditional_entropy,
        }
    }

    fn d1(&self, parts: &MeasuredParts) -> f64 {
        self.entropies.s_a + parts.conditional_entropy - self.entropies.s_ab
    }

    fn d2(&self, parts: &MeasuredParts) -> f64 {
        parts.measured_entropy + parts.conditional_entropy - self.entropies.s_ab
    }

    fn functional(&self, measure: DiscordMeasure, basis: &[CVector]) -> f64 {
        let parts = self.parts(basis);
        match measure {
            DiscordMeasure::D1 => self.d1(&parts),
            _ => self.d2(&parts),
        }
    }

    fn chart_objective(&self, measure: DiscordMeasure) -> impl Fn(&[f64]) -> f64 + Sync + '_ {
        let d = self.d();
        move |x: &[f64]| {
            let m = ProjectiveMeasurement::from_parameters(&MeasurementParameters(x.to_vec()), d)
                .expect("parameter count fixed by the chart");
            self.functional(measure, m.basis())
        }
    }

    fn marginal_eigensystem(&self) -> EigenSystem {
        eig(&self.state.rho_a())
    }
}

fn check_measurement(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<()> {
    let d = state.dim_of(m.subsystem());
    if d != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: m.dim(),
        });
    }
    Ok(())
}

/// Value of a discord functional at a fixed measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordAt {
    pub value: f64,
    /// `J^Π = S(ρ_B) - S(ρ_B|Π)` for D1; `S(ρ_A) + S(ρ_B) - S(ρ^Π)` for D2.
    pub j_value: f64,
    pub parts: MeasuredParts,
}

/// `D1^Π` together with `J^Π`.
pub fn discord_d1_at(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<DiscordAt> {
    check_measurement(state, m)?;
    let measured = Measured::new(state, m.subsystem());
    let parts = measured.parts(m.basis());
    Ok(DiscordAt {
        value: measured.d1(&parts),
        j_value: measured.entropies.s_b - parts.conditional_entropy,
        parts,
    })
}

/// `D2^Π`, cross-checked against `S(ρ^Π) - S(ρ_AB)` to 1e-9.
pub fn discord_d2_at(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<DiscordAt> {
    check_measurement(state, m)?;
    let measured = Measured::new(state, m.subsystem());
    let parts = measured.parts(m.basis());
    let value = measured.d2(&parts);
    let post = post_measurement_state(state, m)?;
    let direct = entropy_unchecked(post.rho()) - measured.entropies.s_ab;
    let residual = (direct - value).abs();
    if residual > 1e-9 {
        return Err(Error::Inconsistent {
            check: "D2 block entropies vs post-measurement entropy",
            residual,
        });
    }
    Ok(DiscordAt {
        value,
        j_value: measured.entropies.s_a + measured.entropies.s_b - (value + measured.entropies.s_ab),
        parts,
    })
}

/// Minimizes D1 or D2 over projective measurements on `side`.
///
/// The eigenbasis of the measured marginal is start 0 when enabled in
/// `config`, so the D2 result never exceeds D3.
pub fn optimize_discord(
    measure: DiscordMeasure,
    state: &BipartiteState,
    side: Subsystem,
    config: &OptimizerConfig,
) -> Result<DiscordReport> {
    if !matches!(measure, DiscordMeasure::D1 | DiscordMeasure::D2) {
        return Err(Error::InvalidParameters(format!("{measure} is not an optimized measure")));
    }
    let measured = Measured::new(state, side);
    let d = measured.d();
    let mut seeds = Vec::new();
    if config.include_eigenbasis_seed {
        let eigen = ProjectiveMeasurement::from_eigensystem(&measured.marginal_eigensystem(), Subsystem::A);
        seeds.push(eigen.parameters().0);
    }
    let objective = measured.chart_objective(measure);
    let run = multistart_minimize(&objective, MeasurementParameters::count(d), seeds, config);

    let best = ProjectiveMeasurement::from_parameters(&MeasurementParameters(run.x.clone()), d)?.on(side);
    let at = match measure {
        DiscordMeasure::D1 => discord_d1_at(state, &best)?,
        _ => discord_d2_at(state, &best)?,
    };
    let j_value = match measure {
        DiscordMeasure::D1 => measured.entropies.mutual_information() - at.value,
        _ => at.j_value,
    };
    Ok(DiscordReport {
        measure,
        side,
        value: at.value,
        optimal_measurement: Some(best),
        j_value,
        diagnostics: Some(OptimizerDiagnostics {
            restarts_used: run.per_start.len(),
            best_restart: run.best_start,
            best_per_restart: run.per_start,
            converged: run.converged,
            evaluations: run.evaluations,
        }),
        degenerate: false,
        restricted_infimum: None,
        consistency_residual: (at.value - run.value).abs(),
    })
}

/// Restarts used for the degenerate-marginal bracket of D3.
pub const D3_BRACKET_RESTARTS: usize = 50;

/// D3 at the eigenbasis of the measured marginal.
///
/// When the marginal is degenerate the eigenbasis follows the convention of
/// [`eig`], `degenerate` is set, and `restricted_infimum` holds the smallest
/// value over all bases that still diagonalize the marginal.
pub fn discord_d3(state: &BipartiteState, side: Subsystem) -> Result<DiscordReport> {
    let measured = Measured::new(state, side);
    let es = measured.marginal_eigensystem();
    let star = ProjectiveMeasurement::from_eigensystem(&es, side);
    let parts = measured.parts(star.basis());
    let e = measured.entropies;
    let value = e.s_a + parts.conditional_entropy - e.s_ab;

    let post = post_measurement_state(state, &star)?;
    let post_entropies = Entropies::of(&post);
    let alternate = post_entropies.s_ab - e.s_ab;
    let residual = (alternate - value).abs();
    if residual > 1e-9 {
        return Err(Error::Inconsistent {
            check: "D3 eigenbasis forms",
            residual,
        });
    }

    let degenerate = es.is_degenerate();
    let restricted_infimum = degenerate.then(|| restricted_d3_infimum(&measured, &es).min(value));
    Ok(DiscordReport {
        measure: DiscordMeasure::D3,
        side,
        value,
        optimal_measurement: None,
        j_value: post_entropies.mutual_information(),
        diagnostics: None,
        degenerate,
        restricted_infimum,
        consistency_residual: residual,
    })
}

fn restricted_d3_infimum(measured: &Measured, es: &EigenSystem) -> f64 {
    let groups: Vec<&Vec<usize>> = es.groups.iter().filter(|g| g.len() > 1).collect();
    let counts: Vec<usize> = groups.iter().map(|g| MeasurementParameters::count(g.len())).collect();
    let total: usize = counts.iter().sum();
    let base = es.basis();
    let objective = |x: &[f64]| {
        let mut basis = base.clone();
        let mut offset = 0;
        for (g, &k) in groups.iter().zip(&counts) {
            let local = ProjectiveMeasurement::from_parameters(&MeasurementParameters(x[offset..offset + k].to_vec()), g.len())
                .expect("count matches group size");
            for (slot, u) in g.iter().zip(local.basis()) {
                let mut v = CVector::zeros(measured.d());
                for (coef, &src) in u.iter().zip(g.iter()) {
                    v += &base[src] * *coef;
                }
                basis[*slot] = v;
            }
            offset += k;
        }
        measured.functional(DiscordMeasure::D2, &basis)
    };
    let config = OptimizerConfig::default().with_restarts(D3_BRACKET_RESTARTS);
    multistart_minimize(&objective, total, vec![vec![0.0; total]], &config).value
}

/// Measurement-induced disturbance `I(ρ) - I(ρ^{Π*_A ⊗ Π*_B})`.
pub fn discord_d3_symmetric(state: &BipartiteState) -> Result<DiscordReport> {
    let (da, db) = state.dims();
    let es_a = eig(&state.rho_a());
    let es_b = eig(&state.rho_b());
    let rho = state.rho().matrix();
    let table = nalgebra::DMatrix::from_fn(da, db, |a, b| {
        let v = es_a.vector(a).kronecker(&es_b.vector(b));
        (v.adjoint() * rho * &v)[(0, 0)].re.max(0.0)
    });
    let sum: f64 = table.iter().sum();
    let joint = JointDistribution::new(table / sum)?;
    let j_sym = joint.mutual_information();
    let total = Entropies::of(state).mutual_information();
    Ok(DiscordReport {
        measure: DiscordMeasure::D3Sym,
        side: Subsystem::A,
        value: total - j_sym,
        optimal_measurement: None,
        j_value: j_sym,
        diagnostics: None,
        degenerate: es_a.is_degenerate() || es_b.is_degenerate(),
        restricted_infimum: None,
        consistency_residual: 0.0,
    })
}

/// `1 - H₂(a)`, the discord of `a|Ψ+⟩⟨Ψ+| + (1-a)|Ψ-⟩⟨Ψ-|` for every
/// one-way measure and either side.
///
/// The variant `a·log₂a - (1-a)·log₂a + 1` is not used: it does not vanish
/// at `a = 1/2`, while the optimized discord does.
pub fn bell_mixture_discord_closed_form(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::OutOfRange { name: "a", value: a });
    }
    Ok(1.0 - binary_entropy(a))
}

/// One-way quantum deficit, i.e. the optimized D2.
pub fn one_way_deficit(state: &BipartiteState, side: Subsystem, config: &OptimizerConfig) -> Result<f64> {
    Ok(optimize_discord(DiscordMeasure::D2, state, side, config)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Zero,
    Nonzero,
    Ambiguous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassificationMethod {
    Commutator,
    Eigenbasis,
    Eigenstructure,
}

#[derive(Debug, Clone)]
pub struct ZeroDiscordVerdict {
    pub side: Subsystem,
    pub verdict: Verdict,
    pub method: ClassificationMethod,
    /// `max|[ρ_side ⊗ 1, ρ_AB]|`.
    pub commutator_norm: f64,
    /// D1 at the candidate basis, when one was evaluated.
    pub residual_discord: Option<f64>,
    /// Largest commutator among the operator blocks, when the eigen-structure test ran.
    pub eigenstructure_norm: Option<f64>,
    /// Basis in which the state is block diagonal, for ZERO verdicts.
    pub witness: Option<ProjectiveMeasurement>,
}

fn band(x: f64, threshold: f64) -> Verdict {
    if x > threshold * tolerance::AMBIGUITY_FACTOR {
        Verdict::Nonzero
    } else if x < threshold / tolerance::AMBIGUITY_FACTOR {
        Verdict::Zero
    } else {
        Verdict::Ambiguous
    }
}

/// Decides whether `state` has zero one-way discord with respect to `side`.
///
/// 1. A non-vanishing `[ρ_side ⊗ 1, ρ]` rules zero discord out.
/// 2. With a non-degenerate marginal its eigenbasis is the only candidate,
///    and D1 is evaluated there.
/// 3. With a degenerate marginal the state is split into operator blocks
///    `M_ij = ⟨i|_other ρ |j⟩_other` on the measured side; zero discord holds
///    iff these blocks commute pairwise (the family is closed under adjoint,
///    so commuting implies normal and jointly diagonalizable).
///
/// A decisive quantity within a factor 10 of its threshold yields AMBIGUOUS.
pub fn classify_zero_discord(state: &BipartiteState, side: Subsystem) -> Result<ZeroDiscordVerdict> {
    let commutator = commutator_norm(&state.embedded_marginal(side), state.rho())?;
    let mut verdict = ZeroDiscordVerdict {
        side,
        verdict: band(commutator, tolerance::COMMUTATOR),
        method: ClassificationMethod::Commutator,
        commutator_norm: commutator,
        residual_discord: None,
        eigenstructure_norm: None,
        witness: None,
    };
    if verdict.verdict != Verdict::Zero {
        return Ok(verdict);
    }

    let measured = Measured::new(state, side);
    let es = measured.marginal_eigensystem();
    let candidate = if !es.is_degenerate() {
        verdict.method = ClassificationMethod::Eigenbasis;
        ProjectiveMeasurement::from_eigensystem(&es, side)
    } else {
        verdict.method = ClassificationMethod::Eigenstructure;
        let blocks = operator_blocks(&measured.state);
        let norm = max_pairwise_commutator(&blocks);
        verdict.eigenstructure_norm = Some(norm);
        verdict.verdict = band(norm, tolerance::COMMUTATOR);
        if verdict.verdict != Verdict::Zero {
            return Ok(verdict);
        }
        joint_eigenbasis(&blocks, measured.d())?.on(side)
    };

    let residual = discord_d1_at(state, &candidate)?.value;
    verdict.residual_discord = Some(residual);
    verdict.verdict = match (verdict.method, band(residual, tolerance::ZERO_DISCORD)) {
        (_, Verdict::Zero) => Verdict::Zero,
        // the block test already decided; a large residual means the witness failed
        (ClassificationMethod::Eigenstructure, _) => Verdict::Ambiguous,
        (_, v) => v,
    };
    if verdict.verdict == Verdict::Zero {
        verdict.witness = Some(candidate);
    }
    Ok(verdict)
}

/// `M_ij` as operators on the first factor, indexed by the second factor's basis.
fn operator_blocks(state: &BipartiteState) -> Vec<CMatrix> {
    let (da, db) = state.dims();
    let rho = state.rho().matrix();
    let mut out = Vec::with_capacity(db * db);
    for i in 0..db {
        for j in 0..db {
            out.push(CMatrix::from_fn(da, da, |a, b| rho[(a * db + i, b * db + j)]));
        }
    }
    out
}

fn max_pairwise_commutator(blocks: &[CMatrix]) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, x) in blocks.iter().enumerate() {
        for y in &blocks[k + 1..] {
            worst = worst.max(max_abs(&(x * y - y * x)));
        }
    }
    worst
}

/// Eigenbasis of a generic real combination of the Hermitian parts of the blocks.
fn joint_eigenbasis(blocks: &[CMatrix], d: usize) -> Result<ProjectiveMeasurement> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut combo = CMatrix::zeros(d, d);
    for m in blocks {
        let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let anti = (m - m.adjoint()) * Complex64::new(0.0, -0.5);
        combo += herm * Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        combo += anti * Complex64::new(rng.random_range(-1.0..1.0), 0.0);
    }
    let es = eig(&HermitianOperator::symmetrized(combo));
    Ok(ProjectiveMeasurement::from_eigensystem(&es, Subsystem::A))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{mutual_information, von_neumann_entropy};
    use crate::measurement::post_measurement_state;
    use crate::states::{
        bell_mixture, classical_classical_state, example_state, random_basis, random_density, random_state,
        teahouse_doubled_weights, teahouse_ensemble, teahouse_equal_weights, zero_discord_state,
    };
    use std::f64::consts::PI;

    fn sigma_x_basis() -> ProjectiveMeasurement {
        ProjectiveMeasurement::from_parameters(&MeasurementParameters(vec![PI / 2.0, 0.0]), 2).unwrap()
    }

    fn example_s_ab() -> f64 {
        let r = 0.5f64.sqrt();
        let lo = (1.0 - r) / 4.0;
        let hi = (1.0 + r) / 4.0;
        -2.0 * (lo * lo.log2() + hi * hi.log2())
    }

    #[test]
    fn d1_at_examples() {
        let zero = example_state(1.0, 0.0).unwrap();
        let z = ProjectiveMeasurement::computational(2, Subsystem::A);
        assert!(discord_d1_at(&zero, &z).unwrap().value.abs() < 1e-12);

        let s = example_state(0.5, 0.5).unwrap();
        let expected = binary_entropy(0.25) + 1.0 - example_s_ab();
        assert!((discord_d1_at(&s, &z).unwrap().value - expected).abs() < 1e-12);

        let bell = bell_mixture(1.0).unwrap();
        let m = ProjectiveMeasurement::from_parameters(&MeasurementParameters(vec![1.1, 0.3]), 2).unwrap();
        assert!((discord_d1_at(&bell, &m).unwrap().value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn d2_at_examples() {
        let s = example_state(0.5, 0.5).unwrap();
        let x = sigma_x_basis();
        let expected = 1.0 + binary_entropy(0.75) - example_s_ab();
        assert!((discord_d2_at(&s, &x).unwrap().value - expected).abs() < 1e-12);

        let es = eig(&s.rho_a());
        let star = ProjectiveMeasurement::from_eigensystem(&es, Subsystem::A);
        let d1 = discord_d1_at(&s, &star).unwrap().value;
        let d2 = discord_d2_at(&s, &star).unwrap().value;
        assert!((d1 - d2).abs() < 1e-12);
    }

    #[test]
    fn d1_d2_relation_at_fixed_measurement() {
        for seed in 0..20 {
            let s = random_state((2, 3), 6, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = ProjectiveMeasurement::from_basis(random_basis(2, &mut rng), Subsystem::A).unwrap();
            let d1 = discord_d1_at(&s, &m).unwrap();
            let d2 = discord_d2_at(&s, &m).unwrap();
            let s_a = von_neumann_entropy(&s.rho_a()).unwrap();
            assert!((d1.value - (d2.value - (d2.parts.measured_entropy - s_a))).abs() < 1e-10);
        }
    }

    #[test]
    fn optimized_example_values() {
        let s = example_state(0.5, 0.5).unwrap();
        let cfg = OptimizerConfig::default();
        let d1 = optimize_discord(DiscordMeasure::D1, &s, Subsystem::A, &cfg).unwrap();
        // minimum sits at the σx basis: 2·H₂(1/4) - S(ρ_AB)
        let expected = 2.0 * binary_entropy(0.25) - example_s_ab();
        assert!((d1.value - expected).abs() < 1e-8, "{}", d1.value);
        let d2 = optimize_discord(DiscordMeasure::D2, &s, Subsystem::A, &cfg).unwrap();
        assert!((d2.value - 0.20).abs() < 5e-3, "{}", d2.value);
        let d3 = discord_d3(&s, Subsystem::A).unwrap();
        assert!((d3.value - 0.21).abs() < 5e-3, "{}", d3.value);
        assert!(d1.value < d2.value && d2.value <= d3.value);
    }

    #[test]
    fn report_value_matches_optimal_measurement() {
        let s = random_state((2, 2), 3, 4).unwrap();
        let r = optimize_discord(DiscordMeasure::D1, &s, Subsystem::B, &OptimizerConfig::default()).unwrap();
        let m = r.optimal_measurement.clone().unwrap();
        assert_eq!(m.subsystem(), Subsystem::B);
        assert!((discord_d1_at(&s, &m).unwrap().value - r.value).abs() < 1e-8);
        assert!(r.consistency_residual < 1e-12);
    }

    #[test]
    fn bell_mixture_quarter() {
        let s = bell_mixture(0.25).unwrap();
        let r = optimize_discord(DiscordMeasure::D1, &s, Subsystem::A, &OptimizerConfig::default()).unwrap();
        let closed = bell_mixture_discord_closed_form(0.25).unwrap();
        assert!((r.value - closed).abs() < 1e-6);
        assert!((closed - 0.188_721_875_540_867).abs() < 1e-12);
    }

    #[test]
    fn closed_form_cases() {
        assert!(bell_mixture_discord_closed_form(0.5).unwrap().abs() < 1e-15);
        assert!((bell_mixture_discord_closed_form(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((bell_mixture_discord_closed_form(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(bell_mixture_discord_closed_form(-0.1).is_err());
    }

    #[test]
    fn d3_zero_and_pure_cases() {
        let zero = example_state(1.0, 0.0).unwrap();
        assert!(discord_d3(&zero, Subsystem::A).unwrap().value.abs() < 1e-12);

        let pure = random_state((2, 3), 1, 17).unwrap();
        let s_a = von_neumann_entropy(&pure.rho_a()).unwrap();
        let d3 = discord_d3(&pure, Subsystem::A).unwrap();
        assert!((d3.value - s_a).abs() < 1e-9);
        let post = post_measurement_state(&pure, &ProjectiveMeasurement::from_eigensystem(&eig(&pure.rho_a()), Subsystem::A)).unwrap();
        assert!((d3.j_value - mutual_information(&post)).abs() < 1e-12);
    }

    #[test]
    fn d3_degenerate_reports_bracket() {
        // zero discord in a rotated basis with a maximally mixed marginal
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let basis = random_basis(2, &mut rng);
        let sig = [random_density(2, 1, &mut rng), random_density(2, 2, &mut rng)];
        let s = zero_discord_state(&[0.5, 0.5], &basis, &sig).unwrap();
        let d3 = discord_d3(&s, Subsystem::A).unwrap();
        assert!(d3.degenerate);
        assert!(d3.restricted_infimum.unwrap() < 1e-7, "{:?}", d3.restricted_infimum);
        assert!(d3.value >= d3.restricted_infimum.unwrap());
    }

    #[test]
    fn d3_symmetric_cases() {
        let w = nalgebra::DMatrix::from_row_slice(2, 3, &[0.1, 0.2, 0.05, 0.3, 0.15, 0.2]);
        let cc = classical_classical_state(&w).unwrap();
        assert!(discord_d3_symmetric(&cc).unwrap().value.abs() < 1e-12);

        let bell = bell_mixture(1.0).unwrap();
        let r = discord_d3_symmetric(&bell).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        assert!(r.degenerate);
    }

    #[test]
    fn classify_teahouse() {
        let equal = teahouse_ensemble(&teahouse_equal_weights()).unwrap().density_matrix();
        for side in [Subsystem::A, Subsystem::B] {
            assert_eq!(classify_zero_discord(&equal, side).unwrap().verdict, Verdict::Zero);
        }
        let doubled = teahouse_ensemble(&teahouse_doubled_weights()).unwrap().density_matrix();
        let v = classify_zero_discord(&doubled, Subsystem::A).unwrap();
        assert_eq!(v.verdict, Verdict::Nonzero);
        assert_eq!(v.method, ClassificationMethod::Commutator);
    }

    #[test]
    fn classify_bell_mixtures() {
        let half = bell_mixture(0.5).unwrap();
        for side in [Subsystem::A, Subsystem::B] {
            let v = classify_zero_discord(&half, side).unwrap();
            assert_eq!(v.verdict, Verdict::Zero);
            assert_eq!(v.method, ClassificationMethod::Eigenstructure);
            assert!(v.witness.is_some());
        }
        let v = classify_zero_discord(&bell_mixture(0.3).unwrap(), Subsystem::A).unwrap();
        assert_eq!(v.verdict, Verdict::Nonzero);
        assert_eq!(v.method, ClassificationMethod::Eigenstructure);
    }

    #[test]
    fn classify_nondegenerate_zero_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let basis = random_basis(3, &mut rng);
        let sig: Vec<_> = (0..3).map(|_| random_density(2, 2, &mut rng)).collect();
        let s = zero_discord_state(&[0.2, 0.3, 0.5], &basis, &sig).unwrap();
        let v = classify_zero_discord(&s, Subsystem::A).unwrap();
        assert_eq!(v.verdict, Verdict::Zero);
        assert_eq!(v.method, ClassificationMethod::Eigenbasis);
        assert!(v.witness.unwrap().basis_mismatch(&ProjectiveMeasurement::from_basis(basis, Subsystem::A).unwrap()) < 1e-8);
    }

    #[test]
    fn classify_near_threshold_is_ambiguous() {
        let zero = example_state(0.6, 0.0).unwrap();
        let noise = random_state((2, 2), 4, 8).unwrap();
        let s = zero.mix(&noise, 1e-7).unwrap();
        let v = classify_zero_discord(&s, Subsystem::A).unwrap();
        assert_eq!(v.verdict, Verdict::Ambiguous, "{v:?}");
    }

    #[test]
    fn measure_parsing() {
        assert_eq!("d3sym".parse::<DiscordMeasure>().unwrap(), DiscordMeasure::D3Sym);
        assert!("d4".parse::<DiscordMeasure>().is_err());
    }

    #[test]
    fn d3_measure_is_not_optimized() {
        let s = example_state(0.5, 0.5).unwrap();
        assert!(optimize_discord(DiscordMeasure::D3, &s, Subsystem::A, &OptimizerConfig::default()).is_err());
    }
}
