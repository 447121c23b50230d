mod common;

use common::{hermitian, measurement, pure_state, rotated_bell_diagonal};
use discordant::correlations::ConditionalOperator;
use discordant::states::random_state;
use discordant::{
    cerf_adami_conditional_entropy, cerf_adami_operator, commutator_norm, conditional_entropy_after_measurement,
    discord_d1_at, discord_d2_at, discord_d3, eig, matrix_exp, matrix_log_on_support, measured_entropy,
    mutual_information, optimize_discord, partial_trace, post_measurement_state, tensor, work_ledger, BipartiteState,
    DiscordMeasure, Entropies, HermitianOperator, OptimizerConfig, StateDocument, Subsystem,
};
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 2)), Just((2, 3)), Just((3, 2)), Just((3, 3))]
}

fn state_strategy() -> impl Strategy<Value = BipartiteState> {
    (dims(), 1usize..=9, any::<u64>()).prop_map(|(d, r, seed)| random_state(d, r.min(d.0 * d.1), seed).unwrap())
}

fn angles() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..std::f64::consts::TAU, 6)
}

fn side() -> impl Strategy<Value = Subsystem> {
    prop_oneof![Just(Subsystem::A), Just(Subsystem::B)]
}

fn fast() -> OptimizerConfig {
    OptimizerConfig::default().with_restarts(8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eig_reconstructs_with_orthonormal_vectors(n in 2usize..=9, raw in prop::collection::vec(-1.0f64..1.0, 162)) {
        let h = hermitian(n, &raw);
        let es = eig(&h);
        prop_assert!(es.reconstruct().distance(&h) < 1e-12);
        let v = &es.vectors;
        let gram = v.adjoint() * v;
        for r in 0..n {
            for c in 0..n {
                let want = if r == c { 1.0 } else { 0.0 };
                prop_assert!((gram[(r, c)].re - want).abs() < 1e-12 && gram[(r, c)].im.abs() < 1e-12);
            }
        }
        prop_assert!(es.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn exp_inverts_log_on_full_rank(s in (dims(), any::<u64>()).prop_map(|(d, seed)| random_state(d, d.0 * d.1, seed).unwrap())) {
        let rho = s.rho();
        prop_assume!(rho.eigenvalues()[0] > 1e-6);
        let back = matrix_exp(&matrix_log_on_support(rho, 1e-12).unwrap());
        prop_assert!(back.distance(rho) < 1e-10);
    }

    #[test]
    fn partial_trace_of_product(a in state_strategy(), b in state_strategy()) {
        let (x, y) = (a.rho_a(), b.rho_b());
        let dims = (x.dim(), y.dim());
        let t = tensor(&x, &y);
        prop_assert!(partial_trace(&t, dims, Subsystem::A).unwrap().distance(&x) < 1e-12);
        prop_assert!(partial_trace(&t, dims, Subsystem::B).unwrap().distance(&y) < 1e-12);
    }

    #[test]
    fn partial_trace_preserves_trace(s in state_strategy()) {
        prop_assert!((s.rho_a().trace() - 1.0).abs() < 1e-12);
        prop_assert!((s.rho_b().trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_leaves_other_marginal(s in state_strategy(), th in angles(), side in side()) {
        let m = measurement(&th, s.dim_of(side), side);
        let post = post_measurement_state(&s, &m).unwrap();
        prop_assert!(post.marginal(side.other()).distance(&s.marginal(side.other())) < 1e-12);
        prop_assert!((post.rho().trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn post_measurement_entropy_splits(s in state_strategy(), th in angles(), side in side()) {
        let m = measurement(&th, s.dim_of(side), side);
        let post = post_measurement_state(&s, &m).unwrap();
        let total = Entropies::of(&post).s_ab;
        let parts = measured_entropy(&s, &m).unwrap() + conditional_entropy_after_measurement(&s, &m).unwrap();
        prop_assert!((total - parts).abs() < 1e-9);
    }

    #[test]
    fn conditional_operator_identity_in_any_basis(s in state_strategy(), th in angles()) {
        let m = measurement(&th, s.dims().0, Subsystem::A);
        let at = discord_d1_at(&s, &m).unwrap();
        let lhs = cerf_adami_conditional_entropy(&s).unwrap();
        prop_assert!((lhs - (at.parts.conditional_entropy - at.value)).abs() < 1e-9);
        let e = Entropies::of(&s);
        prop_assert!((lhs - (e.s_ab - e.s_a)).abs() < 1e-9);
    }

    #[test]
    fn j_equals_post_measurement_information(s in state_strategy(), th in angles(), side in side()) {
        let m = measurement(&th, s.dim_of(side), side);
        let at = discord_d1_at(&s, &m).unwrap();
        let post = post_measurement_state(&s, &m).unwrap();
        prop_assert!((at.j_value - mutual_information(&post)).abs() < 1e-9);
    }

    #[test]
    fn d1_d2_relation_at_fixed_basis(s in state_strategy(), th in angles()) {
        let m = measurement(&th, s.dims().0, Subsystem::A);
        let d1 = discord_d1_at(&s, &m).unwrap();
        let d2 = discord_d2_at(&s, &m).unwrap();
        let gap = d2.parts.measured_entropy - Entropies::of(&s).s_a;
        prop_assert!(gap > -1e-9);
        prop_assert!((d1.value - (d2.value - gap)).abs() < 1e-9);
    }

    #[test]
    fn document_round_trip_is_exact(s in state_strategy()) {
        let doc = StateDocument::explicit(&s);
        let text = serde_json::to_string(&doc).unwrap();
        let back: StateDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn chart_inverse_recovers_basis(th in angles(), d in 2usize..=3) {
        let m = measurement(&th, d, Subsystem::A);
        let again = measurement(&m.parameters().0, d, Subsystem::A);
        prop_assert!(m.basis_mismatch(&again) < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discord_ordering(s in state_strategy(), side in side()) {
        let d1 = optimize_discord(DiscordMeasure::D1, &s, side, &fast()).unwrap().value;
        let d2 = optimize_discord(DiscordMeasure::D2, &s, side, &fast()).unwrap().value;
        let d3 = discord_d3(&s, side).unwrap().value;
        prop_assert!(d1 >= -1e-7);
        prop_assert!(d1 <= d2 + 1e-7, "{} > {}", d1, d2);
        prop_assert!(d2 <= d3 + 1e-7, "{} > {}", d2, d3);
    }

    #[test]
    fn pure_state_discord_is_entanglement(d in dims(), raw in prop::collection::vec(-1.0f64..1.0, 18)) {
        let s = pure_state(d, &raw);
        let sa = Entropies::of(&s).s_a;
        for measure in [DiscordMeasure::D1, DiscordMeasure::D2] {
            let v = optimize_discord(measure, &s, Subsystem::A, &fast()).unwrap().value;
            prop_assert!((v - sa).abs() < 1e-6, "{measure}: {v} vs {sa}");
        }
        let d3 = discord_d3(&s, Subsystem::A).unwrap();
        prop_assert!((d3.value - sa).abs() < 1e-6);
    }

    #[test]
    fn maximally_mixed_marginal_equates_d1_d2(
        w in prop::array::uniform4(0.01f64..1.0), ta in angles(), tb in angles()
    ) {
        let s = rotated_bell_diagonal(w, &ta, &tb);
        prop_assert!(s.rho_a().distance(&HermitianOperator::identity(2).scaled(0.5)) < 1e-12);
        let d1 = optimize_discord(DiscordMeasure::D1, &s, Subsystem::A, &fast()).unwrap().value;
        let d2 = optimize_discord(DiscordMeasure::D2, &s, Subsystem::A, &fast()).unwrap().value;
        prop_assert!((d1 - d2).abs() < 1e-6, "{d1} vs {d2}");
    }

    #[test]
    fn strict_inequality_when_outcomes_exceed_marginal_entropy(s in state_strategy()) {
        let r2 = optimize_discord(DiscordMeasure::D2, &s, Subsystem::A, &fast()).unwrap();
        let basis = r2.optimal_measurement.as_ref().unwrap();
        let excess = measured_entropy(&s, basis).unwrap() - Entropies::of(&s).s_a;
        if excess > 1e-6 {
            let d1 = optimize_discord(DiscordMeasure::D1, &s, Subsystem::A, &fast()).unwrap().value;
            prop_assert!(d1 < r2.value - 1e-7, "D1 {} D2 {} excess {}", d1, r2.value, excess);
        }
    }

    #[test]
    fn demon_scaling_and_ordering(s in state_strategy(), lambda in 0.1f64..10.0) {
        let cfg = fast();
        let one = work_ledger(&s, 1.0, &cfg).unwrap().values();
        let scaled = work_ledger(&s, lambda, &cfg).unwrap().values();
        for (x, y) in [
            (one.w_plus, scaled.w_plus), (one.w_local, scaled.w_local), (one.w2, scaled.w2), (one.w3, scaled.w3),
            (one.delta_l, scaled.delta_l), (one.delta_2, scaled.delta_2), (one.delta_3, scaled.delta_3),
        ] {
            prop_assert!((lambda * x - y).abs() <= 1e-12 * lambda.max(1.0) * (1.0 + x.abs()));
        }
        prop_assert!(one.w_plus >= one.w2 - 1e-7);
        prop_assert!(one.w2 >= one.w3 - 1e-7);
        prop_assert!(one.w_plus >= one.w_local - 1e-7);
        prop_assert!((one.delta_l - mutual_information(&s)).abs() < 1e-9);
    }
}

#[test]
fn conditional_operator_reduces_to_product_form_when_commuting() {
    let rho_a = HermitianOperator::from_real_diagonal(&[0.7, 0.3]);
    let s = discordant::zero_discord_state(
        &[0.7, 0.3],
        discordant::ProjectiveMeasurement::computational(2, Subsystem::A).basis(),
        &[
            HermitianOperator::from_real_diagonal(&[0.9, 0.1]),
            HermitianOperator::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap(),
        ],
    )
    .unwrap();
    let marginal = tensor(&rho_a, &HermitianOperator::identity(2));
    assert!(commutator_norm(&marginal, s.rho()).unwrap() <= 1e-12);
    let op: ConditionalOperator = cerf_adami_operator(&s).unwrap();
    let inverse = tensor(&HermitianOperator::from_real_diagonal(&[1.0 / 0.7, 1.0 / 0.3]), &HermitianOperator::identity(2));
    let product = s.rho().matrix() * inverse.matrix();
    assert!(discordant::operator::max_abs(&(op.operator().matrix() - product)) < 1e-9);
}
