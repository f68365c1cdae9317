mod common;

use common::*;
use dppforge::catalog;
use dppforge::constructions::{check_o_operator, OOperatorCandidate};
use dppforge::linalg::{sharp, twist, two_tensor_form, BasisSpace, Matrix, Tensor2};
use dppforge::rational::q;
use dppforge::rep::{coregular_rep, CoregularVariant};
use dppforge::ybe::{classify, leibniz_residual, perm_residual, DEFAULT_LYBE_SIGN};
use proptest::prelude::*;

fn cfg() -> ProptestConfig {
    ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(100) }
}

fn delta() -> impl Strategy<Value = i64> {
    prop_oneof![Just(-1i64), Just(1i64)]
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn rep_iff_semidirect_product(
        which in 0usize..3,
        base in 0usize..3,
        bump in proptest::option::of((0usize..4, 0usize..8, 0usize..8, 0usize..8, delta())),
    ) {
        let t = rep_trial(which, base, bump);
        prop_assert!(t.agrees(), "{t:?}");
        if bump.is_none() {
            prop_assert!(t.lhs);
        }
    }

    #[test]
    fn coalgebra_iff_dual_algebra(
        which in 0usize..3,
        bump in proptest::option::of((0usize..2, 0usize..6, 0usize..6, 0usize..6, delta())),
    ) {
        let t = coalgebra_trial(which, bump);
        prop_assert!(t.agrees(), "{t:?}");
        if bump.is_none() {
            prop_assert!(t.lhs);
        }
    }

    #[test]
    fn symmetric_solution_iff_o_operator(which in 0usize..3, vals in proptest::collection::vec(-1i64..=1, 10)) {
        let t = symmetric_o_trial(which, &vals);
        prop_assert!(t.agrees(), "{t:?}");
    }

    #[test]
    fn skew_solution_iff_poisson_o_operator(vals in proptest::collection::vec(-2i64..=2, 3)) {
        let t = skew_o_trial(&vals);
        prop_assert!(t.agrees(), "{t:?}");
    }

    #[test]
    fn lift_preserves_solution_symmetry_and_invariance_status(
        scale in -2i64..=2,
        noise in proptest::collection::vec(-1i64..=1, 9),
        noisy in any::<bool>(),
    ) {
        let t = lift_trial(scale, &noise, noisy);
        prop_assert!(t.holds(), "{t:?}");
    }

    #[test]
    fn twist_is_an_involution_and_transposes_sharp(n in 1usize..5, vals in proptest::collection::vec(-3i64..=3, 16)) {
        let labels = catalog::double_a2().algebra.space.labels[..n].to_vec();
        let space = BasisSpace::new("V", labels).unwrap();
        let r = Tensor2::from_matrix(&space, &space, small_matrix(n, n, &vals[..n * n])).unwrap();
        prop_assert_eq!(&twist(&twist(&r)), &r);
        prop_assert_eq!(sharp(&twist(&r)).unwrap().matrix, sharp(&r).unwrap().matrix.transpose());
        prop_assert_eq!(two_tensor_form(&sharp(&r).unwrap()).unwrap(), r);
    }
}

#[test]
fn corrupted_solution_reports_a_residual_witness() {
    let d = catalog::double_a2();
    let mut r = d.rtilde.clone();
    r.data.add_at(0, 0, &q(1));
    r.data.add_at(1, 2, &q(1));
    let perm = perm_residual(&d.algebra, &r).unwrap();
    let leib = leibniz_residual(&d.algebra, &r, DEFAULT_LYBE_SIGN).unwrap();
    assert!(!(perm.is_zero() && leib.is_zero()));
    let bad = if perm.is_zero() { leib } else { perm };
    assert!(!bad.to_result(&d.algebra.space).witnesses.is_empty());
}

#[test]
fn standard_coregular_variant_misses_a_symmetric_solution() {
    let alg = catalog::a2();
    let r = Tensor2::from_matrix(&alg.space, &alg.space, Matrix::from_int_rows(&[&[0, -1], &[-1, 0]])).unwrap();
    assert!(classify(&alg, &r, DEFAULT_LYBE_SIGN).unwrap().solves_dpybe);
    let t = sharp(&r).unwrap().matrix;
    let signed = OOperatorCandidate::Dpp { rep: coregular_rep(&alg, CoregularVariant::Signed), t: t.clone() };
    let standard = OOperatorCandidate::Dpp { rep: coregular_rep(&alg, CoregularVariant::Standard), t };
    assert!(check_o_operator(&alg, &signed).unwrap().passed());
    assert_eq!(check_o_operator(&alg, &standard).unwrap().failed_ids(), vec!["o-operator.circ".to_string()]);
}
