//! Property tests for the entropy, channel and subsystem invariants.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use entkit::entropy::{
    classical_rel_entropy_raw, cond_mutual_info, cond_mutual_info_parts, eta, qrel_entropy, vn_entropy, PINSKER_BITS,
};
use entkit::matqi::{
    hermitian_error, min_pt_eigenvalue, partial_trace, partial_transpose, partial_transpose_matrix, random_density, tensor, trace_distance,
    DensityMatrix,
};
use entkit::povm::{apply_povm, measured_rel_entropy, onelocc_to_povm, random_onelocc_povm, twirl_state, uu_bar_twirl};

fn max_abs_diff(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    (a.matrix() - b.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn data_processing_under_povms(seed in any::<u64>(), rank in 1usize..=4, k in 1usize..=4, l in 1usize..=3) {
        let rho = random_density(&[2, 2], rank, seed).unwrap();
        let sigma = random_density(&[2, 2], 4, seed ^ 0xA5A5).unwrap();
        let m = onelocc_to_povm(&random_onelocc_povm([2, 2], k, l, seed.wrapping_add(7)).unwrap()).unwrap();
        let full = qrel_entropy(&rho, &sigma).unwrap().value();
        let meas = measured_rel_entropy(&m, &rho, &sigma).unwrap().value();
        prop_assert!(meas <= full + 1e-9, "{meas} > {full}");
        prop_assert!(meas >= -1e-12);
    }

    #[test]
    fn ssa_is_nonnegative(seed in any::<u64>(), rank in 1usize..=8) {
        let rho = random_density(&[2, 2, 2], rank, seed).unwrap();
        prop_assert!(cond_mutual_info(&rho).unwrap() >= -1e-9);
    }

    #[test]
    fn cmi_is_symmetric_in_a_and_b(seed in any::<u64>()) {
        let rho = random_density(&[2, 3, 2], 6, seed).unwrap();
        let ab = cond_mutual_info_parts(&rho, &[0], &[1], &[2]).unwrap();
        let ba = cond_mutual_info_parts(&rho, &[1], &[0], &[2]).unwrap();
        assert_abs_diff_eq!(ab, ba, epsilon = 1e-10);
    }

    #[test]
    fn classical_pinsker(seed in any::<u64>()) {
        let rho = random_density(&[2, 2], 4, seed).unwrap();
        let sigma = random_density(&[2, 2], 2, seed.wrapping_mul(3)).unwrap();
        let m = onelocc_to_povm(&random_onelocc_povm([2, 2], 2, 2, seed.wrapping_add(1)).unwrap()).unwrap();
        let p = apply_povm(&m, &rho).unwrap();
        let q = apply_povm(&m, &sigma).unwrap();
        let d = classical_rel_entropy_raw(p.probs(), q.probs()).unwrap().value();
        let l1 = p.l1_distance(&q).unwrap();
        prop_assert!(d >= PINSKER_BITS * l1 * l1 - 1e-12);
    }

    #[test]
    fn eta_is_subadditive(x in 0.0f64..=1.0, frac in 0.0f64..=1.0) {
        let y = (1.0 - x) * frac;
        prop_assert!(eta(x + y).unwrap() <= eta(x).unwrap() + eta(y).unwrap() + 1e-12);
    }

    #[test]
    fn twirl_is_idempotent(seed in any::<u64>(), d in 2usize..=3) {
        let rho = random_density(&[d, d], d * d, seed).unwrap();
        let once = twirl_state(&rho).unwrap();
        let twice = uu_bar_twirl(once.matrix(), &[d, d]).unwrap();
        let diff = (once.matrix() - &twice).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-12);
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let a = random_density(&[da], da, seed).unwrap();
        let b = random_density(&[db], db, seed.wrapping_add(1)).unwrap();
        let ab = tensor(&a, &b).unwrap();
        prop_assert!(max_abs_diff(&partial_trace(&ab, &[0]).unwrap(), &a) < 1e-13);
        prop_assert!(max_abs_diff(&partial_trace(&ab, &[1]).unwrap(), &b) < 1e-13);
        assert_abs_diff_eq!(vn_entropy(&ab), vn_entropy(&a) + vn_entropy(&b), epsilon = 1e-9);
    }

    #[test]
    fn partial_transpose_keeps_trace_and_hermiticity(seed in any::<u64>(), party in 0usize..2) {
        let rho = random_density(&[2, 3], 3, seed).unwrap();
        let pt = partial_transpose(&rho, party).unwrap();
        prop_assert!(hermitian_error(&pt) < 1e-14);
        assert_abs_diff_eq!(pt.trace().re, 1.0, epsilon = 1e-12);
        let back = partial_transpose_matrix(&pt, &[2, 3], party).unwrap();
        prop_assert!(back == *rho.matrix());
    }

    #[test]
    fn products_are_ppt(seed in any::<u64>()) {
        let a = random_density(&[3], 2, seed).unwrap();
        let b = random_density(&[2], 2, seed.wrapping_add(9)).unwrap();
        let ab = tensor(&a, &b).unwrap();
        prop_assert!(min_pt_eigenvalue(ab.matrix(), &[3, 2], 0).unwrap() >= -1e-12);
    }

    #[test]
    fn trace_distance_is_a_bounded_metric(seed in any::<u64>()) {
        let r = random_density(&[2, 2], 2, seed).unwrap();
        let s = random_density(&[2, 2], 3, seed ^ 1).unwrap();
        let d1 = trace_distance(&r, &s).unwrap();
        let d2 = trace_distance(&s, &r).unwrap();
        assert_abs_diff_eq!(d1, d2, epsilon = 1e-12);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&d1));
        prop_assert!(trace_distance(&r, &r).unwrap() < 1e-12);
    }

    #[test]
    fn relative_entropy_is_nonnegative(seed in any::<u64>(), rank in 1usize..=4) {
        let r = random_density(&[2, 2], rank, seed).unwrap();
        let s = random_density(&[2, 2], 4, seed.wrapping_add(5)).unwrap();
        prop_assert!(qrel_entropy(&r, &s).unwrap().value() >= -1e-9);
        prop_assert!(qrel_entropy(&r, &r).unwrap().value().abs() < 1e-9);
    }
}
