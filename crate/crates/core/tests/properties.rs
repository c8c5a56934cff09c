mod common;

use helstrom_core::closed_form::solve_two_state;
use helstrom_core::family::{
    conjugates_from_common_point, family_point, family_residual, success_probability,
};
use helstrom_core::oracle::minimax::Objective;
use helstrom_core::oracle::minimax_common_point;
use helstrom_core::oracle::sampling::random_povm;
use helstrom_core::{
    check_result, solve_auto, validate_ensemble, BlochVector, CommonPoint, Povm, PovmElement,
    SolveOptions, WeightedEnsemble,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vector(max: f64) -> impl Strategy<Value = BlochVector> {
    (-max..max, -max..max, -max..max).prop_map(|(x, y, z)| BlochVector::new(x, y, z))
}

fn in_ball() -> impl Strategy<Value = BlochVector> {
    vector(1.0).prop_map(|v| if v.norm() > 1.0 { v / v.norm() } else { v })
}

fn ensemble(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = WeightedEnsemble> {
    prop::collection::vec((0.01f64..1.0, in_ball()), n)
        .prop_map(|raw| validate_ensemble(&raw, true).expect("valid by construction"))
}

/// Smallest eigenvalue of `aI + v·σ` from the complex 2×2 matrix itself.
fn min_eigenvalue(a: f64, v: BlochVector) -> f64 {
    let m = [
        [Complex64::new(a + v.z, 0.0), Complex64::new(v.x, -v.y)],
        [Complex64::new(v.x, v.y), Complex64::new(a - v.z, 0.0)],
    ];
    let trace = (m[0][0] + m[1][1]).re;
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
    let disc = (trace * trace / 4.0 - det).max(0.0).sqrt();
    trace / 2.0 - disc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn psd_margin_matches_matrix_eigenvalue(a in -1.0f64..2.0, v in vector(2.0)) {
        let e = PovmElement { a, v };
        let direct = min_eigenvalue(a, v);
        prop_assert!((e.psd_margin() - direct).abs() < 1e-9);
        prop_assert_eq!(e.is_psd(), e.psd_margin() >= -1e-12);
    }

    #[test]
    fn overlap_is_trace_of_product(a in 0.0f64..1.0, v in vector(1.0), b in in_ball()) {
        // Tr(½(I + b·σ)(aI + v·σ)) = a + b·v; Tr(aI + v·σ) = 2a
        let e = PovmElement { a, v };
        let rho = [
            [Complex64::new(0.5 * (1.0 + b.z), 0.0), Complex64::new(0.5 * b.x, -0.5 * b.y)],
            [Complex64::new(0.5 * b.x, 0.5 * b.y), Complex64::new(0.5 * (1.0 - b.z), 0.0)],
        ];
        let pi = [
            [Complex64::new(a + v.z, 0.0), Complex64::new(v.x, -v.y)],
            [Complex64::new(v.x, v.y), Complex64::new(a - v.z, 0.0)],
        ];
        let mut tr = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for k in 0..2 {
                tr += rho[i][k] * pi[k][i];
            }
        }
        prop_assert!((tr.re - (a + b.dot(&v))).abs() < 1e-12);
        prop_assert!(tr.im.abs() < 1e-12);
        prop_assert!((e.trace() - 2.0 * a).abs() < 1e-15);
    }

    #[test]
    fn success_is_permutation_invariant(e in ensemble(2..=6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let povm = random_povm(&mut rng, e.len());
        let order: Vec<usize> = (0..e.len()).rev().collect();
        let a = success_probability(&e, &povm).unwrap();
        let b = success_probability(&e.permuted(&order).unwrap(), &povm.permuted(&order)).unwrap();
        prop_assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn family_round_trip(e in ensemble(2..=6), r in vector(0.5), extra in 0.01f64..1.0) {
        let p = e.max_prior() + extra;
        let c = conjugates_from_common_point(&e, p, CommonPoint(r)).unwrap();
        prop_assert!(family_residual(&e, p, &c) < 1e-12);
        for (i, ci) in c.iter().enumerate() {
            prop_assert!(family_point(&e, p, i, ci).max_abs_diff(&r) < 1e-12);
        }
    }

    #[test]
    fn pair_bound_never_exceeds_optimum(e in ensemble(2..=6)) {
        let obj = Objective::new(&e);
        let s = minimax_common_point(&e, 1e-10, 2000, 0);
        prop_assert!(s.converged);
        prop_assert!(obj.pair_lower_bound() <= s.p_star + 1e-12);
        // both sides are rounded; the pair bound can be tight
        prop_assert!(s.lower_bound <= s.p_star + 1e-15);
    }

    #[test]
    fn oracle_is_deterministic(e in ensemble(2..=6), seed in 0u64..4) {
        let a = minimax_common_point(&e, 1e-10, 2000, seed);
        let b = minimax_common_point(&e, 1e-10, 2000, seed);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn solutions_satisfy_the_aggregate_conditions(e in ensemble(2..=5)) {
        let r = solve_auto(&e, SolveOptions::default()).unwrap();
        let check = check_result(&e, &r);
        prop_assert!(check.passes(), "{:?}", check);
        if !check.saturated {
            // Σ λ_i c_i/(1 − p̃_i) = 0 and Σ λ_i |c_i|²/(1 − p̃_i) = ½
            prop_assert!(r.kkt.aggregate_sum <= 1e-8);
            prop_assert!(r.kkt.aggregate_half <= 1e-8);
        }
    }

    #[test]
    fn random_measurements_respect_the_bound(e in ensemble(2..=5), seed in any::<u64>()) {
        let r = solve_auto(&e, SolveOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let povm = random_povm(&mut rng, e.len());
            prop_assert!(success_probability(&e, &povm).unwrap() <= r.p_opt + 1e-8);
        }
    }

    #[test]
    fn two_state_multipliers(e in ensemble(2..=2)) {
        let r = solve_two_state(&e).unwrap();
        let cert = &r.certificate;
        prop_assume!(!cert.is_saturated());
        let mut half = 0.0;
        for i in 0..2 {
            let scaled = e.prior(i) / r.p_opt;
            prop_assert!((cert.lambdas[i] - (1.0 - scaled) / 4.0).abs() < 1e-12);
            half += cert.lambdas[i] * cert.conjugates[i].norm_squared() / (1.0 - scaled);
        }
        prop_assert!((half - 0.5).abs() < 1e-9);
    }

    #[test]
    fn unit_norm_boundary(dir in vector(1.0), eps in -1e-13f64..1e-13, p in 0.05f64..0.95) {
        let Some(u) = dir.normalized() else { return Ok(()) };
        let b = u * (1.0 + eps);
        let e = validate_ensemble(&[(p, b), (1.0 - p, -u)], false).unwrap();
        let r = solve_auto(&e, SolveOptions::default()).unwrap();
        prop_assert!((r.p_opt - 1.0).abs() < 1e-9);
        prop_assert!(validate_ensemble(&[(p, u * (1.0 + 1e-9)), (1.0 - p, -u)], false).is_err());
    }
}

/// `f` is convex: `f(½(x + y)) ≤ ½(f(x) + f(y))` on sampled triples.
#[test]
fn objective_is_midpoint_convex() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..10_000 {
        let e = common::random_ensemble(&mut rng, 2 + k % 5);
        let obj = Objective::new(&e);
        let x = helstrom_core::oracle::sampling::random_in_ball(&mut rng);
        let y = helstrom_core::oracle::sampling::random_in_ball(&mut rng);
        let mid = (x + y) * 0.5;
        assert!(obj.value(&mid) <= 0.5 * (obj.value(&x) + obj.value(&y)) + 1e-14);
    }
}

#[test]
fn guessing_measurement_scores_its_prior() {
    let e = common::trine();
    for k in 0..3 {
        let s = success_probability(&e, &Povm::guess(3, k)).unwrap();
        assert!((s - 1.0 / 3.0).abs() < 1e-15);
    }
}
