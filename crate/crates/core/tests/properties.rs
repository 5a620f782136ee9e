//! Property tests for the invariants the theory guarantees.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use voidsurf::bulk::acoustic_matrix;
use voidsurf::impedance::{compute, riccati_residual};
use voidsurf::linalg::{fro, hermitian_eigenvalues, symmetric_min_eigenvalue};
use voidsurf::material::{check_positive_definite, check_real_waves, from_relaxed, RelaxedParams};
use voidsurf::secular::scan_system;
use voidsurf::stroh::{is_real_root, StrohSystem};
use voidsurf::wavefield::{decay_matrix, e_from_roots};
use voidsurf::MicroVoidParams;

fn any_material() -> impl Strategy<Value = MicroVoidParams> {
    (
        -50.0..500.0f64,
        -500.0..500.0f64,
        -5.0..50.0f64,
        -3000.0..3000.0f64,
        -1e3..2e4f64,
        100.0..1e4f64,
        0.1..3.0f64,
    )
        .prop_map(|(mu, la, al, be, xi, rho, ka)| MicroVoidParams::new(mu, la, al, be, xi, rho, ka).unwrap())
}

/// Positive-definite materials, parametrized so every draw is valid.
fn pd_material() -> impl Strategy<Value = MicroVoidParams> {
    (50.0..500.0f64, -0.6..2.0f64, 1e3..2e4f64, 0.0..0.95f64, 1.0..50.0f64, 1e3..1e4f64, 0.5..3.0f64).prop_map(
        |(mu, la_ratio, xi, b_frac, alpha, rho, ka)| {
            let la = la_ratio * mu;
            let beta = -b_frac * ((3.0 * la + 2.0 * mu) * xi / 3.0).sqrt();
            MicroVoidParams::new(mu, la, alpha, beta, xi, rho, ka).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn positive_definite_implies_real_waves(p in any_material()) {
        if check_positive_definite(&p).ok {
            prop_assert!(check_real_waves(&p).ok);
        }
    }

    #[test]
    fn relaxed_positivity_is_inherited(
        mu_e in 0.1..500.0f64, kappa_e in 0.1..500.0f64,
        mu_micro in -100.0..500.0f64, kappa_micro in 0.1..500.0f64,
        l_c in 0.01..3.0f64, a2 in 0.01..3.0f64, eta in 0.01..3.0f64, tau_c in 0.01..3.0f64,
    ) {
        let r = RelaxedParams {
            mu_e,
            lambda_e: kappa_e - 2.0 * mu_e / 3.0,
            mu_micro,
            lambda_micro: kappa_micro - 2.0 * mu_micro / 3.0,
            l_c, a2, eta, tau_c,
            rho0: 1.0,
        };
        let p = from_relaxed(&r).unwrap();
        prop_assert!(check_positive_definite(&p).ok, "{:?}", check_positive_definite(&p));
    }

    #[test]
    fn beta_is_non_positive(mu_e in -10.0..500.0f64, lambda_e in -300.0..500.0f64, k_micro in -100.0..500.0f64) {
        let r = RelaxedParams {
            mu_e, lambda_e, mu_micro: 1.0, lambda_micro: k_micro - 2.0 / 3.0,
            l_c: 1.0, a2: 1.0, eta: 1.0, tau_c: 1.0, rho0: 1.0,
        };
        if r.kappa_e() >= 0.0 {
            prop_assert!(from_relaxed(&r).unwrap().beta <= 0.0);
        }
    }

    #[test]
    fn acoustic_matrix_pd_for_all_k_iff_real_waves(p in any_material()) {
        // α = 0 exactly is the boundary case: Q(k) stays PD but no longitudinal-void wave is real
        prop_assume!(p.alpha != 0.0);
        let pd = [1e-4, 1e-2, 0.3, 1.0, 7.0, 1e2, 1e4, 1e6].iter().all(|&k| {
            let q = acoustic_matrix(&p, k);
            q[(0, 0)] > 0.0 && q.determinant() > 0.0
        });
        // the μ_e > 0 condition belongs to the decoupled transverse branch
        let block_ok = check_real_waves(&p).violations.iter().all(|v| v.name == "mu_e>0");
        prop_assert_eq!(pd, block_ok);
    }

    #[test]
    fn rotation_identities(p in pd_material(), theta in -PI..PI, frac in 0.0..1.0f64) {
        let s = StrohSystem::new(&p, 1.0).unwrap();
        let v = frac * s.v_hat();
        let a = s.rotate(v, theta);
        let half = s.rotate(v, theta + FRAC_PI_2);
        let full = s.rotate(v, theta + PI);
        prop_assert!((half.q_theta_tilde - a.t_theta).amax() <= 1e-12);
        prop_assert!((half.r_theta + a.r_theta.transpose()).amax() <= 1e-12);
        prop_assert!((full.t_theta - a.t_theta).amax() <= 1e-12);
        prop_assert!((full.r_theta - a.r_theta).amax() <= 1e-12);
        prop_assert!((full.q_theta_tilde - a.q_theta_tilde).amax() <= 1e-12);
    }

    #[test]
    fn rotated_matrices_positive_below_v_hat(p in pd_material(), theta in -FRAC_PI_2..FRAC_PI_2, frac in 0.0..0.999f64) {
        let s = StrohSystem::new(&p, 1.0).unwrap();
        let v = frac * s.v_hat();
        let r = s.rotate(v, theta);
        prop_assert!(symmetric_min_eigenvalue(&r.t_theta) > 0.0);
        prop_assert!(symmetric_min_eigenvalue(&r.q_theta_tilde) > 0.0);
    }

    #[test]
    fn sextic_root_pairing(p in pd_material(), frac in 0.01..0.99f64) {
        let s = StrohSystem::new(&p, 1.0).unwrap();
        let roots = s.sextic_roots(frac * s.v_hat()).unwrap();
        prop_assert!(roots.iter().all(|r| !is_real_root(*r)));
        prop_assert_eq!(roots.iter().filter(|r| r.im > 0.0).count(), 3);
        for r in &roots {
            let scale = 1.0 + r.norm();
            prop_assert!(roots.iter().any(|w| (w - r.conj()).norm() <= 1e-6 * scale));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn impedance_is_hermitian_positive_and_riccati(p in pd_material(), frac in 0.0..0.99f64) {
        let s = StrohSystem::new(&p, 1.0).unwrap();
        let imp = compute(&s, frac * s.v_hat()).unwrap();
        prop_assert!(imp.hermiticity_defect <= 1e-8 * fro(&imp.m));
        // M is definite until its lowest eigenvalue crosses zero at the Rayleigh speed;
        // the other two branches stay positive
        let ev = hermitian_eigenvalues(&imp.m);
        prop_assert!(ev[1] > 0.0);
        prop_assert_eq!(imp.det() > 0.0, ev[0] > 0.0);
        prop_assert!(imp.trace() >= 0.0);
        prop_assert!(riccati_residual(&s, &imp).unwrap() <= 1e-6 * s.q_mat.norm());
        prop_assert!(symmetric_min_eigenvalue(&imp.h) > 0.0);
    }

    #[test]
    fn decay_matrix_matches_root_oracle(p in pd_material(), frac in 0.05..0.95f64) {
        let s = StrohSystem::new(&p, 1.0).unwrap();
        let v = frac * s.v_hat();
        let dm = decay_matrix(&s, &compute(&s, v).unwrap()).unwrap();
        prop_assert!(dm.spectrum.iter().all(|z| z.re > 0.0));
        prop_assert!(dm.pencil_residual <= 1e-6 * s.q_mat.norm());
        let oracle = e_from_roots(&s, v).unwrap();
        prop_assert!(fro(&(dm.e - oracle)) <= 1e-6 * fro(&dm.e));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn one_sign_change_and_monotone(p in pd_material()) {
        let s = StrohSystem::new(&p, 1.0).unwrap();
        let sc = scan_system(&s, &p, 40, false, &Default::default()).unwrap();
        prop_assert_eq!(sc.sign_changes(), 1);
        prop_assert!(sc.strictly_decreasing());
    }
}

#[test]
fn steel_det_decreases_on_fifty_points() {
    let p = common::steel();
    let s = StrohSystem::new(&p, 1.0).unwrap();
    let sc = scan_system(&s, &p, 50, false, &Default::default()).unwrap();
    assert!(sc.strictly_decreasing());
    assert_eq!(sc.sign_changes(), 1);
}

#[test]
fn impedance_at_rest_is_positive_definite() {
    let mut rng = common::rng(11);
    for _ in 0..10 {
        let p = common::random_admissible(&mut rng);
        let s = StrohSystem::new(&p, 1.0).unwrap();
        let imp = compute(&s, 0.0).unwrap();
        assert!(hermitian_eigenvalues(&imp.m)[0] > 0.0, "{p:?}");
    }
}

#[test]
fn trace_stays_non_negative_up_to_v_hat() {
    let s = StrohSystem::new(&common::steel(), 1.0).unwrap();
    for frac in [0.0, 0.5, 0.9, 0.99, 0.999, 0.9999] {
        let imp = compute(&s, frac * s.v_hat()).unwrap();
        assert!(imp.trace() >= 0.0, "frac {frac}");
    }
}
