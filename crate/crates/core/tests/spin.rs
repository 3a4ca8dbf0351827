use std::f64::consts::PI;

use aps_spin::ga::{p3, p3_bar, projector};
use aps_spin::sampling;
use aps_spin::spin::{
    euler_rotor, expand_up_down, filter, inner, measure_probability, spread, uncertainty_stats,
    EulerState, IdealSpinor, SpinDensity,
};
use aps_spin::Multivector;
use num_complex::Complex64;
use proptest::prelude::*;

fn angles() -> impl Strategy<Value = (f64, f64, f64)> {
    (-PI..PI, 0.0..PI, -PI..PI)
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[test]
fn full_turn_flips_spinor_sign() {
    let r = euler_rotor(0.0, 2.0 * PI, 0.0);
    assert!((r + Multivector::ONE).norm() < 1e-14);
    let phase = (Multivector::I * Multivector::E3 * -PI).exp();
    assert!((phase + Multivector::ONE).norm() < 1e-14);
}

#[test]
fn uncertainty_relation_for_random_pure_states() {
    let mut rng = sampling::stream_rng(5, 0);
    for _ in 0..1000 {
        let s = sampling::unit_vector(&mut rng);
        let stats = uncertainty_stats(s).unwrap();
        assert!(stats.satisfied, "{s:?}: {stats:?}");
        // Independent oracle: Δx = √(1 - sx²) etc.
        let dx = (1.0 - s[0] * s[0]).sqrt();
        let dy = (1.0 - s[1] * s[1]).sqrt();
        assert!((stats.delta_x - dx).abs() < 1e-7);
        assert!((stats.delta_y - dy).abs() < 1e-7);
        assert!(dx * dy >= s[2].abs() - 1e-12);
    }
}

#[test]
fn worked_uncertainty_cases() {
    let z = uncertainty_stats([0.0, 0.0, 1.0]).unwrap();
    assert_eq!((z.delta_x, z.delta_y, z.mean_z_abs), (1.0, 1.0, 1.0));
    assert_eq!(z.slack, 0.0);
    let x = uncertainty_stats([1.0, 0.0, 0.0]).unwrap();
    assert_eq!((x.delta_x, x.delta_y, x.mean_z_abs), (0.0, 1.0, 0.0));
}

#[test]
fn spin_up_expands_into_equal_e1_filters() {
    // R = 1 written as the average of ±π/2 rotations about e2.
    let half = std::f64::consts::FRAC_PI_4;
    let a = (Multivector::E1 * Multivector::E3 * half).exp();
    let b = (Multivector::E1 * Multivector::E3 * -half).exp();
    let r = (a + b) / 2.0_f64.sqrt();
    assert!((r - Multivector::ONE).norm() < 1e-15);
    let p1 = projector([1.0, 0.0, 0.0]);
    let p1_bar = projector([-1.0, 0.0, 0.0]);
    let plus = p1 * p3();
    let minus = p1_bar * p3();
    assert!((plus + minus - p3()).norm() < 1e-15);
    assert!((inner(&plus, &plus).re - 0.5).abs() < 1e-15);
    assert!((inner(&minus, &minus).re - 0.5).abs() < 1e-15);
}

proptest! {
    #[test]
    fn probabilities_match_half_angle_formula((phi, theta, chi) in angles(), n in prop::array::uniform3(-1.0..1.0f64)) {
        let norm = dot(n, n).sqrt();
        prop_assume!(norm > 1e-3);
        let n = n.map(|c| c / norm);
        let psi = IdealSpinor::from_rotor(&euler_rotor(phi, theta, chi), 1.0);
        let s = psi.spin().unwrap();
        let rho = SpinDensity::pure(s).unwrap();
        let p = measure_probability(&rho, n).unwrap();
        prop_assert!((p - 0.5 * (1.0 + dot(s, n))).abs() < 1e-12);
        // Oracle: |⟨n↑|ψ⟩|² from the matrix eigenvector of σ·n.
        let col = psi.components();
        let m = Multivector::vector(n).to_rep();
        let proj = (m.scale(Complex64::new(0.5, 0.0)) + aps_spin::MatrixRep::IDENTITY.scale(Complex64::new(0.5, 0.0))).0;
        let v = [proj[0][0] * col[0] + proj[0][1] * col[1], proj[1][0] * col[0] + proj[1][1] * col[1]];
        let amp2 = v[0].norm_sqr() + v[1].norm_sqr();
        prop_assert!((p - amp2).abs() < 1e-12);
        let q = measure_probability(&rho, n.map(|c| -c)).unwrap();
        prop_assert!((p + q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_direction_from_euler_angles((phi, theta, chi) in angles()) {
        let psi = IdealSpinor::from_rotor(&euler_rotor(phi, theta, chi), 1.0);
        let s = psi.spin().unwrap();
        let want = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        for k in 0..3 {
            prop_assert!((s[k] - want[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn up_down_expansion_reassembles_state((phi, theta, chi) in angles()) {
        let r = euler_rotor(phi, theta, chi);
        let ud = expand_up_down(&r);
        let rebuilt = ud.psi_up * ud.c_up + ud.psi_down * ud.c_down;
        prop_assert!((rebuilt - r * p3()).norm() < 1e-12);
        // P₃ and P̄₃ isolate the two parts; ψ↑ and ψ↓ are orthogonal.
        prop_assert!((p3() * r * p3() - ud.psi_up * ud.c_up).norm() < 1e-12);
        prop_assert!((p3_bar() * r * p3() - ud.psi_down * ud.c_down).norm() < 1e-12);
        prop_assert!(inner(&ud.psi_up, &ud.psi_down).norm() < 1e-12);
        prop_assert!((ud.c_up.powi(2) - (theta / 2.0).cos().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn euler_angles_round_trip((phi, theta, chi) in (-3.0..3.0f64, 0.05..3.09f64, -3.0..3.0f64), rho in 0.1..4.0f64) {
        let state = EulerState { phi, theta, chi, rho };
        let psi = IdealSpinor::from_euler(&state);
        let back = IdealSpinor::from_euler(&psi.euler());
        prop_assert!((back.mv() - psi.mv()).norm() < 1e-11);
        prop_assert!((psi.density() - rho).abs() < 1e-12);
    }

    #[test]
    fn filtered_state_is_eigenstate(s in prop::array::uniform3(-1.0..1.0f64)) {
        let norm = dot(s, s).sqrt();
        prop_assume!(norm > 1e-3 && norm <= 1.0);
        let rho = SpinDensity::new(s).unwrap();
        let n = [0.0, 0.6, 0.8];
        let (out, w) = filter(&rho, n).unwrap();
        prop_assert!((w - 0.5 * (1.0 + dot(s, n))).abs() < 1e-12);
        // P_n ϱ P_n = w P_n.
        prop_assert!((out - projector(n) * w).norm() < 1e-12);
        let (mean, delta) = spread(&rho, n).unwrap();
        prop_assert!((mean - dot(s, n)).abs() < 1e-12);
        prop_assert!((delta * delta + mean * mean - 1.0).abs() < 1e-9);
    }
}
