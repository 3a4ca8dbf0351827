use aps_spin::fermion::{
    build_modes, generate_basis, generation_report, null_flag_check, spin4_check, IntMatrix,
};
use aps_spin::{MatrixRep, Multivector};
use num_complex::Complex;

#[test]
fn relations_are_exact_for_small_systems() {
    for n in 1..=3 {
        let modes = build_modes(n).unwrap();
        assert!(modes.car_holds());
        let basis = generate_basis(&modes);
        assert!(basis.clifford_holds());
        // Integer entries only: every element is a Gaussian integer in {0, ±1, ±i}.
        for e in &basis.vectors {
            assert!(e.entries().iter().all(|z| z.re.abs() + z.im.abs() <= 1));
        }
    }
}

#[test]
fn single_mode_reproduces_pauli_coefficients() {
    let basis = generate_basis(&build_modes(1).unwrap());
    let blades = [Multivector::E1, Multivector::E2, Multivector::E3];
    for (e, blade) in basis.vectors.iter().zip(blades) {
        let rep = e.to_matrix_rep().unwrap();
        assert_eq!(rep, blade.to_rep());
        assert_eq!(Multivector::from_rep(&rep), blade);
    }
    // The product of the three generated vectors is the pseudoscalar.
    let v = &basis.vectors;
    let i = (&(&v[0] * &v[1]) * &v[2]).to_matrix_rep().unwrap();
    assert_eq!(i, MatrixRep::IDENTITY.scale(num_complex::Complex64::i()));
}

#[test]
fn two_modes_span_sixteen_real_dimensions() {
    let report = generation_report(2).unwrap();
    assert_eq!(report.dimension, Some(16));
    let basis = generate_basis(&build_modes(2).unwrap());
    assert_eq!(basis.blade_products().len(), 16);
}

#[test]
fn generators_anticommute_pairwise_beyond_rank_limit() {
    let basis = generate_basis(&build_modes(5).unwrap());
    let v = &basis.vectors;
    assert_eq!(v.len(), 10);
    let two = IntMatrix::identity(32).scale(Complex::new(2, 0));
    for j in 0..v.len() {
        assert_eq!(v[j].anticommutator(&v[j]), two);
        for k in j + 1..v.len() {
            assert!(v[j].anticommutator(&v[k]).is_zero());
        }
    }
}

#[test]
fn spin4_and_null_flags() {
    let r = spin4_check();
    assert!(r.triples_commute && r.self_dual_closes && r.anti_self_dual_closes);
    assert!(null_flag_check(&build_modes(1).unwrap()).unwrap().all_ok());
}
