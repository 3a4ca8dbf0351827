use aps_spin::ga::oracle::{rel_err_to, run_identity_suite};
use aps_spin::{MatrixRep, Multivector};
use num_complex::Complex64;
use proptest::prelude::*;

fn mv() -> impl Strategy<Value = Multivector> {
    prop::array::uniform8(-3.0..3.0f64).prop_map(Multivector::new)
}

fn rel(a: &Multivector, b: &Multivector) -> f64 {
    (*a - *b).norm() / a.norm().max(b.norm()).max(1.0)
}

proptest! {
    #[test]
    fn product_is_associative(a in mv(), b in mv(), c in mv()) {
        prop_assert!(rel(&((a * b) * c), &(a * (b * c))) < 1e-13);
    }

    #[test]
    fn product_distributes(a in mv(), b in mv(), c in mv()) {
        prop_assert!(rel(&(a * (b + c)), &(a * b + a * c)) < 1e-13);
    }

    #[test]
    fn conjugations_are_anti_automorphisms(a in mv(), b in mv()) {
        prop_assert!(rel(&(a * b).reverse(), &(b.reverse() * a.reverse())) < 1e-13);
        prop_assert!(rel(&(a * b).conj(), &(b.conj() * a.conj())) < 1e-13);
        prop_assert!(rel(&(a * b).grade_involution(), &(a.grade_involution() * b.grade_involution())) < 1e-13);
    }

    #[test]
    fn matrix_map_is_a_homomorphism(a in mv(), b in mv()) {
        let prod = (a * b).to_rep();
        prop_assert!(rel_err_to(&(a * b), &(a.to_rep() * b.to_rep())) < 1e-13);
        prop_assert!(rel_err_to(&a.reverse(), &a.to_rep().adjoint()) < 1e-13);
        prop_assert!(rel_err_to(&a.conj(), &a.to_rep().adjugate()) < 1e-13);
        prop_assert!((Multivector::from_rep(&prod) - a * b).norm() < 1e-12);
    }

    #[test]
    fn quadratic_form_is_determinant(a in mv()) {
        let q = a.quad_form();
        let d = a.to_rep().det();
        prop_assert!((q - d).norm() < 1e-12 * d.norm().max(1.0));
        prop_assert!((a.quad_form_accurate() - d).norm() < 1e-12 * d.norm().max(1.0));
        // Scalar part is half the trace.
        prop_assert!((a.complex_scalar() - a.to_rep().trace() * 0.5).norm() < 1e-13);
    }

    #[test]
    fn inverse_round_trips(a in mv()) {
        prop_assume!(a.quad_form().norm() > 1e-3);
        let inv = a.inverse().unwrap();
        prop_assert!(rel(&(a * inv), &Multivector::ONE) < 1e-10);
        prop_assert!(rel(&(inv * a), &Multivector::ONE) < 1e-10);
    }

    #[test]
    fn exponential_of_negative_is_inverse(c in prop::array::uniform8(-1.5..1.5f64)) {
        let a = Multivector::new(c);
        prop_assert!(rel(&(a.exp() * (-a).exp()), &Multivector::ONE) < 1e-11);
        // Matches the matrix exponential's determinant: det e^A = e^{tr A}.
        let det = a.exp().to_rep().det();
        let tr = a.to_rep().trace();
        prop_assert!((det - tr.exp()).norm() < 1e-10 * det.norm().max(1.0));
    }

    #[test]
    fn dual_is_multiplication_by_minus_i(a in mv()) {
        prop_assert_eq!(a.dual(), -(Multivector::I * a));
    }
}

#[test]
fn pauli_images_of_basis() {
    for k in 1..=3 {
        let e = Multivector::vector(std::array::from_fn(|j| if j + 1 == k { 1.0 } else { 0.0 }));
        assert_eq!(e.to_rep(), MatrixRep::pauli(k));
    }
    let i = Complex64::i();
    assert_eq!(Multivector::I.to_rep(), MatrixRep::IDENTITY.scale(i));
}

#[test]
fn identity_suite_is_deterministic_and_passes() {
    let a = run_identity_suite(500, 42);
    let b = run_identity_suite(500, 42);
    assert!(a.all_passed, "{a:?}");
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert!(a.max_rel_err < 1e-12);
}
