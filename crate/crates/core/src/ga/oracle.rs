//! Randomized equivalence check of the coefficient arithmetic against the
//! 2×2 complex matrix representation.
//!
//! Every channel is computed twice: once with [`Multivector`] methods and once
//! with plain matrix algebra on `to_rep` images, then compared in the
//! Frobenius norm relative to the matrix result.

use serde::Serialize;

use super::{MatrixRep, Multivector, REL_TOL};
use crate::sampling;

/// Worst relative error seen on each channel.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ChannelErrors {
    pub product: f64,
    pub reversion: f64,
    pub clifford_conj: f64,
    pub inverse: f64,
    pub trace: f64,
    pub determinant: f64,
}

impl ChannelErrors {
    pub fn max(&self) -> f64 {
        [
            self.product,
            self.reversion,
            self.clifford_conj,
            self.inverse,
            self.trace,
            self.determinant,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub trials: usize,
    pub seed: u64,
    /// Pairs skipped because one element was not invertible.
    pub skipped_inverse: usize,
    pub errors: ChannelErrors,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub all_passed: bool,
}

fn rel_err(got: &MatrixRep, want: &MatrixRep) -> f64 {
    let scale = want.frobenius().max(f64::MIN_POSITIVE);
    (*got - *want).frobenius() / scale
}

/// Runs `trials` seeded random pairs through every channel.
pub fn run_identity_suite(trials: usize, seed: u64) -> IdentityReport {
    let mut rng = sampling::stream_rng(seed, 0);
    let mut errors = ChannelErrors::default();
    let mut skipped_inverse = 0;

    for _ in 0..trials {
        let a = sampling::multivector(&mut rng);
        let b = sampling::multivector(&mut rng);
        let (ma, mb) = (a.to_rep(), b.to_rep());

        errors.product = errors.product.max(rel_err(&(a * b).to_rep(), &(ma * mb)));
        errors.reversion = errors
            .reversion
            .max(rel_err(&a.reverse().to_rep(), &ma.adjoint()));
        errors.clifford_conj = errors
            .clifford_conj
            .max(rel_err(&a.conj().to_rep(), &ma.adjugate()));

        match (a.inverse(), ma.inverse()) {
            (Ok(inv), Some(minv)) => {
                errors.inverse = errors.inverse.max(rel_err(&inv.to_rep(), &minv));
            }
            _ => skipped_inverse += 1,
        }

        // ⟨a⟩_S is half the trace; a ā is the determinant.
        let half_trace = ma.trace() * 0.5;
        let s = a.complex_scalar();
        errors.trace = errors
            .trace
            .max((s - half_trace).norm() / half_trace.norm().max(f64::MIN_POSITIVE));
        let det = ma.det();
        errors.determinant = errors
            .determinant
            .max((a.quad_form() - det).norm() / det.norm().max(f64::MIN_POSITIVE));
    }

    let max_rel_err = errors.max();
    IdentityReport {
        trials,
        seed,
        skipped_inverse,
        errors,
        max_rel_err,
        tolerance: REL_TOL,
        all_passed: max_rel_err < REL_TOL,
    }
}

/// Convenience used by tests: relative error of `x` against a matrix.
pub fn rel_err_to(x: &Multivector, m: &MatrixRep) -> f64 {
    rel_err(&x.to_rep(), m)
}
