//! Finite-difference spacetime derivatives of multivector fields.

use serde::{Deserialize, Serialize};

use crate::ga::Multivector;
use crate::spacetime::Paravector;

/// Difference scheme for a single partial derivative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stencil {
    /// Second-order central difference.
    #[default]
    Central,
    /// Richardson extrapolation of two central differences, fourth order.
    Richardson,
}

fn shifted(x: &Paravector, mu: usize, h: f64) -> Paravector {
    let mut c = x.components();
    c[mu] += h;
    Paravector::from_components(c)
}

fn central<F>(f: &F, x: &Paravector, mu: usize, h: f64) -> Multivector
where
    F: Fn(&Paravector) -> Multivector,
{
    (f(&shifted(x, mu, h)) - f(&shifted(x, mu, -h))) / (2.0 * h)
}

/// `∂G/∂x^μ` at `x`.
pub fn partial<F>(f: &F, x: &Paravector, mu: usize, h: f64, stencil: Stencil) -> Multivector
where
    F: Fn(&Paravector) -> Multivector,
{
    match stencil {
        Stencil::Central => central(f, x, mu, h),
        Stencil::Richardson => (central(f, x, mu, 0.5 * h) * 4.0 - central(f, x, mu, h)) / 3.0,
    }
}

/// All four partials `∂_μ G`.
pub fn partials<F>(f: &F, x: &Paravector, h: f64, stencil: Stencil) -> [Multivector; 4]
where
    F: Fn(&Paravector) -> Multivector,
{
    std::array::from_fn(|mu| partial(f, x, mu, h, stencil))
}

fn spatial_basis(k: usize) -> Multivector {
    [Multivector::E1, Multivector::E2, Multivector::E3][k]
}

/// `∂G = ∂_0 G - Σ e_k ∂_k G`.
pub fn del<F>(f: &F, x: &Paravector, h: f64, stencil: Stencil) -> Multivector
where
    F: Fn(&Paravector) -> Multivector,
{
    let d = partials(f, x, h, stencil);
    (0..3).fold(d[0], |acc, k| acc - spatial_basis(k) * d[k + 1])
}

/// `∂̄G = ∂_0 G + Σ e_k ∂_k G`.
pub fn del_bar<F>(f: &F, x: &Paravector, h: f64, stencil: Stencil) -> Multivector
where
    F: Fn(&Paravector) -> Multivector,
{
    let d = partials(f, x, h, stencil);
    (0..3).fold(d[0], |acc, k| acc + spatial_basis(k) * d[k + 1])
}
