//! The Clifford algebra of physical space, Cl(3,0).
//!
//! A [`Multivector`] stores eight real coefficients over the basis
//! `{1, e1, e2, e3, e23, e31, e12, e123}`. Internally the product is evaluated
//! in the complex-quaternion form `x = α + a`, where `α` is a complex scalar
//! (scalar + pseudoscalar) and `a` a complex vector (vector + bivector), using
//! the pseudoscalar `i = e1e2e3` as the unit imaginary:
//!
//! ```text
//! (α + a)(β + b) = αβ + a·b + αb + βa + i a×b
//! ```
//!
//! The [`MatrixRep`] (Pauli-matrix representation) evaluates the same algebra
//! by an independent route and serves as the test oracle.

mod matrix;
pub mod oracle;

pub use matrix::MatrixRep;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used by [`Multivector::approx_eq`].
pub const REL_TOL: f64 = 1e-12;
/// Absolute floor used by [`Multivector::approx_eq`].
pub const ABS_TOL: f64 = 1e-14;

/// Coefficient of the element along each basis blade, in storage order.
pub const BLADE_NAMES: [&str; 8] = ["1", "e1", "e2", "e3", "e23", "e31", "e12", "e123"];

/// Element of the algebra of physical space.
#[derive(Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multivector(pub [f64; 8]);

/// The four conjugation-based part maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// `(x + x̄)/2`: scalar + pseudoscalar.
    ScalarLike,
    /// `(x - x̄)/2`: vector + bivector.
    VectorLike,
    /// `(x + x†)/2`: scalar + vector (hermitian).
    Real,
    /// `(x - x†)/2`: bivector + pseudoscalar (antihermitian).
    Imaginary,
}

impl Multivector {
    pub const ZERO: Self = Self([0.0; 8]);
    pub const ONE: Self = Self::blade(0);
    pub const E1: Self = Self::blade(1);
    pub const E2: Self = Self::blade(2);
    pub const E3: Self = Self::blade(3);
    pub const E23: Self = Self::blade(4);
    pub const E31: Self = Self::blade(5);
    pub const E12: Self = Self::blade(6);
    /// The pseudoscalar `e1e2e3`, which plays the role of the unit imaginary.
    pub const I: Self = Self::blade(7);

    const fn blade(k: usize) -> Self {
        let mut c = [0.0; 8];
        c[k] = 1.0;
        Self(c)
    }

    pub const fn new(c: [f64; 8]) -> Self {
        Self(c)
    }

    pub fn scalar(s: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = s;
        Self(c)
    }

    pub fn vector(v: [f64; 3]) -> Self {
        Self([0.0, v[0], v[1], v[2], 0.0, 0.0, 0.0, 0.0])
    }

    /// Bivector with components along `e23`, `e31`, `e12`.
    pub fn bivector(b: [f64; 3]) -> Self {
        Self([0.0, 0.0, 0.0, 0.0, b[0], b[1], b[2], 0.0])
    }

    pub fn pseudoscalar(p: f64) -> Self {
        let mut c = [0.0; 8];
        c[7] = p;
        Self(c)
    }

    /// Builds `α + a` from a complex scalar and a complex vector.
    pub fn from_complex(alpha: Complex64, a: [Complex64; 3]) -> Self {
        Self([
            alpha.re, a[0].re, a[1].re, a[2].re, a[0].im, a[1].im, a[2].im, alpha.im,
        ])
    }

    /// Complex scalar `α` (scalar + i·pseudoscalar-coefficient).
    pub fn complex_scalar(&self) -> Complex64 {
        Complex64::new(self.0[0], self.0[7])
    }

    /// Complex vector `a` with `a_k = v_k + i b_k`, where `i b_1 = b_1 e23` etc.
    pub fn complex_vector(&self) -> [Complex64; 3] {
        let c = &self.0;
        [
            Complex64::new(c[1], c[4]),
            Complex64::new(c[2], c[5]),
            Complex64::new(c[3], c[6]),
        ]
    }

    pub fn coefficients(&self) -> &[f64; 8] {
        &self.0
    }

    pub fn scalar_part(&self) -> f64 {
        self.0[0]
    }

    pub fn vector_part(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn bivector_part(&self) -> [f64; 3] {
        [self.0[4], self.0[5], self.0[6]]
    }

    pub fn pseudoscalar_part(&self) -> f64 {
        self.0[7]
    }

    /// Geometric product.
    pub fn gp(&self, rhs: &Self) -> Self {
        let alpha = self.complex_scalar();
        let beta = rhs.complex_scalar();
        let a = self.complex_vector();
        let b = rhs.complex_vector();
        let i = Complex64::i();
        let cross = cross(&a, &b);
        let scalar = alpha * beta + dot(&a, &b);
        let vec = [
            alpha * b[0] + beta * a[0] + i * cross[0],
            alpha * b[1] + beta * a[1] + i * cross[1],
            alpha * b[2] + beta * a[2] + i * cross[2],
        ];
        Self::from_complex(scalar, vec)
    }

    /// Reversion `x†`: reverses the order of vector factors (hermitian conjugate).
    pub fn reverse(&self) -> Self {
        let c = &self.0;
        Self([c[0], c[1], c[2], c[3], -c[4], -c[5], -c[6], -c[7]])
    }

    /// Clifford conjugate `x̄`: negates vectors and bivectors.
    pub fn conj(&self) -> Self {
        let c = &self.0;
        Self([c[0], -c[1], -c[2], -c[3], -c[4], -c[5], -c[6], c[7]])
    }

    /// Grade involution `x̄†`: negates the odd grades.
    pub fn grade_involution(&self) -> Self {
        let c = &self.0;
        Self([c[0], -c[1], -c[2], -c[3], c[4], c[5], c[6], -c[7]])
    }

    /// Projection onto vector grade `k` (0..=3).
    ///
    /// # Panics
    /// Panics if `k > 3`.
    pub fn grade(&self, k: usize) -> Self {
        let keep: &[usize] = match k {
            0 => &[0],
            1 => &[1, 2, 3],
            2 => &[4, 5, 6],
            3 => &[7],
            _ => panic!("grade {k} does not exist in a three-dimensional algebra"),
        };
        let mut out = [0.0; 8];
        for &j in keep {
            out[j] = self.0[j];
        }
        Self(out)
    }

    pub fn part(&self, which: Part) -> Self {
        match which {
            Part::ScalarLike => (*self + self.conj()) * 0.5,
            Part::VectorLike => (*self - self.conj()) * 0.5,
            Part::Real => (*self + self.reverse()) * 0.5,
            Part::Imaginary => (*self - self.reverse()) * 0.5,
        }
    }

    /// Even part `(x + x̄†)/2`.
    pub fn even(&self) -> Self {
        (*self + self.grade_involution()) * 0.5
    }

    /// Odd part `(x - x̄†)/2`.
    pub fn odd(&self) -> Self {
        (*self - self.grade_involution()) * 0.5
    }

    /// Quadratic form `x x̄`, always a complex scalar; equals `det rep(x)`.
    pub fn quad_form(&self) -> Complex64 {
        let alpha = self.complex_scalar();
        let a = self.complex_vector();
        alpha * alpha - dot(&a, &a)
    }

    /// `x x̄` evaluated with compensated arithmetic. Worth the cost when the
    /// coefficients are large and the result is near one, as for strongly
    /// boosted Lorentz rotors.
    pub fn quad_form_accurate(&self) -> Complex64 {
        let c = &self.0;
        let re = dot2(
            &[c[0], c[7], c[1], c[2], c[3], c[4], c[5], c[6]],
            &[c[0], -c[7], -c[1], -c[2], -c[3], c[4], c[5], c[6]],
        );
        let im = 2.0 * dot2(&[c[0], c[1], c[2], c[3]], &[c[7], -c[4], -c[5], -c[6]]);
        Complex64::new(re, im)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    /// `x⁻¹ = x̄ (x x̄)⁻¹`.
    pub fn inverse(&self) -> Result<Self> {
        let q = self.quad_form();
        let threshold = REL_TOL * self.norm_sq();
        if q.norm() < threshold || q.norm() == 0.0 {
            return Err(Error::NonInvertible {
                quad_form: q.norm(),
                threshold,
            });
        }
        Ok(self.conj().scale_complex(q.inv()))
    }

    /// Clifford-Hodge dual `*x = -i x`.
    pub fn dual(&self) -> Self {
        let c = &self.0;
        // -i(r + i m) = m - i r on each (k, k+3) pair and on (0, 7)
        Self([c[7], c[4], c[5], c[6], -c[1], -c[2], -c[3], -c[0]])
    }

    /// Multiplication by a complex scalar (a central element).
    pub fn scale_complex(&self, z: Complex64) -> Self {
        let alpha = self.complex_scalar() * z;
        let a = self.complex_vector().map(|ak| ak * z);
        Self::from_complex(alpha, a)
    }

    /// Exponential, using `a² = a·a` for the complex-vector part:
    /// `exp(α + a) = e^α (cosh √w + a sinh √w / √w)` with `w = a·a`.
    pub fn exp(&self) -> Self {
        let alpha = self.complex_scalar();
        let a = self.complex_vector();
        let (c, s) = cosh_sinhc(dot(&a, &a));
        let e = alpha.exp();
        Self::from_complex(e * c, a.map(|ak| e * s * ak))
    }

    /// `|x - y| <= max(ABS_TOL, REL_TOL * max(|x|, |y|))` in the coefficient norm.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.approx_eq_tol(other, REL_TOL, ABS_TOL)
    }

    pub fn approx_eq_tol(&self, other: &Self, rel: f64, abs: f64) -> bool {
        let diff = (*self - *other).norm();
        diff <= abs.max(rel * self.norm().max(other.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn to_rep(&self) -> MatrixRep {
        MatrixRep::from_multivector(self)
    }

    pub fn from_rep(m: &MatrixRep) -> Self {
        m.to_multivector()
    }
}

/// `cosh √w` and `sinh √w / √w` on the principal branch, with a Taylor
/// fallback near the removable singularity at `w = 0`.
pub(crate) fn cosh_sinhc(w: Complex64) -> (Complex64, Complex64) {
    if w.norm() < 1e-8 {
        let w2 = w * w;
        let w3 = w2 * w;
        let w4 = w3 * w;
        let c = 1.0 + w / 2.0 + w2 / 24.0 + w3 / 720.0 + w4 / 40320.0;
        let s = 1.0 + w / 6.0 + w2 / 120.0 + w3 / 5040.0 + w4 / 362880.0;
        (c, s)
    } else {
        let r = w.sqrt();
        (r.cosh(), r.sinh() / r)
    }
}

/// Dot product of two real vectors accurate to about one rounding of the
/// exact result: products are split exactly with FMA and summed with
/// compensation (Ogita, Rump and Oishi's Dot2).
pub(crate) fn dot2(x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0f64;
    let mut comp = 0.0f64;
    for (a, b) in x.iter().zip(y) {
        let p = a * b;
        let p_err = a.mul_add(*b, -p);
        let t = s + p;
        let z = t - s;
        comp += (s - (t - z)) + (p - z) + p_err;
        s = t;
    }
    s + comp
}

pub(crate) fn dot(a: &[Complex64; 3], b: &[Complex64; 3]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector{:?}", self.0)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.0.iter().zip(BLADE_NAMES) {
            if *c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if name == "1" {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Index<usize> for Multivector {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.gp(&rhs)
    }
}

impl MulAssign for Multivector {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.gp(&rhs);
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self(self.0.map(|c| c * rhs))
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

impl Div<f64> for Multivector {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        Self(self.0.map(|c| c / rhs))
    }
}

impl Mul<Complex64> for Multivector {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale_complex(rhs)
    }
}

impl From<f64> for Multivector {
    fn from(s: f64) -> Self {
        Self::scalar(s)
    }
}

/// Projector `P_n = (1 + n)/2` for a direction `n` (not normalized here).
pub fn projector(n: [f64; 3]) -> Multivector {
    (Multivector::ONE + Multivector::vector(n)) * 0.5
}

/// `P₃ = (1 + e3)/2`.
pub fn p3() -> Multivector {
    projector([0.0, 0.0, 1.0])
}

/// `P̄₃ = (1 - e3)/2`.
pub fn p3_bar() -> Multivector {
    projector([0.0, 0.0, -1.0])
}
