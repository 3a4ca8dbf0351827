//! Paravector spacetime: the Minkowski product, biparavector exponentials and
//! Lorentz rotors `L` acting as `p ↦ L p L†`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{Multivector, Part};

/// Largest `|L L̄ - 1|` accepted for a Lorentz rotor.
pub const UNIMODULAR_TOL: f64 = 1e-9;
/// Relative tolerance on `p p̄ = m²` for on-shell momenta.
pub const ON_SHELL_TOL: f64 = 1e-9;

/// Scalar plus real vector: a spacetime vector `p = p^μ e_μ` with `e_0 = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Paravector(Multivector);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Causal {
    Timelike,
    Spacelike,
    Null,
}

impl Paravector {
    pub fn new(p0: f64, p: [f64; 3]) -> Self {
        Self(Multivector::scalar(p0) + Multivector::vector(p))
    }

    /// Basis paravector `e_μ`, with `e_0 = 1`.
    pub fn basis(mu: usize) -> Self {
        let mut c = [0.0; 4];
        c[mu] = 1.0;
        Self::from_components(c)
    }

    pub fn from_components(c: [f64; 4]) -> Self {
        Self::new(c[0], [c[1], c[2], c[3]])
    }

    /// The real part `⟨x⟩_ℜ` of `x`, which is always a paravector.
    pub fn real_part_of(x: &Multivector) -> Self {
        let r = x.part(Part::Real);
        Self::new(r.scalar_part(), r.vector_part())
    }

    pub fn components(&self) -> [f64; 4] {
        let v = self.0.vector_part();
        [self.0.scalar_part(), v[0], v[1], v[2]]
    }

    pub fn time(&self) -> f64 {
        self.0.scalar_part()
    }

    pub fn space(&self) -> [f64; 3] {
        self.0.vector_part()
    }

    pub fn mv(&self) -> Multivector {
        self.0
    }

    pub fn bar(&self) -> Self {
        Self(self.0.conj())
    }

    /// `p p̄ = (p⁰)² - |p|²`.
    pub fn interval(&self) -> f64 {
        minkowski_dot(self, self)
    }

    /// Causal character, with `tol` as the absolute band around null.
    pub fn classify(&self, tol: f64) -> Causal {
        let s = self.interval();
        if s > tol {
            Causal::Timelike
        } else if s < -tol {
            Causal::Spacelike
        } else {
            Causal::Null
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0 * s)
    }
}

impl std::ops::Add for Paravector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Paravector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl From<Paravector> for Multivector {
    fn from(p: Paravector) -> Self {
        p.0
    }
}

/// Vector plus bivector, `W = a + i b`; the electromagnetic field `F = E + iB`
/// is one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Biparavector(Multivector);

impl Biparavector {
    /// `a + i b`.
    pub fn new(a: [f64; 3], b: [f64; 3]) -> Self {
        Self(Multivector::vector(a) + Multivector::bivector(b))
    }

    /// The vector-like part `⟨x⟩_V` of `x`.
    pub fn vector_like_part_of(x: &Multivector) -> Self {
        Self(x.part(Part::VectorLike))
    }

    /// Real vector part (the electric field for `F`).
    pub fn real(&self) -> [f64; 3] {
        self.0.vector_part()
    }

    /// Coefficients of `i` (the magnetic field for `F`).
    pub fn imag(&self) -> [f64; 3] {
        self.0.bivector_part()
    }

    pub fn mv(&self) -> Multivector {
        self.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0 * s)
    }

    /// `W² = W·W`, a complex scalar.
    pub fn square(&self) -> Complex64 {
        -self.0.quad_form()
    }
}

impl From<Biparavector> for Multivector {
    fn from(w: Biparavector) -> Self {
        w.0
    }
}

/// Unimodular element `L` (`L L̄ = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LorentzRotor(Multivector);

/// `|x x̄ - 1|`.
pub fn unimodular_deviation(x: &Multivector) -> f64 {
    (x.quad_form_accurate() - 1.0).norm()
}

impl LorentzRotor {
    pub const IDENTITY: Self = Self(Multivector::ONE);

    pub fn new(l: Multivector) -> Result<Self> {
        let deviation = unimodular_deviation(&l);
        if !(deviation <= UNIMODULAR_TOL) {
            return Err(Error::NotUnimodular { deviation });
        }
        Ok(Self(l))
    }

    /// Rescales `x` by the principal root of `x x̄` so that it becomes
    /// unimodular.
    pub fn project(x: &Multivector) -> Result<Self> {
        let q = x.quad_form_accurate();
        if q.norm() < crate::ga::REL_TOL * x.norm_sq() || q.norm() == 0.0 {
            return Err(Error::NonInvertible {
                quad_form: q.norm(),
                threshold: crate::ga::REL_TOL * x.norm_sq(),
            });
        }
        Ok(Self(x.scale_complex(q.sqrt().inv())))
    }

    /// Nearest unimodular element to `x` in the coefficient norm, for `x`
    /// already close to unimodular.
    ///
    /// Each Gauss-Newton step moves `x` by `-(x x̄ - 1)/(2‖x‖²) x̄†`, the
    /// minimum-norm change that fixes `x x̄` to first order. For strongly
    /// boosted rotors this disturbs `x` far less than rescaling by
    /// `√(x x̄)`, whose error grows with `‖x‖²`.
    pub fn project_nearest(x: &Multivector) -> Result<Self> {
        let mut l = *x;
        for _ in 0..3 {
            let defect = l.quad_form_accurate() - 1.0;
            if defect.norm() == 0.0 {
                break;
            }
            let step = l
                .conj()
                .reverse()
                .scale_complex(defect * (-0.5 / l.norm_sq()));
            l += step;
        }
        Self::new(l)
    }

    pub fn mv(&self) -> Multivector {
        self.0
    }

    pub fn deviation(&self) -> f64 {
        unimodular_deviation(&self.0)
    }

    /// `L̄ = L⁻¹`.
    pub fn inverse(&self) -> Self {
        Self(self.0.conj())
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self(self.0 * rhs.0)
    }

    /// `L p L†`.
    pub fn transform(&self, p: &Paravector) -> Paravector {
        lorentz_transform(self, p)
    }

    /// True if `L† L = 1` within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.0.reverse() * self.0).approx_eq_tol(&Multivector::ONE, 0.0, tol)
    }

    /// True if `L† = L` within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.0.reverse().approx_eq_tol(&self.0, 0.0, tol)
    }
}

impl From<LorentzRotor> for Multivector {
    fn from(l: LorentzRotor) -> Self {
        l.0
    }
}

/// `exp(W)`; Lorentz rotors are `exp(W/2)`.
pub fn exp_biparavector(w: &Biparavector) -> LorentzRotor {
    LorentzRotor(w.0.exp())
}

/// `p ↦ L p L†`.
pub fn lorentz_transform(l: &LorentzRotor, p: &Paravector) -> Paravector {
    Paravector::real_part_of(&(l.0 * p.0 * l.0.reverse()))
}

/// `⟨p q̄⟩_S = p⁰q⁰ - p·q`.
pub fn minkowski_dot(p: &Paravector, q: &Paravector) -> f64 {
    let (a, b) = (p.components(), q.components());
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// Factors `L = B R` with `B = √(L L†)` hermitian (positive scalar part) and
/// `R` unitary.
pub fn polar_decompose(l: &LorentzRotor) -> (LorentzRotor, LorentzRotor) {
    let q = l.0 * l.0.reverse();
    // q is a unimodular positive paravector; its root is (1 + q)/√(2(1 + q⁰)).
    let q = Paravector::real_part_of(&q);
    let b = (Multivector::ONE + q.mv()) / (2.0 * (1.0 + q.time())).sqrt();
    let r = b.conj() * l.0;
    (LorentzRotor(b), LorentzRotor(r))
}

/// Boost `B = (p + m)/√(2m(E + m))` taking `e_0` to the proper velocity `p/m`.
pub fn boost_from_momentum(p: &Paravector, m: f64) -> Result<LorentzRotor> {
    if !(m > 0.0) {
        return Err(Error::InvalidArgument {
            module: "spacetime",
            parameter: "m",
            reason: format!("mass must be positive, got {m}"),
        });
    }
    let energy = p.time();
    let s = p.space();
    let momentum = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    if !(energy > momentum) {
        return Err(Error::NonTimelike { energy, momentum });
    }
    let invariant = p.interval();
    let mass_sq = m * m;
    if (invariant - mass_sq).abs() > ON_SHELL_TOL * mass_sq {
        return Err(Error::OffShell { invariant, mass_sq });
    }
    let b = (p.mv() + Multivector::scalar(m)) / (2.0 * m * (energy + m)).sqrt();
    Ok(LorentzRotor(b))
}

/// Spatial rotor `exp(-i n θ/2)` about the (not necessarily unit) axis `n`,
/// rotating by `θ|n|`.
pub fn rotor(n: [f64; 3], theta: f64) -> LorentzRotor {
    exp_biparavector(&Biparavector::new([0.0; 3], n).scale(-0.5 * theta))
}

/// Boost `exp(n w/2)` of rapidity `w|n|` along `n`.
pub fn boost(n: [f64; 3], rapidity: f64) -> LorentzRotor {
    exp_biparavector(&Biparavector::new(n, [0.0; 3]).scale(0.5 * rapidity))
}

/// On-shell momentum `m γ(1 + v)` for a velocity `v`.
pub fn momentum_from_velocity(m: f64, v: [f64; 3]) -> Result<Paravector> {
    let speed = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if !(speed < 1.0) {
        return Err(Error::SuperluminalVelocity { speed });
    }
    let gamma = 1.0 / (1.0 - speed * speed).sqrt();
    Ok(Paravector::new(m * gamma, v.map(|c| m * gamma * c)))
}
