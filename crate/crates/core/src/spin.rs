//! Spin-½ states as ideal spinors `ψ = ρ^{1/2} R P₃`, with up/down expansion,
//! projector filters, measurement probabilities and uncertainty statistics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{p3, p3_bar, projector, Multivector};

/// Tolerance on `|n| = 1` for measurement directions.
pub const UNIT_TOL: f64 = 1e-9;

fn check_unit(n: [f64; 3]) -> Result<()> {
    let norm = n.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    Ok(())
}

/// `R = exp(-i e3 φ/2) exp(-i e2 θ/2) exp(-i e3 χ/2)`.
pub fn euler_rotor(phi: f64, theta: f64, chi: f64) -> Multivector {
    let about = |axis: Multivector, angle: f64| (Multivector::I * axis * (-0.5 * angle)).exp();
    about(Multivector::E3, phi) * about(Multivector::E2, theta) * about(Multivector::E3, chi)
}

/// `2⟨ψ φ†⟩_S` as a complex number: the Hermitian product `φᴴψ` of the spinor
/// columns.
pub fn inner(phi: &Multivector, psi: &Multivector) -> Complex64 {
    (*psi * phi.reverse()).complex_scalar() * 2.0
}

/// Element of the minimal left ideal `(APS)P₃`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdealSpinor(Multivector);

/// Euler-angle description of a state, as exchanged in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerState {
    pub phi: f64,
    pub theta: f64,
    pub chi: f64,
    pub rho: f64,
}

impl IdealSpinor {
    /// Accepts `ψ` if `ψ P₃ = ψ`.
    pub fn new(psi: Multivector) -> Result<Self> {
        if !(psi * p3()).approx_eq(&psi) {
            return Err(Error::InvalidArgument {
                module: "spin",
                parameter: "psi",
                reason: "element is not in the ideal (APS)P₃".into(),
            });
        }
        Ok(Self(psi))
    }

    /// `ρ^{1/2} R P₃`.
    pub fn from_rotor(r: &Multivector, rho: f64) -> Self {
        Self(*r * p3() * rho.sqrt())
    }

    pub fn from_euler(state: &EulerState) -> Self {
        Self::from_rotor(&euler_rotor(state.phi, state.theta, state.chi), state.rho)
    }

    /// Builds `ψ` from its two-component column.
    pub fn from_components(c: [Complex64; 2]) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let m = crate::ga::MatrixRep([[c[0], zero], [c[1], zero]]);
        Self(Multivector::from_rep(&m))
    }

    /// The nonzero column of the matrix representation.
    pub fn components(&self) -> [Complex64; 2] {
        self.0.to_rep().first_column()
    }

    pub fn mv(&self) -> Multivector {
        self.0
    }

    /// `ρ = 2⟨ψψ†⟩_S`.
    pub fn density(&self) -> f64 {
        inner(&self.0, &self.0).re
    }

    /// `ψψ†/ρ = ½(1 + s)`.
    pub fn spin_density(&self) -> Result<SpinDensity> {
        let rho = self.density();
        if !(rho > 0.0) {
            return Err(Error::InvalidArgument {
                module: "spin",
                parameter: "psi",
                reason: "zero spinor has no spin direction".into(),
            });
        }
        let p = self.0 * self.0.reverse() / rho;
        let v = p.vector_part();
        SpinDensity::new(v.map(|c| 2.0 * c))
    }

    /// Spin direction `s = R e3 R†`.
    pub fn spin(&self) -> Result<[f64; 3]> {
        self.spin_density().map(|d| d.polarization)
    }

    /// Euler angles with the conventions of [`expand_up_down`].
    pub fn euler(&self) -> EulerState {
        let [a, b] = self.components();
        let rho = a.norm_sqr() + b.norm_sqr();
        let (phi, chi) = phases(a, b);
        EulerState {
            phi,
            theta: 2.0 * b.norm().atan2(a.norm()),
            chi,
            rho,
        }
    }
}

/// Recovers `(φ, χ)` from the column `(e^{-i(φ+χ)/2} cos θ/2, e^{i(φ-χ)/2} sin θ/2)`.
/// At the poles only one combination is defined and `φ = 0` is used.
fn phases(a: Complex64, b: Complex64) -> (f64, f64) {
    let scale = a.norm().max(b.norm());
    let tol = 1e-12 * scale;
    match (a.norm() > tol, b.norm() > tol) {
        (true, true) => {
            let (s, d) = (-a.arg(), b.arg());
            (s + d, s - d)
        }
        (true, false) => (0.0, -2.0 * a.arg()),
        (false, true) => (0.0, -2.0 * b.arg()),
        (false, false) => (0.0, 0.0),
    }
}

/// Expansion `ψ = cos(θ/2) ψ↑ + sin(θ/2) ψ↓`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct UpDown {
    pub c_up: f64,
    pub c_down: f64,
    pub psi_up: Multivector,
    pub psi_down: Multivector,
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
}

/// Splits the rotor `R` into spin-up and spin-down parts.
///
/// `θ = 2 atan2(|P̄₃RP₃|, |P₃RP₃|)` stays well conditioned at the poles, where
/// `φ = 0` is taken.
pub fn expand_up_down(r: &Multivector) -> UpDown {
    let psi = *r * p3();
    let up = p3() * psi;
    let down = p3_bar() * psi;
    let theta = 2.0 * down.norm().atan2(up.norm());
    let [a, b] = psi.to_rep().first_column();
    let (phi, chi) = phases(a, b);
    let rho = psi
        .to_rep()
        .first_column()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>();
    let rotate = |angle: f64| (Multivector::I * Multivector::E3 * (-0.5 * angle)).exp();
    let psi_up = rotate(phi + chi) * p3() * rho.sqrt();
    let n = rotate(phi) * Multivector::E2 * rotate(-phi);
    let psi_down = -(Multivector::I * n * psi_up);
    UpDown {
        c_up: (0.5 * theta).cos(),
        c_down: (0.5 * theta).sin(),
        psi_up,
        psi_down,
        theta,
        phi,
        chi,
    }
}

/// Spin density operator `ϱ = ½(1 + P)` with `|P| ≤ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinDensity {
    pub polarization: [f64; 3],
}

impl SpinDensity {
    pub fn new(polarization: [f64; 3]) -> Result<Self> {
        let norm = polarization.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm <= 1.0 + UNIT_TOL) {
            return Err(Error::InvalidArgument {
                module: "spin",
                parameter: "polarization",
                reason: format!("|P| = {norm} exceeds 1"),
            });
        }
        Ok(Self { polarization })
    }

    /// Pure state with spin `s`.
    pub fn pure(s: [f64; 3]) -> Result<Self> {
        check_unit(s)?;
        Ok(Self { polarization: s })
    }

    pub fn mv(&self) -> Multivector {
        projector(self.polarization)
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        let norm = self.polarization.iter().map(|c| c * c).sum::<f64>().sqrt();
        (norm - 1.0).abs() <= tol
    }
}

/// Probability `2⟨P_n ϱ⟩_S` of passing the filter for direction `n`.
pub fn measure_probability(rho: &SpinDensity, n: [f64; 3]) -> Result<f64> {
    check_unit(n)?;
    Ok(2.0 * (projector(n) * rho.mv()).scalar_part())
}

/// Filtered density `P_n ϱ P_n` and its weight `2⟨P_n ϱ⟩_S`.
pub fn filter(rho: &SpinDensity, n: [f64; 3]) -> Result<(Multivector, f64)> {
    let weight = measure_probability(rho, n)?;
    let pn = projector(n);
    Ok((pn * rho.mv() * pn, weight))
}

/// `⟨Ψ e3 Ψ† m⟩_S = ρ s·m` for a low-velocity amplitude `Ψ ≈ ρ^{1/2} R`.
pub fn spin_component_distribution(psi: &Multivector, m: [f64; 3]) -> Result<f64> {
    check_unit(m)?;
    Ok((*psi * Multivector::E3 * psi.reverse() * Multivector::vector(m)).scalar_part())
}

/// Spreads of `s·e1`, `s·e2` and the mean of `s·e3` for a pure state.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct UncertaintyStats {
    pub delta_x: f64,
    pub delta_y: f64,
    pub mean_z_abs: f64,
    /// `Δσx Δσy - |⟨σz⟩|`.
    pub slack: f64,
    pub satisfied: bool,
}

/// Spread of the ±1 outcomes along `n`, from the filter probabilities
/// `½(1 ± s·n)`: mean `s·n` and `(Δ)² = 1 - (s·n)²`.
pub fn spread(rho: &SpinDensity, n: [f64; 3]) -> Result<(f64, f64)> {
    let p_plus = measure_probability(rho, n)?;
    let p_minus = measure_probability(rho, n.map(|c| -c))?;
    let mean = p_plus - p_minus;
    let second = p_plus + p_minus;
    Ok((mean, (second - mean * mean).max(0.0).sqrt()))
}

pub fn uncertainty_stats(s: [f64; 3]) -> Result<UncertaintyStats> {
    let rho = SpinDensity::pure(s)?;
    let (_, delta_x) = spread(&rho, [1.0, 0.0, 0.0])?;
    let (_, delta_y) = spread(&rho, [0.0, 1.0, 0.0])?;
    let (mean_z, _) = spread(&rho, [0.0, 0.0, 1.0])?;
    let slack = delta_x * delta_y - mean_z.abs();
    Ok(UncertaintyStats {
        delta_x,
        delta_y,
        mean_z_abs: mean_z.abs(),
        slack,
        satisfied: slack >= -1e-12,
    })
}
