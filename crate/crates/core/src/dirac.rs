//! The classical Dirac equation `p Ψ̄† = m Ψ` for current amplitudes
//! `Ψ = ρ^{1/2} Λ`, its bispinor images, large/small components, de Broglie
//! plane waves and the conserved currents `J = Ψ e₀ Ψ†`, `𝔖 = Ψ e₃ Ψ†`.
//!
//! Plane waves use spacetime coordinates with `c = 1`; `ħ`, `e` and `m` come
//! from the [`Particle`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diff::{self, Stencil};
use crate::dynamics::Particle;
use crate::error::{Error, Result};
use crate::ga::{p3, MatrixRep, Multivector};
use crate::spacetime::{boost_from_momentum, Paravector};

/// Largest number of plane waves in a superposition.
pub const MAX_WAVES: usize = 64;

/// `|**p**|/m` above which the Pauli-Schrödinger comparison is flagged.
pub const NONRELATIVISTIC_LIMIT: f64 = 0.2;

/// Tolerance on `R₀ R₀† = 1` for plane-wave rest rotors.
const ROTOR_TOL: f64 = 1e-9;

/// `p Ψ̄† - m Ψ`. Real-linear in `Ψ`.
pub fn classical_dirac_residual(psi: &Multivector, p: &Paravector, m: f64) -> Multivector {
    p.mv() * psi.conj().reverse() - *psi * m
}

/// Value of a current amplitude at one spacetime point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurrentAmplitude(Multivector);

impl CurrentAmplitude {
    pub fn new(psi: Multivector) -> Self {
        Self(psi)
    }

    /// `Ψ = ρ^{1/2} Λ`.
    pub fn from_rotor(rho: f64, lambda: &Multivector) -> Result<Self> {
        if !(rho >= 0.0) {
            return Err(Error::InvalidArgument {
                module: "dirac",
                parameter: "rho",
                reason: format!("density must be non-negative, got {rho}"),
            });
        }
        Ok(Self(*lambda * rho.sqrt()))
    }

    pub fn mv(&self) -> Multivector {
        self.0
    }

    /// `Ψ Ψ̄`, equal to the real density `ρ` when `Ψ = ρ^{1/2} Λ`.
    pub fn invariant(&self) -> Complex64 {
        (self.0 * self.0.conj()).complex_scalar()
    }

    /// `J = Ψ e₀ Ψ†`.
    pub fn current(&self) -> Paravector {
        Paravector::real_part_of(&(self.0 * self.0.reverse()))
    }

    /// `𝔖 = Ψ e₃ Ψ†`.
    pub fn spin_current(&self) -> Paravector {
        Paravector::real_part_of(&(self.0 * Multivector::E3 * self.0.reverse()))
    }

    /// `𝔍± = Ψ (e₀ ± e₃) Ψ†`, returned as `(𝔍₊, 𝔍₋)`.
    pub fn null_currents(&self) -> (Paravector, Paravector) {
        let (j, s) = (self.current(), self.spin_current());
        (j + s, j - s)
    }

    /// Spin biparavector `S = -i Λ e₃ Λ̄ = -i Ψ e₃ Ψ̄ / (Ψ Ψ̄)`.
    pub fn spin_biparavector(&self) -> Result<Multivector> {
        let rho = self.invariant();
        let quad_form = rho.norm();
        if quad_form < 1e-300 {
            return Err(Error::NonInvertible {
                quad_form,
                threshold: 1e-300,
            });
        }
        let s = -(Multivector::I * self.0 * Multivector::E3 * self.0.conj());
        Ok(s.scale_complex(rho.inv()))
    }

    /// `|i Ψ e₃ + S Ψ|`, zero for every `Ψ = ρ^{1/2} Λ`.
    pub fn phase_spin_residual(&self) -> Result<f64> {
        let s = self.spin_biparavector()?;
        Ok((Multivector::I * self.0 * Multivector::E3 + s * self.0).norm())
    }

    /// `(⟨Ψ⟩₊, ⟨Ψ⟩₋)`.
    pub fn large_small(&self) -> LargeSmall {
        large_small_split(&self.0)
    }

    pub fn to_bispinor(&self, rep: Representation) -> Bispinor {
        to_bispinor(&self.0, rep)
    }
}

/// Even (large) and odd (small) parts `⟨Ψ⟩± = ½(Ψ ± Ψ̄†)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LargeSmall {
    pub large: Multivector,
    pub small: Multivector,
}

pub fn large_small_split(psi: &Multivector) -> LargeSmall {
    LargeSmall {
        large: psi.even(),
        small: psi.odd(),
    }
}

/// Representation of a four-component bispinor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Weyl,
    DiracPauli,
}

/// Dirac bispinor; serialized as four `[re, im]` pairs plus the tag.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bispinor {
    pub components: [Complex64; 4],
    pub rep: Representation,
}

/// 4×4 complex matrix acting on bispinor components.
pub type Gamma = [[Complex64; 4]; 4];

fn block(a: &MatrixRep, b: &MatrixRep, c: &MatrixRep, d: &MatrixRep) -> Gamma {
    let mut g = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (r, row) in g.iter_mut().enumerate() {
        for (col, e) in row.iter_mut().enumerate() {
            let m = match (r < 2, col < 2) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            *e = m.0[r % 2][col % 2];
        }
    }
    g
}

fn mat_mul(a: &Gamma, b: &Gamma) -> Gamma {
    std::array::from_fn(|r| std::array::from_fn(|c| (0..4).map(|k| a[r][k] * b[k][c]).sum()))
}

fn mat_vec(a: &Gamma, v: &[Complex64; 4]) -> [Complex64; 4] {
    std::array::from_fn(|r| (0..4).map(|k| a[r][k] * v[k]).sum())
}

/// `(1/√2)[[1, 1], [1, -1]]` in 2×2 blocks; its own inverse.
fn weyl_to_dirac_pauli() -> Gamma {
    let s = MatrixRep::IDENTITY.scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    block(&s, &s, &s, &s.scale(Complex64::new(-1.0, 0.0)))
}

/// Contravariant `γ^μ`. Weyl: `γ⁰ = [[0, 1], [1, 0]]`, `γᵏ = [[0, -σₖ], [σₖ, 0]]`;
/// Dirac-Pauli matrices follow by the similarity transform relating the two.
pub fn gamma(mu: usize, rep: Representation) -> Gamma {
    let zero = MatrixRep::IDENTITY.scale(Complex64::new(0.0, 0.0));
    let weyl = match mu {
        0 => block(&zero, &MatrixRep::IDENTITY, &MatrixRep::IDENTITY, &zero),
        1..=3 => {
            let s = MatrixRep::pauli(mu);
            block(&zero, &s.scale(Complex64::new(-1.0, 0.0)), &s, &zero)
        }
        _ => panic!("gamma index must be 0..=3, got {mu}"),
    };
    match rep {
        Representation::Weyl => weyl,
        Representation::DiracPauli => {
            let u = weyl_to_dirac_pauli();
            mat_mul(&mat_mul(&u, &weyl), &u)
        }
    }
}

/// `γ₅ = i γ⁰γ¹γ²γ³`, which is `diag(1, 1, -1, -1)` in the Weyl representation.
pub fn gamma5(rep: Representation) -> Gamma {
    let g = (1..4).fold(gamma(0, rep), |acc, k| mat_mul(&acc, &gamma(k, rep)));
    g.map(|row| row.map(|e| e * Complex64::i()))
}

/// Weyl stacking `(1/√2)(ΨP₃; Ψ̄†P₃)` or Dirac-Pauli stacking
/// `(⟨Ψ⟩₊P₃; ⟨Ψ⟩₋P₃)`, keeping the nonzero column of each block.
pub fn to_bispinor(psi: &Multivector, rep: Representation) -> Bispinor {
    let (top, bottom, scale) = match rep {
        Representation::Weyl => (*psi, psi.conj().reverse(), std::f64::consts::FRAC_1_SQRT_2),
        Representation::DiracPauli => (psi.even(), psi.odd(), 1.0),
    };
    let upper = top.to_rep().first_column();
    let lower = bottom.to_rep().first_column();
    Bispinor {
        components: [upper[0], upper[1], lower[0], lower[1]].map(|z| z * scale),
        rep,
    }
}

impl Bispinor {
    pub fn to_rep(&self, rep: Representation) -> Bispinor {
        if rep == self.rep {
            return *self;
        }
        Bispinor {
            components: mat_vec(&weyl_to_dirac_pauli(), &self.components),
            rep,
        }
    }

    /// Upper and lower two-component blocks.
    pub fn blocks(&self) -> ([Complex64; 2], [Complex64; 2]) {
        let c = &self.components;
        ([c[0], c[1]], [c[2], c[3]])
    }

    /// `½(1 ± γ₅) ψ`.
    pub fn chiral_projection(&self, positive: bool) -> Bispinor {
        let g5 = gamma5(self.rep);
        let sign = if positive { 0.5 } else { -0.5 };
        let g5psi = mat_vec(&g5, &self.components);
        Bispinor {
            components: std::array::from_fn(|k| self.components[k] * 0.5 + g5psi[k] * sign),
            rep: self.rep,
        }
    }

    /// Hermitian product `other† self`.
    pub fn inner(&self, other: &Bispinor) -> Complex64 {
        let o = other.to_rep(self.rep);
        (0..4)
            .map(|k| o.components[k].conj() * self.components[k])
            .sum()
    }

    /// `(γ^μ p_μ - m) ψ`.
    pub fn momentum_equation_residual(&self, p: &Paravector, m: f64) -> [Complex64; 4] {
        let c = p.components();
        let mut out = self.components.map(|z| -z * m);
        for mu in 0..4 {
            let lowered = if mu == 0 { c[0] } else { -c[mu] };
            let g = mat_vec(&gamma(mu, self.rep), &self.components);
            for k in 0..4 {
                out[k] += g[k] * lowered;
            }
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.components
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// One de Broglie wave `√ρ B(p) R₀ exp(-i e₃ ⟨x P̄⟩_S/ħ)` of a superposition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlaneWave {
    pub rho: f64,
    /// Kinetic momentum, on shell.
    pub momentum: Paravector,
    /// Unitary rest-frame rotor `R₀`.
    pub rest_rotor: Multivector,
    boost: Multivector,
}

impl PlaneWave {
    pub fn new(momentum: Paravector, mass: f64, rho: f64, rest_rotor: Multivector) -> Result<Self> {
        let boost = boost_from_momentum(&momentum, mass)?.mv();
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::InvalidArgument {
                module: "dirac",
                parameter: "rho",
                reason: format!("density must be non-negative and finite, got {rho}"),
            });
        }
        let unitarity = (rest_rotor * rest_rotor.reverse() - Multivector::ONE).norm();
        if !rest_rotor.even().approx_eq_tol(&rest_rotor, 0.0, ROTOR_TOL) || unitarity > ROTOR_TOL {
            return Err(Error::InvalidArgument {
                module: "dirac",
                parameter: "rest_rotor",
                reason: format!("must be an even unitary element, |R R† - 1| = {unitarity:e}"),
            });
        }
        Ok(Self {
            rho,
            momentum,
            rest_rotor,
            boost,
        })
    }

    /// Wave at rest-frame orientation `R₀ = 1`.
    pub fn simple(momentum: Paravector, mass: f64, rho: f64) -> Result<Self> {
        Self::new(momentum, mass, rho, Multivector::ONE)
    }

    /// `√ρ B(p) R₀`, the amplitude at the phase origin.
    pub fn envelope(&self) -> Multivector {
        self.boost * self.rest_rotor * self.rho.sqrt()
    }
}

/// Finite superposition of de Broglie waves of one particle species in a
/// constant potential `A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneWaves {
    pub particle: Particle,
    pub potential: Paravector,
    pub waves: Vec<PlaneWave>,
}

impl PlaneWaves {
    pub fn new(particle: Particle, potential: Paravector, waves: Vec<PlaneWave>) -> Result<Self> {
        if waves.len() > MAX_WAVES {
            return Err(Error::InvalidArgument {
                module: "dirac",
                parameter: "waves",
                reason: format!(
                    "{} plane waves given; at most {MAX_WAVES} are supported",
                    waves.len()
                ),
            });
        }
        Ok(Self {
            particle,
            potential,
            waves,
        })
    }

    /// Free single wave with `R₀ = 1`.
    pub fn single(particle: Particle, momentum: Paravector, rho: f64) -> Result<Self> {
        let wave = PlaneWave::simple(momentum, particle.mass, rho)?;
        Self::new(particle, Paravector::default(), vec![wave])
    }

    /// Canonical momentum `P = p + eA` of a wave.
    pub fn canonical(&self, wave: &PlaneWave) -> Paravector {
        wave.momentum + self.potential.scale(self.particle.charge)
    }

    fn term(&self, wave: &PlaneWave, x: &Paravector) -> Multivector {
        let phase = crate::spacetime::minkowski_dot(x, &self.canonical(wave)) / self.particle.hbar;
        let rotation = (Multivector::I * Multivector::E3 * -phase).exp();
        wave.envelope() * rotation
    }

    /// `Ψ(x)`.
    pub fn amplitude(&self, x: &Paravector) -> Multivector {
        self.waves
            .iter()
            .fold(Multivector::ZERO, |acc, w| acc + self.term(w, x))
    }

    pub fn at(&self, x: &Paravector) -> CurrentAmplitude {
        CurrentAmplitude(self.amplitude(x))
    }

    /// `Σⱼ pⱼ^μ Ψⱼ(x)`: the kinetic momentum component acting on each wave.
    pub fn momentum_applied(&self, x: &Paravector, mu: usize) -> Multivector {
        self.waves.iter().fold(Multivector::ZERO, |acc, w| {
            acc + self.term(w, x) * w.momentum.components()[mu]
        })
    }

    /// `ħ/max|P^μ|`, the shortest reduced wavelength (or period) in the
    /// superposition; `None` when there are no waves.
    pub fn reduced_wavelength(&self) -> Option<f64> {
        let largest = self
            .waves
            .iter()
            .flat_map(|w| self.canonical(w).components())
            .fold(0.0_f64, |a, c| a.max(c.abs()));
        (largest > 0.0).then(|| self.particle.hbar / largest)
    }

    /// Default difference step `10⁻⁴` of the reduced wavelength.
    pub fn default_step(&self) -> f64 {
        1e-4 * self.reduced_wavelength().unwrap_or(1.0)
    }
}

/// `|p^μ Ψ - (iħ ∂^μ Ψ e₃ - e A^μ Ψ)|` at `x`, with `∂^μ` by finite differences.
pub fn momentum_operator_check(
    waves: &PlaneWaves,
    x: &Paravector,
    mu: usize,
    h: f64,
    stencil: Stencil,
) -> f64 {
    let field = |y: &Paravector| waves.amplitude(y);
    let d_lower = diff::partial(&field, x, mu, h, stencil);
    // Raise the index with the metric diag(1, -1, -1, -1).
    let d_upper = if mu == 0 { d_lower } else { -d_lower };
    let hbar = waves.particle.hbar;
    let e = waves.particle.charge;
    let psi = waves.amplitude(x);
    let a_mu = waves.potential.components()[mu];
    let operator = Multivector::I * d_upper * Multivector::E3 * hbar - psi * (e * a_mu);
    (waves.momentum_applied(x, mu) - operator).norm()
}

/// Divergences `⟨∂̄ G⟩_S` of the four currents at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Divergences {
    pub current: f64,
    pub spin: f64,
    pub plus: f64,
    pub minus: f64,
}

/// `⟨∂̄ J⟩_S`, `⟨∂̄ 𝔖⟩_S` and `⟨∂̄ 𝔍±⟩_S` at `x` by finite differences.
///
/// `J` is conserved for every solution. `𝔖` (and hence `𝔍±`) is conserved
/// when `Ψ Ψ̄` is real; in general `⟨∂̄ 𝔖⟩_S = -2m Im(Ψ Ψ̄)/ħ`, see
/// [`spin_source`].
pub fn conserved_currents(
    waves: &PlaneWaves,
    x: &Paravector,
    h: f64,
    stencil: Stencil,
) -> Divergences {
    let div = |f: &dyn Fn(&Paravector) -> Paravector| {
        diff::del_bar(&|y: &Paravector| f(y).mv(), x, h, stencil).scalar_part()
    };
    let current = div(&|y| waves.at(y).current());
    let spin = div(&|y| waves.at(y).spin_current());
    Divergences {
        current,
        spin,
        plus: div(&|y| waves.at(y).null_currents().0),
        minus: div(&|y| waves.at(y).null_currents().1),
    }
}

/// `-2m Im(Ψ Ψ̄)/ħ`, the analytic divergence of `𝔖` for a solution.
pub fn spin_source(waves: &PlaneWaves, x: &Paravector) -> f64 {
    -2.0 * waves.particle.mass * waves.at(x).invariant().im / waves.particle.hbar
}

/// Residuals of the projected second-order equation and of its
/// Pauli-Schrödinger approximation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PauliSchrodinger {
    /// `|**p**(m + p⁰)⁻¹**p**⟨Ψ⟩₊P₃ - (H - V - m)⟨Ψ⟩₊P₃|`.
    pub exact_residual: f64,
    /// Same with `(m + p⁰)⁻¹` replaced by `(2m)⁻¹`.
    pub approx_residual: f64,
    /// `approx_residual / |⟨Ψ⟩₊P₃|`; `≈ |**p**|⁴/(8m³)` for a single wave.
    pub relative_gap: f64,
    /// Largest `|**p**|/m`.
    pub max_speed_ratio: f64,
    /// `max_speed_ratio` exceeds [`NONRELATIVISTIC_LIMIT`].
    pub warn: bool,
}

/// Applies the second-order form to the even ideal spinor `⟨Ψ⟩₊P₃` at `x`.
///
/// On a superposition of plane waves, `H = iħ∂_t` acts on each term as its
/// canonical energy `P⁰`, and `V = eA⁰`, so `H - V` is the kinetic `p⁰`.
pub fn pauli_schrodinger_limit(waves: &PlaneWaves, x: &Paravector) -> PauliSchrodinger {
    let m = waves.particle.mass;
    let v = waves.particle.charge * waves.potential.time();
    let mut exact = Multivector::ZERO;
    let mut approx = Multivector::ZERO;
    let mut total = Multivector::ZERO;
    let mut max_ratio = 0.0_f64;
    for w in &waves.waves {
        let phi = waves.term(w, x).even() * p3();
        let [_, p1, p2, p3_] = w.momentum.components();
        let p = Multivector::vector([p1, p2, p3_]);
        let h = waves.canonical(w).time();
        let kinetic = h - v;
        let p_p_phi = p * p * phi;
        let rhs = phi * (kinetic - m);
        exact += p_p_phi / (m + kinetic) - rhs;
        approx += p_p_phi / (2.0 * m) - rhs;
        total += phi;
        max_ratio = max_ratio.max((p1 * p1 + p2 * p2 + p3_ * p3_).sqrt() / m);
    }
    let norm = total.norm();
    let approx_residual = approx.norm();
    PauliSchrodinger {
        exact_residual: exact.norm(),
        approx_residual,
        relative_gap: if norm > 0.0 {
            approx_residual / norm
        } else {
            0.0
        },
        max_speed_ratio: max_ratio,
        warn: max_ratio > NONRELATIVISTIC_LIMIT,
    }
}

/// `exp(-i ω₀ ⟨x ū⟩_S / c)` with `u = γ(1 + β)`: the P₃-projected phase of a
/// rest-frame oscillation seen from a frame where the particle moves with
/// velocity `β c`. `x = (ct, **x**)`.
pub fn debroglie_wave(particle: &Particle, beta: [f64; 3], x: &Paravector) -> Result<Complex64> {
    let u = proper_velocity(beta)?;
    let tau = crate::spacetime::minkowski_dot(x, &u) / particle.c;
    Ok(Complex64::from_polar(1.0, -particle.omega0() * tau))
}

fn proper_velocity(beta: [f64; 3]) -> Result<Paravector> {
    crate::spacetime::momentum_from_velocity(1.0, beta)
}

/// `2πħ/(γ m |v|)`.
pub fn debroglie_wavelength_exact(particle: &Particle, beta: [f64; 3]) -> Result<f64> {
    let u = proper_velocity(beta)?;
    let s = u.space();
    let gamma_beta = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    nonzero_speed(gamma_beta)?;
    Ok(2.0 * std::f64::consts::PI * particle.hbar / (particle.mass * gamma_beta * particle.c))
}

fn nonzero_speed(gamma_beta: f64) -> Result<()> {
    if gamma_beta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument {
            module: "dirac",
            parameter: "v",
            reason: "a wavelength needs a nonzero velocity".into(),
        })
    }
}

/// Measures the wavelength from the zeros of `Re` of [`debroglie_wave`] along
/// the direction of motion at `t = 0`.
///
/// The line is sampled at 1/40 of the spatial scale `c/(γ|β|ω₀)` over
/// `periods` wavelengths, every sign change is refined by bisection, and the
/// wavelength is twice the least-squares spacing of the zeros.
pub fn debroglie_wavelength_measured(
    particle: &Particle,
    beta: [f64; 3],
    periods: usize,
) -> Result<f64> {
    let u = proper_velocity(beta)?;
    let s = u.space();
    let gamma_beta = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    nonzero_speed(gamma_beta)?;
    let dir = s.map(|c| c / gamma_beta);
    let scale = particle.c / (gamma_beta * particle.omega0());
    let f = |r: f64| -> f64 {
        let x = Paravector::new(0.0, dir.map(|d| d * r));
        debroglie_wave(particle, beta, &x)
            .map(|z| z.re)
            .unwrap_or(f64::NAN)
    };
    let step = scale / 40.0;
    let samples = (periods.max(2) as f64 * 2.0 * std::f64::consts::PI * 40.0).ceil() as usize;
    let mut zeros = Vec::new();
    let mut prev = f(0.0);
    for k in 1..=samples {
        let r = k as f64 * step;
        let cur = f(r);
        if prev == 0.0 || prev.signum() != cur.signum() {
            let (mut a, mut b) = (r - step, r);
            let fa = f(a);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if f(mid).signum() == fa.signum() {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            zeros.push(0.5 * (a + b));
        }
        prev = cur;
    }
    if zeros.len() < 2 {
        return Err(Error::InvalidArgument {
            module: "dirac",
            parameter: "periods",
            reason: "fewer than two phase zeros found".into(),
        });
    }
    // Least-squares slope of zero position against index.
    let n = zeros.len() as f64;
    let mean_k = (n - 1.0) / 2.0;
    let mean_z = zeros.iter().sum::<f64>() / n;
    let (num, den) = zeros
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(num, den), (k, z)| {
            let dk = k as f64 - mean_k;
            (num + dk * (z - mean_z), den + dk * dk)
        });
    Ok(2.0 * num / den)
}
