//! Stern-Gerlach beam splitting: an ideal spinor `ψ = R(φ, θ, χ)P₃` is split
//! into `2⟨P₃ψ⟩₊` and `2⟨P̄₃ψ⟩₊`, each boosted by `B± = 1 + ½V±` with
//! `V± = v e₁ ± Δv e₃`, and the branches drift apart along `e₃`.
//!
//! Profiles are one-dimensional along the splitting axis, in the frame moving
//! with the beam: `ρ±(z, t) = ρ(z ∓ Δv t)` with the normalized Gaussian
//! `ρ(z) = exp(-z²/σ²)/(σ√π)`, so `σ` is the width of the amplitude `ρ^{1/2}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{p3, p3_bar, Multivector};
use crate::spacetime::Paravector;
use crate::spin::euler_rotor;

/// Speeds above this fraction of `c` are flagged as outside the
/// nonrelativistic model.
pub const NONRELATIVISTIC_SPEED: f64 = 0.1;

/// Branch separations below this many `σ` are flagged as overlapping.
pub const MIN_SEPARATION_SIGMAS: f64 = 6.0;

/// Grid points used by [`measure_outcomes`] and the default grid.
pub const DEFAULT_POINTS: usize = 10_001;

/// Sampling grid along the splitting axis and in time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub x_points: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
}

impl Grid {
    pub fn xs(&self) -> Vec<f64> {
        linspace(self.x_min, self.x_max, self.x_points)
    }

    pub fn ts(&self) -> Vec<f64> {
        linspace(self.t_min, self.t_max, self.t_points)
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SGConfig {
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
    /// Beam speed along `e₁`, in units of `c`.
    pub v: f64,
    /// Velocity kick along `±e₃` from the field gradient, in units of `c`.
    pub dv: f64,
    pub sigma: f64,
    pub grid: Grid,
}

/// Non-fatal conditions attached to a configuration or a measurement.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Warning {
    /// A speed is large enough that discarded `O(V²)` terms matter.
    Relativistic { parameter: &'static str, value: f64 },
    /// Branches are closer than [`MIN_SEPARATION_SIGMAS`]; `overlap` is the
    /// remaining interference integral relative to `t = 0`.
    Overlapping {
        separation_sigmas: f64,
        overlap: f64,
    },
}

fn out_of_range(parameter: &'static str, value: f64, reason: &'static str) -> Error {
    Error::ConfigOutOfRange {
        parameter,
        value,
        reason,
    }
}

impl SGConfig {
    /// Configuration with a grid wide enough for both branches up to `t_max`.
    pub fn new(theta: f64, v: f64, dv: f64, sigma: f64, t_max: f64) -> Result<Self> {
        let half = dv.abs() * t_max.abs() + 10.0 * sigma.abs();
        let cfg = Self {
            theta,
            phi: 0.0,
            chi: 0.0,
            v,
            dv,
            sigma,
            grid: Grid {
                x_min: -half,
                x_max: half,
                x_points: DEFAULT_POINTS,
                t_min: 0.0,
                t_max,
                t_points: 2,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every field and returns the warnings that do not stop a run.
    pub fn validate(&self) -> Result<Vec<Warning>> {
        for (name, value) in [("theta", self.theta), ("phi", self.phi), ("chi", self.chi)] {
            if !value.is_finite() {
                return Err(out_of_range(name, value, "must be finite"));
            }
        }
        let speed = |name: &'static str, value: f64| {
            if value > 0.0 && value < 1.0 {
                Ok(())
            } else {
                Err(out_of_range(
                    name,
                    value,
                    "must lie in (0, 1) in units of c",
                ))
            }
        };
        speed("v", self.v)?;
        speed("dv", self.dv)?;
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(out_of_range(
                "sigma",
                self.sigma,
                "must be positive and finite",
            ));
        }
        let g = &self.grid;
        if !(g.x_min.is_finite() && g.x_max.is_finite() && g.x_min < g.x_max) {
            return Err(out_of_range(
                "x_max",
                g.x_max,
                "x range must be finite with x_min < x_max",
            ));
        }
        if !(g.t_min.is_finite() && g.t_max.is_finite() && g.t_min <= g.t_max) {
            return Err(out_of_range(
                "t_max",
                g.t_max,
                "t range must be finite with t_min <= t_max",
            ));
        }
        if g.x_points < 3 {
            return Err(out_of_range(
                "x_points",
                g.x_points as f64,
                "need at least 3 points",
            ));
        }
        if g.t_points == 0 {
            return Err(out_of_range("t_points", 0.0, "need at least 1 time"));
        }
        let mut warnings = Vec::new();
        for (parameter, value) in [("v", self.v), ("dv", self.dv)] {
            if value > NONRELATIVISTIC_SPEED {
                warnings.push(Warning::Relativistic { parameter, value });
            }
        }
        Ok(warnings)
    }

    /// `V± = v e₁ ± Δv e₃`.
    pub fn velocities(&self) -> ([f64; 3], [f64; 3]) {
        ([self.v, 0.0, self.dv], [self.v, 0.0, -self.dv])
    }

    /// Unit-normalized Gaussian `ρ(z)`.
    pub fn density(&self, z: f64) -> f64 {
        let s = self.sigma;
        (-(z / s).powi(2)).exp() / (s * std::f64::consts::PI.sqrt())
    }

    /// `(ρ₊, ρ₋)` at `(z, t)`.
    pub fn branch_densities(&self, z: f64, t: f64) -> (f64, f64) {
        let shift = self.dv * t;
        (self.density(z - shift), self.density(z + shift))
    }

    /// Distance between branch centers in units of `σ`.
    pub fn separation_sigmas(&self, t: f64) -> f64 {
        2.0 * self.dv * t.abs() / self.sigma
    }

    /// `∫(ρ₊ρ₋)^{1/2} dz` relative to `t = 0`, in closed form:
    /// `exp(-(Δv t/σ)²)`.
    pub fn overlap(&self, t: f64) -> f64 {
        (-(self.dv * t / self.sigma).powi(2)).exp()
    }
}

/// The two boosted branches of the state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SplitState {
    /// `2⟨P₃ψ⟩₊` for unit density.
    pub up: Multivector,
    /// `2⟨P̄₃ψ⟩₊` for unit density.
    pub down: Multivector,
    pub weight_up: f64,
    pub weight_down: f64,
    pub boost_up: Multivector,
    pub boost_down: Multivector,
}

fn linear_boost(v: [f64; 3], scale: f64) -> Multivector {
    Multivector::ONE + Multivector::vector(v) * (0.5 * scale)
}

impl SplitState {
    fn with_scale(&self, cfg: &SGConfig, scale: f64) -> Self {
        let (vp, vm) = cfg.velocities();
        Self {
            boost_up: linear_boost(vp, scale),
            boost_down: linear_boost(vm, scale),
            ..*self
        }
    }

    /// `Ψ = ρ₊^{1/2} B₊ 2⟨P₃ψ⟩₊ + ρ₋^{1/2} B₋ 2⟨P̄₃ψ⟩₊`.
    pub fn amplitude(&self, rho_up: f64, rho_down: f64) -> Multivector {
        self.boost_up * self.up * rho_up.sqrt() + self.boost_down * self.down * rho_down.sqrt()
    }
}

/// Splits `ψ = R(φ, θ, χ)P₃` and attaches the linear boosts `B± = 1 + ½V±`.
pub fn split_state(cfg: &SGConfig) -> Result<SplitState> {
    cfg.validate()?;
    let psi = euler_rotor(cfg.phi, cfg.theta, cfg.chi) * p3();
    let up = (p3() * psi).even() * 2.0;
    let down = (p3_bar() * psi).even() * 2.0;
    let (vp, vm) = cfg.velocities();
    Ok(SplitState {
        up,
        down,
        weight_up: (up * up.reverse()).scalar_part(),
        weight_down: (down * down.reverse()).scalar_part(),
        boost_up: linear_boost(vp, 1.0),
        boost_down: linear_boost(vm, 1.0),
    })
}

/// Currents at one `(z, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub z: f64,
    pub t: f64,
    /// Density `J⁰`.
    pub rho: f64,
    pub j: Paravector,
    pub s: Paravector,
    /// `ρ₊ cos²(θ/2)`.
    pub w_up: f64,
    /// `ρ₋ sin²(θ/2)`.
    pub w_down: f64,
    /// `(ρ₊ρ₋)^{1/2} |sin θ|`, the size of the cross terms.
    pub interference: f64,
}

pub const CSV_HEADER: [&str; 12] = [
    "x",
    "t",
    "rho",
    "J0",
    "J1",
    "J2",
    "J3",
    "S0",
    "S1",
    "S2",
    "S3",
    "interference",
];

impl ProfilePoint {
    pub fn csv_row(&self) -> [f64; 12] {
        let j = self.j.components();
        let s = self.s.components();
        [
            self.z,
            self.t,
            self.rho,
            j[0],
            j[1],
            j[2],
            j[3],
            s[0],
            s[1],
            s[2],
            s[3],
            self.interference,
        ]
    }
}

/// The three-term closed forms for `J` and `𝔖` with `O(V²)` terms dropped,
/// for a general azimuth `φ` (`n = cos φ e₁ + sin φ e₂`):
///
/// `J = ρ₊(1 + V₊)cos²(θ/2) + ρ₋(1 + V₋)sin²(θ/2) + (ρ₊ρ₋)^{1/2} Δv n sin θ`
///
/// `𝔖 = ρ₊(e₃ + Δv)cos²(θ/2) - ρ₋(e₃ - Δv)sin²(θ/2) + (ρ₊ρ₋)^{1/2}(n + v·n) sin θ`
pub fn closed_form(cfg: &SGConfig, z: f64, t: f64) -> ProfilePoint {
    let (rp, rm) = cfg.branch_densities(z, t);
    let (c2, s2) = (
        (0.5 * cfg.theta).cos().powi(2),
        (0.5 * cfg.theta).sin().powi(2),
    );
    let cross = (rp * rm).sqrt() * cfg.theta.sin();
    let n = [cfg.phi.cos(), cfg.phi.sin(), 0.0];
    let (vp, vm) = cfg.velocities();
    let (wu, wd) = (rp * c2, rm * s2);
    let j = Paravector::new(
        wu + wd,
        std::array::from_fn(|k| wu * vp[k] + wd * vm[k] + cross * cfg.dv * n[k]),
    );
    let e3 = [0.0, 0.0, 1.0];
    let s = Paravector::new(
        wu * cfg.dv + wd * cfg.dv + cross * cfg.v * n[0],
        std::array::from_fn(|k| wu * e3[k] - wd * e3[k] + cross * n[k]),
    );
    ProfilePoint {
        z,
        t,
        rho: j.time(),
        j,
        s,
        w_up: wu,
        w_down: wd,
        interference: cross.abs(),
    }
}

/// `(J, 𝔖)` from `Ψ e₀ Ψ†` and `Ψ e₃ Ψ†` of the split amplitude, keeping all
/// orders in `V±`.
pub fn direct_currents(
    split: &SplitState,
    cfg: &SGConfig,
    z: f64,
    t: f64,
) -> (Paravector, Paravector) {
    let (rp, rm) = cfg.branch_densities(z, t);
    let psi = split.amplitude(rp, rm);
    let j = Paravector::real_part_of(&(psi * psi.reverse()));
    let s = Paravector::real_part_of(&(psi * Multivector::E3 * psi.reverse()));
    (j, s)
}

/// [`direct_currents`] truncated to first order in `V±`.
///
/// With `B±(ε) = 1 + ½εV±` both currents are quadratic in `ε`, so the
/// linear truncation `G(0) + G'(0)` equals `G(0) + (G(1) - G(-1))/2` exactly.
pub fn direct_currents_linearized(
    split: &SplitState,
    cfg: &SGConfig,
    z: f64,
    t: f64,
) -> (Paravector, Paravector) {
    let at = |scale: f64| direct_currents(&split.with_scale(cfg, scale), cfg, z, t);
    let (j0, s0) = at(0.0);
    let (jp, sp) = at(1.0);
    let (jm, sm) = at(-1.0);
    let lin = |a: Paravector, p: Paravector, m: Paravector| a + (p - m).scale(0.5);
    (lin(j0, jp, jm), lin(s0, sp, sm))
}

/// Profiles on the configured grid, ordered by time and then position.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BeamProfile {
    pub points: Vec<ProfilePoint>,
}

/// Closed-form profile at a single time on the configured `x` grid.
pub fn profiles(cfg: &SGConfig, t: f64) -> Result<BeamProfile> {
    cfg.validate()?;
    Ok(BeamProfile {
        points: cfg
            .grid
            .xs()
            .into_iter()
            .map(|z| closed_form(cfg, z, t))
            .collect(),
    })
}

/// Closed-form profiles at every grid time.
pub fn profile_sweep(cfg: &SGConfig) -> Result<BeamProfile> {
    cfg.validate()?;
    let xs = cfg.grid.xs();
    let points = cfg
        .grid
        .ts()
        .into_iter()
        .flat_map(|t| xs.iter().map(move |&z| closed_form(cfg, z, t)))
        .collect();
    Ok(BeamProfile { points })
}

/// Composite Simpson rule on equally spaced samples; an odd number of
/// intervals is closed with the 3/8 rule on the last three.
pub fn simpson(values: &[f64], dx: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => return 0.0,
        2 => return 0.5 * dx * (values[0] + values[1]),
        3 => return dx / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        _ => {}
    }
    let intervals = n - 1;
    let (even_end, tail) = if intervals.is_multiple_of(2) {
        (n - 1, false)
    } else {
        (n - 4, true)
    };
    let mut sum = values[0] + values[even_end];
    for (k, v) in values.iter().enumerate().take(even_end).skip(1) {
        sum += if k % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    let mut total = dx / 3.0 * sum;
    if tail {
        let v = &values[n - 4..];
        total += 3.0 * dx / 8.0 * (v[0] + 3.0 * v[1] + 3.0 * v[2] + v[3]);
    }
    total
}

impl BeamProfile {
    /// `∫ρ dz` over the points at time `t` (assumed equally spaced).
    pub fn total_density(&self, t: f64) -> f64 {
        self.integrate(t, |p| p.rho)
    }

    /// `∫(ρ₊ρ₋)^{1/2}|sin θ| dz` at time `t`.
    pub fn interference_integral(&self, t: f64) -> f64 {
        self.integrate(t, |p| p.interference)
    }

    fn integrate(&self, t: f64, f: impl Fn(&ProfilePoint) -> f64) -> f64 {
        let slice: Vec<&ProfilePoint> = self.points.iter().filter(|p| p.t == t).collect();
        if slice.len() < 2 {
            return 0.0;
        }
        let dx = slice[1].z - slice[0].z;
        simpson(&slice.iter().map(|p| f(p)).collect::<Vec<_>>(), dx)
    }
}

/// Detector counts after the branches have separated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcomes {
    pub p_up: f64,
    pub p_down: f64,
    /// Interference integral relative to `t = 0`, by quadrature.
    pub overlap: f64,
    pub separation_sigmas: f64,
    pub warnings: Vec<Warning>,
}

/// Integrates `ρ` over the half-lines `z > 0` and `z < 0` (either side of the
/// midpoint between branch centers) with Simpson's rule on
/// [`DEFAULT_POINTS`] points covering both branches and 12σ beyond.
pub fn measure_outcomes(cfg: &SGConfig, t_final: f64) -> Result<Outcomes> {
    let mut warnings = cfg.validate()?;
    let half_width = cfg.dv * t_final.abs() + 12.0 * cfg.sigma;
    let n = DEFAULT_POINTS;
    let mid = n / 2;
    let dz = half_width / mid as f64;
    let zs: Vec<f64> = (0..n).map(|k| (k as f64 - mid as f64) * dz).collect();
    let pts: Vec<ProfilePoint> = zs.iter().map(|&z| closed_form(cfg, z, t_final)).collect();
    let rho: Vec<f64> = pts.iter().map(|p| p.rho).collect();
    let p_down = simpson(&rho[..=mid], dz);
    let p_up = simpson(&rho[mid..], dz);
    let cross: Vec<f64> = zs
        .iter()
        .map(|&z| {
            let (a, b) = cfg.branch_densities(z, t_final);
            (a * b).sqrt()
        })
        .collect();
    let overlap = simpson(&cross, dz);
    let separation_sigmas = cfg.separation_sigmas(t_final);
    if separation_sigmas < MIN_SEPARATION_SIGMAS {
        warnings.push(Warning::Overlapping {
            separation_sigmas,
            overlap,
        });
    }
    Ok(Outcomes {
        p_up,
        p_down,
        overlap,
        separation_sigmas,
        warnings,
    })
}
