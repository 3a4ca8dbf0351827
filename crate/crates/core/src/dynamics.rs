//! Eigenspinor evolution under the spinor Lorentz-force equation
//! `Λ̇ = (e/2m) F Λ`, optionally with the rotational gauge term `-iω₀ Λ e3`.

use serde::Serialize;

use crate::diff::{self, Stencil};
use crate::error::{Error, Result};
use crate::ga::Multivector;
use crate::spacetime::{
    self, exp_biparavector, polar_decompose, unimodular_deviation, Biparavector, LorentzRotor,
    Paravector,
};

/// Largest unimodularity drift accepted from a single step before projection.
pub const MAX_STEP_DRIFT: f64 = 1e-6;

/// Charge, mass and the unit system in which `ω₀ = m c²/ħ` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Particle {
    pub charge: f64,
    pub mass: f64,
    pub hbar: f64,
    pub c: f64,
}

impl Particle {
    /// Particle in natural units (`ħ = c = 1`).
    pub fn new(charge: f64, mass: f64) -> Result<Self> {
        Self::with_units(charge, mass, 1.0, 1.0)
    }

    pub fn with_units(charge: f64, mass: f64, hbar: f64, c: f64) -> Result<Self> {
        let positive = |parameter: &'static str, value: f64| {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument {
                    module: "dynamics",
                    parameter,
                    reason: format!("must be positive and finite, got {value}"),
                })
            }
        };
        positive("mass", mass)?;
        positive("hbar", hbar)?;
        positive("c", c)?;
        if !charge.is_finite() {
            return Err(Error::InvalidArgument {
                module: "dynamics",
                parameter: "charge",
                reason: format!("must be finite, got {charge}"),
            });
        }
        Ok(Self {
            charge,
            mass,
            hbar,
            c,
        })
    }

    /// Intrinsic rotation rate `ω₀ = m c²/ħ`.
    pub fn omega0(&self) -> f64 {
        self.mass * self.c * self.c / self.hbar
    }

    /// `e/2m`, the factor multiplying `F` in the equation of motion.
    pub fn coupling(&self) -> f64 {
        0.5 * self.charge / self.mass
    }
}

/// Field `F = E + iB` as a function of spacetime position.
pub trait EmField {
    fn at(&self, x: &Paravector) -> Biparavector;
}

impl EmField for Biparavector {
    fn at(&self, _x: &Paravector) -> Biparavector {
        *self
    }
}

/// Adapter for a closure `x ↦ F(x)`.
pub struct FieldFn<F>(pub F);

impl<F: Fn(&Paravector) -> Biparavector> EmField for FieldFn<F> {
    fn at(&self, x: &Paravector) -> Biparavector {
        (self.0)(x)
    }
}

/// Eigenspinor `Λ` at proper time `τ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Eigenspinor {
    pub lambda: LorentzRotor,
    pub tau: f64,
}

impl Eigenspinor {
    pub fn new(lambda: LorentzRotor) -> Self {
        Self { lambda, tau: 0.0 }
    }

    pub fn proper_velocity(&self) -> Paravector {
        self.tetrad()[0]
    }

    pub fn tetrad(&self) -> [Paravector; 4] {
        tetrad(&self.lambda)
    }

    /// Rest-frame spin direction `R e3 R†`, where `Λ = B R`.
    pub fn spin(&self) -> [f64; 3] {
        let (_, r) = polar_decompose(&self.lambda);
        r.transform(&Paravector::basis(3)).space()
    }

    /// Field seen in the instantaneous rest frame, `Λ̄ F Λ`.
    pub fn rest_frame_field(&self, f: &Biparavector) -> Biparavector {
        let l = self.lambda.mv();
        Biparavector::vector_like_part_of(&(l.conj() * f.mv() * l))
    }
}

/// `u_μ = Λ e_μ Λ†`.
pub fn tetrad(lambda: &LorentzRotor) -> [Paravector; 4] {
    std::array::from_fn(|mu| lambda.transform(&Paravector::basis(mu)))
}

/// `Λ(τ) = exp(e F τ/2m) Λ(0)` for a constant field.
pub fn evolve_analytic(
    initial: &Eigenspinor,
    f: &Biparavector,
    particle: &Particle,
    tau: f64,
) -> Eigenspinor {
    let step = exp_biparavector(&f.scale(particle.coupling() * tau));
    Eigenspinor {
        lambda: step.compose(&initial.lambda),
        tau: initial.tau + tau,
    }
}

/// One sample of a numeric trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub state: Eigenspinor,
    /// Spacetime position, advanced with `ẋ = u₀`.
    pub x: Paravector,
    /// `|Λ Λ̄ - 1|` after projection.
    pub drift: f64,
}

impl TrajectoryPoint {
    pub const CSV_HEADER: [&'static str; 13] = [
        "tau", "x0", "x1", "x2", "x3", "u0_0", "u0_1", "u0_2", "u0_3", "s1", "s2", "s3", "drift",
    ];

    pub fn csv_row(&self) -> [f64; 13] {
        let x = self.x.components();
        let u = self.state.proper_velocity().components();
        let s = self.state.spin();
        [
            self.state.tau,
            x[0],
            x[1],
            x[2],
            x[3],
            u[0],
            u[1],
            u[2],
            u[3],
            s[0],
            s[1],
            s[2],
            self.drift,
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    /// Largest drift seen before any projection.
    pub max_drift_before_projection: f64,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectoryPoint {
        self.points
            .last()
            .expect("trajectories hold at least the initial point")
    }
}

/// Settings for [`evolve_numeric`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Integration {
    /// Total proper time.
    pub tau_span: f64,
    /// Requested step; the span is split into equal steps no longer than this.
    pub dtau: f64,
    /// Include the rotational gauge term `-iω₀ Λ e3`.
    pub gauge: bool,
}

/// Fixed-step RK4 on `(Λ, x)` with projection back onto `Λ Λ̄ = 1` after
/// every step (see [`LorentzRotor::project_nearest`]).
pub fn evolve_numeric<F: EmField + ?Sized>(
    initial: &Eigenspinor,
    x0: &Paravector,
    field: &F,
    particle: &Particle,
    integration: &Integration,
) -> Result<Trajectory> {
    let Integration {
        tau_span,
        dtau,
        gauge,
    } = *integration;
    if !(dtau > 0.0 && dtau.is_finite()) {
        return Err(Error::InvalidArgument {
            module: "dynamics",
            parameter: "dtau",
            reason: format!("step must be positive and finite, got {dtau}"),
        });
    }
    if !(tau_span >= 0.0 && tau_span.is_finite()) {
        return Err(Error::InvalidArgument {
            module: "dynamics",
            parameter: "tau_span",
            reason: format!("span must be non-negative and finite, got {tau_span}"),
        });
    }
    let steps = ((tau_span / dtau) - 1e-9).ceil().max(0.0) as usize;
    let h = if steps == 0 {
        0.0
    } else {
        tau_span / steps as f64
    };

    let k = particle.coupling();
    let gauge_term = Multivector::I * Multivector::E3 * particle.omega0();
    let rhs = |l: &Multivector, x: &Paravector| -> (Multivector, Multivector) {
        let mut dl = field.at(x).mv() * *l * k;
        if gauge {
            dl -= *l * gauge_term;
        }
        (dl, *l * l.reverse())
    };

    let mut lambda = initial.lambda.mv();
    let mut x = x0.mv();
    let mut points = Vec::with_capacity(steps + 1);
    points.push(TrajectoryPoint {
        state: *initial,
        x: *x0,
        drift: initial.lambda.deviation(),
    });
    let mut max_drift = 0.0f64;
    let mut carry = Multivector::ZERO;
    let at = |x: Multivector| Paravector::real_part_of(&x);

    for n in 1..=steps {
        let (k1, v1) = rhs(&lambda, &at(x));
        let (k2, v2) = rhs(&(lambda + k1 * (0.5 * h)), &at(x + v1 * (0.5 * h)));
        let (k3, v3) = rhs(&(lambda + k2 * (0.5 * h)), &at(x + v2 * (0.5 * h)));
        let (k4, v4) = rhs(&(lambda + k3 * h), &at(x + v3 * h));
        // Compensated update: the increments are small against Λ, so plain
        // summation loses low-order bits every step.
        let inc = (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0) - carry;
        let next = lambda + inc;
        carry = (next - lambda) - inc;
        lambda = next;
        x += (v1 + v2 * 2.0 + v3 * 2.0 + v4) * (h / 6.0);

        let drift = unimodular_deviation(&lambda);
        if !(drift <= MAX_STEP_DRIFT) {
            return Err(Error::StepTooLarge {
                drift,
                limit: MAX_STEP_DRIFT,
            });
        }
        max_drift = max_drift.max(drift);
        let projected = LorentzRotor::project_nearest(&lambda)?;
        lambda = projected.mv();
        points.push(TrajectoryPoint {
            state: Eigenspinor {
                lambda: projected,
                tau: initial.tau + n as f64 * h,
            },
            x: at(x),
            drift: projected.deviation(),
        });
    }
    Ok(Trajectory {
        points,
        max_drift_before_projection: max_drift,
    })
}

/// Least-squares slope of `y` against `t`.
fn slope(t: &[f64], y: &[f64]) -> f64 {
    let n = t.len() as f64;
    let (mt, my) = (t.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = t.iter().zip(y).map(|(a, b)| (a - mt) * (b - my)).sum();
    let sxx: f64 = t.iter().map(|a| (a - mt) * (a - mt)).sum();
    sxy / sxx
}

/// Unwrapped azimuth of a sequence of vectors about `e3`.
fn unwrapped_azimuth(v: impl Iterator<Item = [f64; 3]>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for p in v {
        let mut a = p[1].atan2(p[0]);
        if let Some(prev) = out.last() {
            while a - prev > std::f64::consts::PI {
                a -= std::f64::consts::TAU;
            }
            while a - prev < -std::f64::consts::PI {
                a += std::f64::consts::TAU;
            }
        }
        out.push(a);
    }
    out
}

/// Cyclotron and spin-precession rates measured from one trajectory.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PrecessionRates {
    /// Rotation rate of the proper velocity `u₀` about the field.
    pub cyclotron: f64,
    /// Rotation rate of the spin leg `u₃` about the field.
    pub larmor: f64,
    pub ratio: f64,
}

/// Speed used for the slowly moving probe particle.
const PROBE_SPEED: f64 = 1e-3;

/// Runs a particle with velocity along `e2` and spin along `e1` through the
/// field `iB e3` for two cyclotron periods, with the gauge term on, and fits
/// the azimuth of `u₀` and `u₃` against proper time.
pub fn precession_rates(particle: &Particle, b: f64) -> Result<PrecessionRates> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidArgument {
            module: "dynamics",
            parameter: "B",
            reason: format!("field magnitude must be positive, got {b}"),
        });
    }
    let omega_c = (particle.charge * b / particle.mass).abs();
    if omega_c == 0.0 {
        return Err(Error::InvalidArgument {
            module: "dynamics",
            parameter: "charge",
            reason: "a neutral particle does not precess".into(),
        });
    }
    let field = Biparavector::new([0.0; 3], [0.0, 0.0, b]);
    let boost = spacetime::boost([0.0, 1.0, 0.0], PROBE_SPEED.atanh());
    let spin_to_e1 = spacetime::rotor([0.0, 1.0, 0.0], std::f64::consts::FRAC_PI_2);
    let initial = Eigenspinor::new(boost.compose(&spin_to_e1));

    let period = std::f64::consts::TAU / omega_c;
    // The gauge rotation sets the step when it is faster than the cyclotron motion.
    let fastest = omega_c.max(particle.omega0());
    let integration = Integration {
        tau_span: 2.0 * period,
        dtau: (std::f64::consts::TAU / fastest) / 1000.0,
        gauge: true,
    };
    let traj = evolve_numeric(
        &initial,
        &Paravector::default(),
        &field,
        particle,
        &integration,
    )?;

    let tau: Vec<f64> = traj.points.iter().map(|p| p.state.tau).collect();
    let u0 = unwrapped_azimuth(traj.points.iter().map(|p| p.state.tetrad()[0].space()));
    let u3 = unwrapped_azimuth(traj.points.iter().map(|p| p.state.tetrad()[3].space()));
    let cyclotron = slope(&tau, &u0);
    let larmor = slope(&tau, &u3);
    Ok(PrecessionRates {
        cyclotron,
        larmor,
        ratio: larmor / cyclotron,
    })
}

/// Ratio of spin-precession to cyclotron rate; `g/2` for the particle.
pub fn cyclotron_larmor_ratio(particle: &Particle, b: f64) -> Result<f64> {
    precession_rates(particle, b).map(|r| r.ratio)
}

/// Shift of the total rotation rate from `2ω₀` in a magnetic field.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RotationShift {
    pub omega0: f64,
    /// `|2ω₀ ŝ - (e/m) B|`.
    pub rate_exact: f64,
    /// `2ω₀ - (e/m) ŝ·B`.
    pub rate_first_order: f64,
    pub shift_exact: f64,
    pub shift_first_order: f64,
    /// Magnetic moment `eħ/2m ŝ`.
    pub moment: [f64; 3],
    /// `-μ·B`.
    pub energy: f64,
    /// `m²c²/(eħ) = ω₀ m/e`, the field at which `eB/m` reaches `ω₀`.
    pub critical_field: f64,
    /// `2ω₀ m/e`, the field at which `eB/m` reaches the full rate `2ω₀`.
    pub crossover_field: f64,
    /// False when `|B|` exceeds 1% of the crossover field and the first-order
    /// expansion is no longer reliable.
    pub weak_field: bool,
}

pub fn magnetic_rotation_shift(
    particle: &Particle,
    b: [f64; 3],
    s_hat: [f64; 3],
) -> Result<RotationShift> {
    let norm = s_hat.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnit { norm });
    }
    let omega0 = particle.omega0();
    let q_over_m = particle.charge / particle.mass;
    let diff: [f64; 3] = std::array::from_fn(|k| 2.0 * omega0 * s_hat[k] - q_over_m * b[k]);
    let rate_exact = diff.iter().map(|c| c * c).sum::<f64>().sqrt();
    let s_dot_b: f64 = s_hat.iter().zip(&b).map(|(s, b)| s * b).sum();
    let shift_first_order = -q_over_m * s_dot_b;
    let mu = particle.charge * particle.hbar / (2.0 * particle.mass);
    let moment = s_hat.map(|s| mu * s);
    let b_mag = b.iter().map(|c| c * c).sum::<f64>().sqrt();
    let critical_field = (omega0 * particle.mass / particle.charge).abs();
    let crossover_field = 2.0 * critical_field;
    Ok(RotationShift {
        omega0,
        rate_exact,
        rate_first_order: 2.0 * omega0 + shift_first_order,
        // Evaluated as (|d|² - 4ω₀²)/(|d| + 2ω₀) to avoid cancellation.
        shift_exact: (q_over_m * q_over_m * b_mag * b_mag - 4.0 * omega0 * q_over_m * s_dot_b)
            / (rate_exact + 2.0 * omega0),
        shift_first_order,
        moment,
        energy: -mu * s_dot_b,
        critical_field,
        crossover_field,
        weak_field: b_mag <= 0.01 * crossover_field,
    })
}

/// Result of checking Maxwell's equation `∂̄F = μ j̄` from a potential.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MaxwellCheck {
    /// `∂̄F - μ j̄` with `F = ⟨∂Ā⟩_V`.
    pub residual: Multivector,
    /// `F = ⟨∂Ā⟩_V` at the point.
    pub field: Biparavector,
    /// `⟨∂Ā⟩_S`, zero in the Lorenz gauge.
    pub gauge_condition: Multivector,
}

/// Field from a potential, `F = ⟨∂Ā⟩_V`.
pub fn field_from_potential<A>(potential: &A, x: &Paravector, h: f64) -> Biparavector
where
    A: Fn(&Paravector) -> Paravector,
{
    let a_bar = |y: &Paravector| potential(y).bar().mv();
    Biparavector::vector_like_part_of(&diff::del(&a_bar, x, h, Stencil::Central))
}

/// Evaluates `∂̄F - μ j̄` at `x` by nested central differences of step `h`.
pub fn maxwell_residual<A, J>(
    potential: &A,
    source: &J,
    mu: f64,
    x: &Paravector,
    h: f64,
) -> MaxwellCheck
where
    A: Fn(&Paravector) -> Paravector,
    J: Fn(&Paravector) -> Paravector,
{
    let f = |y: &Paravector| field_from_potential(potential, y, h).mv();
    let dbar_f = diff::del_bar(&f, x, h, Stencil::Central);
    let a_bar = |y: &Paravector| potential(y).bar().mv();
    let gauge_condition =
        diff::del(&a_bar, x, h, Stencil::Central).part(crate::ga::Part::ScalarLike);
    MaxwellCheck {
        residual: dbar_f - source(x).bar().mv() * mu,
        field: Biparavector::vector_like_part_of(&f(x)),
        gauge_condition,
    }
}
