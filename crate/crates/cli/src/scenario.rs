use std::f64::consts::PI;
use std::path::PathBuf;
use std::str::FromStr;

use aps_spin::diff::Stencil;
use aps_spin::dirac::{self, PlaneWave, PlaneWaves, Representation};
use aps_spin::dynamics::{
    self, evolve_analytic, evolve_numeric, Eigenspinor, Integration, Particle, TrajectoryPoint,
};
use aps_spin::fermion;
use aps_spin::ga::oracle::run_identity_suite;
use aps_spin::spacetime::{boost_from_momentum, momentum_from_velocity, Biparavector, Paravector};
use aps_spin::stern_gerlach::{self as sg, SGConfig};
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Command};
use crate::config::{parse_value, parse_vec3, ConfigFile};
use crate::output::{csv_bytes, json_bytes};
use crate::{CliError, Format, OutputSpec, PhysicalConstants, Rep, Scenario};

/// Upper bound on integration steps, to keep runs from stalling silently.
const MAX_STEPS: f64 = 1e8;

#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioKind {
    Lorentz(LorentzParams),
    SternGerlach(SternGerlachParams),
    DiracPlaneWave(DiracParams),
    CheckIdentities(IdentityParams),
    FermionGen(FermionParams),
    MagneticMoment(MomentParams),
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Lorentz(_) => "lorentz",
            Self::SternGerlach(_) => "stern-gerlach",
            Self::DiracPlaneWave(_) => "dirac-planewave",
            Self::CheckIdentities(_) => "check-identities",
            Self::FermionGen(_) => "fermion-gen",
            Self::MagneticMoment(_) => "magnetic-moment",
        }
    }

    fn supports_csv(&self) -> bool {
        matches!(
            self,
            Self::Lorentz(_) | Self::SternGerlach(_) | Self::DiracPlaneWave(_)
        )
    }
}

/// Looks a key up as flag, then `[section]`/top-level config, then default.
struct Resolver<'a> {
    section: &'static str,
    config: Option<&'a ConfigFile>,
}

impl Resolver<'_> {
    fn opt<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        // Looked up even when the flag wins, so the key counts as known.
        let from_config = self.config.and_then(|c| c.get(self.section, key));
        if flag.is_some() {
            return Ok(flag);
        }
        match from_config {
            Some((k, raw)) => parse_value(&k, raw).map(Some),
            None => Ok(None),
        }
    }

    fn value<T: FromStr>(&self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.opt(key, flag)?.unwrap_or(default))
    }

    fn vec3(
        &self,
        key: &str,
        flag: Option<[f64; 3]>,
        default: [f64; 3],
    ) -> Result<[f64; 3], CliError> {
        let from_config = self.config.and_then(|c| c.get(self.section, key));
        if let Some(v) = flag {
            return Ok(v);
        }
        match from_config {
            Some((k, raw)) => {
                parse_vec3(raw).map_err(|reason| CliError::InvalidConfig { key: k, reason })
            }
            None => Ok(default),
        }
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> CliError {
    CliError::InvalidConfig {
        key: key.into(),
        reason: reason.into(),
    }
}

fn finite(key: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(key, format!("must be finite, got {v}")))
    }
}

pub(crate) fn resolve(cli: Cli, config: Option<&ConfigFile>) -> Result<Scenario, CliError> {
    let top = Resolver {
        section: "",
        config,
    };
    let (kind, section) = match cli.command {
        Command::Lorentz(a) => {
            let r = Resolver {
                section: "lorentz",
                config,
            };
            let p = LorentzParams {
                charge: r.value("charge", a.charge, 1.0)?,
                mass: r.value("mass", a.mass, 1.0)?,
                e_field: r.vec3("e_field", a.e_field, [0.0; 3])?,
                b_field: r.vec3("b_field", a.b_field, [0.0, 0.0, 1.0])?,
                velocity: r.vec3("velocity", a.velocity, [0.1, 0.0, 0.0])?,
                tau: r.value("tau", a.tau, 20.0 * PI)?,
                dtau: r.value("dtau", a.dtau, 1e-3)?,
                gauge: r.value("gauge", a.gauge, false)?,
                every: r.value("every", a.every, 10)?,
            };
            (ScenarioKind::Lorentz(p), "lorentz")
        }
        Command::SternGerlach(a) => {
            let r = Resolver {
                section: "stern_gerlach",
                config,
            };
            let sigma = r.value("sigma", a.sigma, 1.0)?;
            let dv = r.value("dv", a.dv, 0.001)?;
            let p = SternGerlachParams {
                theta: r.value("theta", a.theta, PI / 2.0)?,
                phi: r.value("phi", a.phi, 0.0)?,
                chi: r.value("chi", a.chi, 0.0)?,
                v: r.value("v", a.v, 0.01)?,
                dv,
                sigma,
                // 2Δv t = 12σ
                t_final: r.value("t_final", a.t_final, 6.0 * sigma / dv)?,
                x_points: r.value("x_points", a.x_points, sg::DEFAULT_POINTS)?,
                t_points: r.value("t_points", a.t_points, 5)?,
            };
            (ScenarioKind::SternGerlach(p), "stern_gerlach")
        }
        Command::DiracPlanewave(a) => {
            let r = Resolver {
                section: "dirac_planewave",
                config,
            };
            let from_config = config.and_then(|c| c.get("dirac_planewave", "p"));
            let momenta = if !a.momenta.is_empty() {
                a.momenta
            } else if let Some((k, raw)) = from_config {
                raw.split('|')
                    .map(parse_vec3)
                    .collect::<Result<_, _>>()
                    .map_err(|reason| CliError::InvalidConfig { key: k, reason })?
            } else {
                vec![[0.1, 0.0, 0.0]]
            };
            let p = DiracParams {
                mass: r.value("mass", a.mass, 1.0)?,
                charge: r.value("charge", a.charge, -1.0)?,
                momenta,
                rho: r.value("rho", a.rho, 1.0)?,
                rep: r.value("rep", a.rep, Rep::Weyl)?,
                x_min: r.value("x_min", a.x_min, 0.0)?,
                x_max: r.value("x_max", a.x_max, 100.0)?,
                points: r.value("points", a.points, 201)?,
                t: r.value("t", a.t, 0.0)?,
            };
            (ScenarioKind::DiracPlaneWave(p), "dirac_planewave")
        }
        Command::CheckIdentities(a) => {
            let r = Resolver {
                section: "check_identities",
                config,
            };
            let p = IdentityParams {
                trials: r.value("trials", a.trials, 10_000)?,
                seed: r.value("seed", a.seed, 42)?,
            };
            (ScenarioKind::CheckIdentities(p), "check_identities")
        }
        Command::FermionGen(a) => {
            let r = Resolver {
                section: "fermion_gen",
                config,
            };
            let p = FermionParams {
                modes: r.value("modes", a.modes, 2)?,
            };
            (ScenarioKind::FermionGen(p), "fermion_gen")
        }
        Command::MagneticMoment(a) => {
            let r = Resolver {
                section: "magnetic_moment",
                config,
            };
            let si = a.si || r.value("si", None, false)?;
            let p = MomentParams {
                particle: r.value("particle", a.particle, "electron".to_string())?,
                si,
                b_field: r.vec3("b_field", a.b_field, [0.0, 0.0, 1.0])?,
                spin: r.vec3("spin", a.spin, [0.0, 0.0, 1.0])?,
                constants: PhysicalConstants::from_config(config)?,
            };
            (ScenarioKind::MagneticMoment(p), "magnetic_moment")
        }
    };
    let default_format = if kind.supports_csv() {
        Format::Csv
    } else {
        Format::Json
    };
    let format = top.value("format", cli.format, default_format)?;
    let path = top.opt::<PathBuf>("output", cli.output)?;
    if let Some(c) = config {
        let constants = matches!(kind, ScenarioKind::MagneticMoment(_));
        let sections: &[&str] = if constants {
            &[section, "constants"]
        } else {
            &[section]
        };
        c.reject_unused(sections)?;
    }
    if format == Format::Csv && !kind.supports_csv() {
        return Err(invalid(
            "format",
            format!("{} only writes json", kind.name()),
        ));
    }
    let scenario = Scenario {
        kind,
        output: OutputSpec { path, format },
    };
    scenario.kind.validate()?;
    Ok(scenario)
}

impl ScenarioKind {
    /// Checks preconditions of the target module before any work is done.
    pub fn validate(&self) -> Result<(), CliError> {
        match self {
            Self::Lorentz(p) => p.validate(),
            Self::SternGerlach(p) => p.config().map(|_| ()),
            Self::DiracPlaneWave(p) => p.waves().map(|_| ()),
            Self::CheckIdentities(p) => {
                if p.trials == 0 || p.trials > 10_000_000 {
                    return Err(invalid(
                        "trials",
                        format!("must be in 1..=10000000, got {}", p.trials),
                    ));
                }
                Ok(())
            }
            Self::FermionGen(p) => fermion::build_modes(p.modes)
                .map(|_| ())
                .map_err(Into::into),
            Self::MagneticMoment(p) => p.particle().map(|_| ()),
        }
    }
}

pub(crate) fn render(s: &Scenario) -> Result<Vec<u8>, CliError> {
    let name = s.kind.name();
    let format = s.output.format;
    match &s.kind {
        ScenarioKind::Lorentz(p) => p.render(name, format),
        ScenarioKind::SternGerlach(p) => p.render(name, format),
        ScenarioKind::DiracPlaneWave(p) => p.render(name, format),
        ScenarioKind::CheckIdentities(p) => json_bytes(name, &run_identity_suite(p.trials, p.seed)),
        ScenarioKind::FermionGen(p) => {
            let modes = fermion::build_modes(p.modes)?;
            let null_flags = if p.modes == 1 {
                Some(fermion::null_flag_check(&modes)?)
            } else {
                None
            };
            json_bytes(
                name,
                &json!({
                    "report": fermion::generation_report(p.modes)?,
                    "spin4": fermion::spin4_check(),
                    "null_flags": null_flags,
                }),
            )
        }
        ScenarioKind::MagneticMoment(p) => p.render(name),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LorentzParams {
    pub charge: f64,
    pub mass: f64,
    pub e_field: [f64; 3],
    pub b_field: [f64; 3],
    pub velocity: [f64; 3],
    pub tau: f64,
    pub dtau: f64,
    pub gauge: bool,
    pub every: usize,
}

impl LorentzParams {
    fn validate(&self) -> Result<(), CliError> {
        for (k, v) in [("e_field", self.e_field), ("b_field", self.b_field)] {
            v.iter().try_for_each(|c| finite(k, *c))?;
        }
        Particle::new(self.charge, self.mass)?;
        momentum_from_velocity(self.mass, self.velocity)?;
        if !(self.dtau > 0.0 && self.dtau.is_finite()) {
            return Err(invalid(
                "dtau",
                format!("must be positive and finite, got {}", self.dtau),
            ));
        }
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return Err(invalid(
                "tau",
                format!("must be non-negative and finite, got {}", self.tau),
            ));
        }
        if self.tau / self.dtau > MAX_STEPS {
            return Err(invalid(
                "dtau",
                format!("tau/dtau exceeds {MAX_STEPS:e} steps"),
            ));
        }
        if self.every == 0 {
            return Err(invalid("every", "must be at least 1"));
        }
        Ok(())
    }

    fn render(&self, name: &str, format: Format) -> Result<Vec<u8>, CliError> {
        let particle = Particle::new(self.charge, self.mass)?;
        let field = Biparavector::new(self.e_field, self.b_field);
        let p0 = momentum_from_velocity(self.mass, self.velocity)?;
        let init = Eigenspinor::new(boost_from_momentum(&p0, self.mass)?);
        let integration = Integration {
            tau_span: self.tau,
            dtau: self.dtau,
            gauge: self.gauge,
        };
        let traj = evolve_numeric(
            &init,
            &Paravector::default(),
            &field,
            &particle,
            &integration,
        )?;
        if format == Format::Csv {
            let last = traj.points.len() - 1;
            let rows = traj
                .points
                .iter()
                .enumerate()
                .filter(|(i, _)| i % self.every == 0 || *i == last)
                .map(|(_, p)| p.csv_row());
            return csv_bytes(&TrajectoryPoint::CSV_HEADER, rows);
        }
        let rest0 = init.rest_frame_field(&field);
        let mut max_u_err = 0.0_f64;
        let mut max_rest_change = 0.0_f64;
        let mut max_drift = 0.0_f64;
        for pt in &traj.points {
            let exact = evolve_analytic(&init, &field, &particle, pt.state.tau - init.tau);
            let (u, w) = (pt.state.proper_velocity(), exact.proper_velocity());
            max_u_err = max_u_err.max((u.mv() - w.mv()).norm());
            let rest = pt.state.rest_frame_field(&field);
            max_rest_change = max_rest_change.max((rest.mv() - rest0.mv()).norm());
            max_drift = max_drift.max(pt.drift);
        }
        let last = traj.last();
        json_bytes(
            name,
            &json!({
                "parameters": self,
                "steps": traj.points.len() - 1,
                "max_u0_error": max_u_err,
                "max_drift": max_drift,
                "max_drift_before_projection": traj.max_drift_before_projection,
                "max_rest_field_change": max_rest_change,
                "rest_field": { "e": rest0.real(), "b": rest0.imag() },
                "final": {
                    "tau": last.state.tau,
                    "x": last.x.components(),
                    "u0": last.state.proper_velocity().components(),
                    "spin": last.state.spin(),
                },
            }),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SternGerlachParams {
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
    pub v: f64,
    pub dv: f64,
    pub sigma: f64,
    pub t_final: f64,
    pub x_points: usize,
    pub t_points: usize,
}

impl SternGerlachParams {
    pub fn config(&self) -> Result<SGConfig, CliError> {
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(invalid(
                "t_final",
                format!("must be positive and finite, got {}", self.t_final),
            ));
        }
        let mut cfg = SGConfig::new(self.theta, self.v, self.dv, self.sigma, self.t_final)?;
        cfg.phi = self.phi;
        cfg.chi = self.chi;
        cfg.grid.x_points = self.x_points;
        cfg.grid.t_points = self.t_points;
        cfg.validate()?;
        Ok(cfg)
    }

    fn render(&self, name: &str, format: Format) -> Result<Vec<u8>, CliError> {
        let cfg = self.config()?;
        if format == Format::Csv {
            let sweep = sg::profile_sweep(&cfg)?;
            return csv_bytes(&sg::CSV_HEADER, sweep.points.iter().map(|p| p.csv_row()));
        }
        let out = sg::measure_outcomes(&cfg, self.t_final)?;
        json_bytes(
            name,
            &json!({
                "parameters": self,
                "p_up": out.p_up,
                "p_down": out.p_down,
                "expected_p_up": (self.theta / 2.0).cos().powi(2),
                "overlap": out.overlap,
                "separation_sigmas": out.separation_sigmas,
                "warnings": out.warnings,
            }),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiracParams {
    pub mass: f64,
    pub charge: f64,
    pub momenta: Vec<[f64; 3]>,
    pub rho: f64,
    pub rep: Rep,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub t: f64,
}

const DIRAC_CSV_HEADER: [&str; 9] = ["x", "J0", "J1", "J2", "J3", "S0", "S1", "S2", "S3"];

impl DiracParams {
    fn waves(&self) -> Result<PlaneWaves, CliError> {
        if self.momenta.is_empty() {
            return Err(invalid("p", "at least one momentum is required"));
        }
        for (k, v) in [("x_min", self.x_min), ("x_max", self.x_max), ("t", self.t)] {
            finite(k, v)?;
        }
        if self.x_max <= self.x_min {
            return Err(invalid(
                "x_max",
                format!("must exceed x_min = {}", self.x_min),
            ));
        }
        if self.points < 2 {
            return Err(invalid("points", "need at least 2"));
        }
        let particle = Particle::new(self.charge, self.mass)?;
        let waves = self
            .momenta
            .iter()
            .map(|p| {
                let e = (self.mass * self.mass + p.iter().map(|c| c * c).sum::<f64>()).sqrt();
                PlaneWave::simple(Paravector::new(e, *p), self.mass, self.rho)
            })
            .collect::<aps_spin::Result<Vec<_>>>()?;
        Ok(PlaneWaves::new(particle, Paravector::default(), waves)?)
    }

    fn render(&self, name: &str, format: Format) -> Result<Vec<u8>, CliError> {
        let waves = self.waves()?;
        if format == Format::Csv {
            let n = self.points;
            let rows = (0..n).map(|k| {
                let x1 = self.x_min + (self.x_max - self.x_min) * k as f64 / (n - 1) as f64;
                let amp = waves.at(&Paravector::new(self.t, [x1, 0.0, 0.0]));
                let (j, s) = (amp.current().components(), amp.spin_current().components());
                [x1, j[0], j[1], j[2], j[3], s[0], s[1], s[2], s[3]]
            });
            return csv_bytes(&DIRAC_CSV_HEADER, rows);
        }
        let m = self.mass;
        let rep: Representation = self.rep.into();
        let per_wave: Vec<_> = waves
            .waves
            .iter()
            .map(|w| {
                let psi = w.envelope();
                let split = dirac::large_small_split(&psi);
                let bispinor = dirac::to_bispinor(&psi, rep);
                let residual = bispinor.momentum_equation_residual(&w.momentum, m);
                let p = w.momentum;
                let mag = p.space().iter().map(|c| c * c).sum::<f64>().sqrt();
                json!({
                    "momentum": p.components(),
                    "classical_residual": dirac::classical_dirac_residual(&psi, &p, m).norm(),
                    "bispinor_residual": residual.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
                    "small_large_ratio": split.small.norm() / split.large.norm(),
                    "expected_ratio": mag / (m + p.time()),
                })
            })
            .collect();
        let x = Paravector::new(self.t, [self.x_min, 0.0, 0.0]);
        let amp = waves.at(&x);
        let (plus, minus) = amp.null_currents();
        let h = waves.default_step();
        json_bytes(
            name,
            &json!({
                "parameters": {
                    "mass": m,
                    "charge": self.charge,
                    "momenta": self.momenta,
                    "rho": self.rho,
                    "rep": rep,
                },
                "point": x.components(),
                "bispinor": amp.to_bispinor(rep),
                "waves": per_wave,
                "current": amp.current().components(),
                "spin_current": amp.spin_current().components(),
                "null_intervals": [plus.interval(), minus.interval()],
                "divergences": dirac::conserved_currents(&waves, &x, h, Stencil::Central),
                "spin_source": dirac::spin_source(&waves, &x),
                "pauli_schrodinger": dirac::pauli_schrodinger_limit(&waves, &x),
                "reduced_wavelength": waves.reduced_wavelength(),
                "step": h,
            }),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityParams {
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FermionParams {
    pub modes: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentParams {
    pub particle: String,
    pub si: bool,
    pub b_field: [f64; 3],
    pub spin: [f64; 3],
    pub constants: PhysicalConstants,
}

impl MomentParams {
    pub fn particle(&self) -> Result<Particle, CliError> {
        if self.particle != "electron" {
            return Err(invalid(
                "particle",
                format!("unknown particle {:?}; supported: electron", self.particle),
            ));
        }
        self.b_field
            .iter()
            .try_for_each(|c| finite("b_field", *c))?;
        let k = &self.constants;
        let particle = if self.si {
            Particle::with_units(-k.elementary_charge, k.electron_mass, k.hbar, k.c)?
        } else {
            Particle::new(-1.0, 1.0)?
        };
        Ok(particle)
    }

    fn render(&self, name: &str) -> Result<Vec<u8>, CliError> {
        let particle = self.particle()?;
        let shift = dynamics::magnetic_rotation_shift(&particle, self.b_field, self.spin)?;
        json_bytes(
            name,
            &json!({
                "particle": self.particle,
                "units": if self.si { "si" } else { "natural" },
                "constants": self.si.then_some(self.constants),
                "b_field": self.b_field,
                "spin": self.spin,
                "omega0": shift.omega0,
                "threshold_field": shift.critical_field,
                "shift": shift,
            }),
        )
    }
}
