use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::parse_vec3;
use crate::Format;

/// Spin and relativistic dynamics in the algebra of physical space.
#[derive(Debug, Parser)]
#[command(name = "aps-spin", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Key-value configuration file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Charged particle with spin in a constant electromagnetic field.
    Lorentz(LorentzArgs),
    /// Beam splitting profiles and branch probabilities.
    SternGerlach(SternGerlachArgs),
    /// Superposition of de Broglie waves: bispinor and current sweep.
    DiracPlanewave(DiracArgs),
    /// Seeded algebra identities against the Pauli matrix representation.
    CheckIdentities(IdentityArgs),
    /// Clifford generators built from fermion modes.
    FermionGen(FermionArgs),
    /// Intrinsic rotation rate, magnetic moment and critical field.
    MagneticMoment(MomentArgs),
}

#[derive(Debug, Default, Args)]
pub struct LorentzArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Electric field `ex,ey,ez`.
    #[arg(long = "e-field", value_parser = parse_vec3, allow_hyphen_values = true)]
    pub e_field: Option<[f64; 3]>,
    /// Magnetic field `bx,by,bz`.
    #[arg(long = "b-field", value_parser = parse_vec3, allow_hyphen_values = true)]
    pub b_field: Option<[f64; 3]>,
    /// Initial coordinate velocity as a fraction of c.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub velocity: Option<[f64; 3]>,
    /// Total proper time.
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub dtau: Option<f64>,
    /// Include the intrinsic rotation about the spin axis.
    #[arg(long)]
    pub gauge: Option<bool>,
    /// Write every n-th step to the CSV.
    #[arg(long)]
    pub every: Option<usize>,
}

#[derive(Debug, Default, Args)]
pub struct SternGerlachArgs {
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<f64>,
    /// Beam speed along e1.
    #[arg(long)]
    pub v: Option<f64>,
    /// Transverse kick along ±e3.
    #[arg(long)]
    pub dv: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Defaults to the time at which the branches are 12σ apart.
    #[arg(long)]
    pub t_final: Option<f64>,
    #[arg(long)]
    pub x_points: Option<usize>,
    #[arg(long)]
    pub t_points: Option<usize>,
}

#[derive(Debug, Default, Args)]
pub struct DiracArgs {
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Option<f64>,
    /// Spatial momentum `px,py,pz` of one wave; repeat for a superposition.
    #[arg(long = "p", value_parser = parse_vec3, allow_hyphen_values = true)]
    pub momenta: Vec<[f64; 3]>,
    /// Density of each wave.
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, value_enum)]
    pub rep: Option<crate::Rep>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Time of the sweep along e1.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
}

#[derive(Debug, Default, Args)]
pub struct IdentityArgs {
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Args)]
pub struct FermionArgs {
    #[arg(long)]
    pub modes: Option<usize>,
}

#[derive(Debug, Default, Args)]
pub struct MomentArgs {
    #[arg(long)]
    pub particle: Option<String>,
    /// SI units with the configured constants instead of ħ = c = m = 1.
    #[arg(long)]
    pub si: bool,
    /// Magnetic field `bx,by,bz` (tesla with --si).
    #[arg(long = "b-field", value_parser = parse_vec3, allow_hyphen_values = true)]
    pub b_field: Option<[f64; 3]>,
    /// Rest-frame spin direction.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub spin: Option<[f64; 3]>,
}
