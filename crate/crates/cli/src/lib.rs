//! Command-line front end: scenarios, configuration and output.

pub mod args;
pub mod config;
mod output;
mod scenario;

use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

pub use config::{ConfigFile, PhysicalConstants};
pub use output::{error_json, format_number};
pub use scenario::{
    DiracParams, FermionParams, IdentityParams, LorentzParams, MomentParams, ScenarioKind,
    SternGerlachParams,
};

/// Version stamped into every JSON document.
pub const SPEC_VERSION: &str = "1.0";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration for {key}: {reason}")]
    InvalidConfig { key: String, reason: String },
    #[error(transparent)]
    Module(#[from] aps_spin::Error),
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::InvalidConfig { .. } => "InvalidConfig",
            Self::Module(_) => "ModuleError",
            Self::Io { .. } => "IOFailure",
        }
    }

    /// Module the failure originated in.
    pub fn module(&self) -> &'static str {
        match self {
            Self::Module(e) => e.module(),
            _ => "cli_io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::InvalidConfig { .. } => 2,
            Self::Module(_) => 3,
            Self::Io { .. } => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as clap::ValueEnum>::from_str(s, true)
    }
}

/// Bispinor representation selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Rep {
    Weyl,
    DiracPauli,
}

impl std::str::FromStr for Rep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as clap::ValueEnum>::from_str(&s.replace('_', "-"), true)
    }
}

impl From<Rep> for aps_spin::dirac::Representation {
    fn from(r: Rep) -> Self {
        match r {
            Rep::Weyl => Self::Weyl,
            Rep::DiracPauli => Self::DiracPauli,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputSpec {
    /// Standard output when `None`.
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// A fully resolved, validated command.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub output: OutputSpec,
}

impl Scenario {
    /// Merges flags over the configuration file over defaults, then checks
    /// the parameters against the target module's preconditions.
    pub fn from_cli(cli: args::Cli) -> Result<Self, CliError> {
        let config = cli.config.as_deref().map(ConfigFile::load).transpose()?;
        scenario::resolve(cli, config.as_ref())
    }

    /// Computes the artifact without writing it.
    pub fn render(&self) -> Result<Vec<u8>, CliError> {
        scenario::render(self)
    }
}

/// Renders the scenario and writes it to its destination.
pub fn run(scenario: &Scenario) -> Result<(), CliError> {
    let bytes = scenario.render()?;
    match &scenario.output.path {
        Some(path) => std::fs::write(path, &bytes).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
