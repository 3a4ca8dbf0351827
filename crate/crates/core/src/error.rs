use thiserror::Error;

/// Errors raised by the algebra and physics kernels.
///
/// Every variant names the precondition it guards; [`Error::module`] reports
/// which kernel raised it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is not invertible: |x x̄| = {quad_form:e} below threshold {threshold:e}")]
    NonInvertible { quad_form: f64, threshold: f64 },

    #[error("Lorentz rotor is not unimodular: |L L̄ - 1| = {deviation:e}")]
    NotUnimodular { deviation: f64 },

    #[error("momentum is off shell: p p̄ = {invariant}, expected m² = {mass_sq}")]
    OffShell { invariant: f64, mass_sq: f64 },

    #[error("momentum is not future-pointing timelike: E = {energy}, |p| = {momentum}")]
    NonTimelike { energy: f64, momentum: f64 },

    #[error("{modes} fermion modes requested; at most {max} are supported")]
    TooManyModes { modes: usize, max: usize },

    #[error("integration step too large: unimodularity drift {drift:e} before projection exceeds {limit:e}")]
    StepTooLarge { drift: f64, limit: f64 },

    #[error("direction is not a unit vector: |n| = {norm}")]
    NotUnit { norm: f64 },

    #[error("velocity |v| = {speed} is not below the speed of light")]
    SuperluminalVelocity { speed: f64 },

    #[error("{parameter} = {value} is out of range: {reason}")]
    ConfigOutOfRange {
        parameter: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid {parameter}: {reason}")]
    InvalidArgument {
        module: &'static str,
        parameter: &'static str,
        reason: String,
    },
}

impl Error {
    /// Name of the kernel module that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::NonInvertible { .. } => "ga",
            Error::NotUnimodular { .. }
            | Error::OffShell { .. }
            | Error::NonTimelike { .. }
            | Error::SuperluminalVelocity { .. } => "spacetime",
            Error::TooManyModes { .. } => "fermion",
            Error::StepTooLarge { .. } => "dynamics",
            Error::NotUnit { .. } => "spin",
            Error::ConfigOutOfRange { .. } => "stern_gerlach",
            Error::InvalidArgument { module, .. } => module,
        }
    }

    /// Short machine-readable name of the violated precondition.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonInvertible { .. } => "NonInvertible",
            Error::NotUnimodular { .. } => "NotUnimodular",
            Error::OffShell { .. } => "OffShell",
            Error::NonTimelike { .. } => "NonTimelike",
            Error::TooManyModes { .. } => "TooManyModes",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::NotUnit { .. } => "NotUnit",
            Error::SuperluminalVelocity { .. } => "SuperluminalVelocity",
            Error::ConfigOutOfRange { .. } => "ConfigOutOfRange",
            Error::InvalidArgument { .. } => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
