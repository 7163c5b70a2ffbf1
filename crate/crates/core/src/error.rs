use thiserror::Error;

/// Every failure mode the toolkit reports.
///
/// Numeric payloads are stored as `f64` so the type stays independent of the
/// scalar parameter of the routine that raised it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("PoleError: Gamma pole at argument {arg}")]
    Pole { arg: f64 },
    #[error("NegativeBaseError: real power {exponent} of non-positive coefficient {coeff}")]
    NegativeBase { coeff: f64, exponent: f64 },
    #[error("StrictModeError: Caputo integral diverges for t exponent {t_exp} in (-1, 0); use extended mode")]
    StrictMode { t_exp: f64 },
    #[error("DivergentError: fractional operator diverges for t exponent {t_exp} <= -1")]
    Divergent { t_exp: f64 },
    #[error("NonUniformGridError: {0}")]
    NonUniformGrid(String),
    #[error("DegenerateError: {0}")]
    Degenerate(String),
    #[error("NoRealSolutionError: {0}")]
    NoRealSolution(String),
    #[error("DivergenceError: {0}")]
    Divergence(String),
    #[error("ConfigError: {0}")]
    Config(String),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("InvalidOrderError: fractional order {0} outside (0, 1]")]
    InvalidOrder(f64),
    #[error("NotAdmittedError: {0}")]
    NotAdmitted(String),
    #[error("IoError: {0}")]
    Io(String),
}

impl Error {
    /// Short error name used on diagnostic streams.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "PoleError",
            Error::NegativeBase { .. } => "NegativeBaseError",
            Error::StrictMode { .. } => "StrictModeError",
            Error::Divergent { .. } => "DivergentError",
            Error::NonUniformGrid(_) => "NonUniformGridError",
            Error::Degenerate(_) => "DegenerateError",
            Error::NoRealSolution(_) => "NoRealSolutionError",
            Error::Divergence(_) => "DivergenceError",
            Error::Config(_) => "ConfigError",
            Error::Parse(_) => "ParseError",
            Error::InvalidOrder(_) => "InvalidOrderError",
            Error::NotAdmitted(_) => "NotAdmittedError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
