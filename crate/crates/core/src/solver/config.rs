//! JSON run configuration.

use serde::{Deserialize, Serialize};

use super::{CoefficientLag, Problem, SolverConfig, DEFAULT_CORRECTOR_SWEEPS};
use crate::error::{Error, Result};
use crate::order::FracOrder;
use crate::powerlaw::PowerSum;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    Mms,
    ExactSimilarity,
}

/// On-disk form of a [`SolverConfig`]. Unknown keys are rejected.
///
/// ```json
/// {"alpha": 0.5, "p": 1, "x_lo": 0, "x_hi": 1, "t_final": 1,
///  "nx": 64, "nt": 256, "mode": "mms", "u_star": "1*x^2*t^2"}
/// ```
///
/// `u_star` is required in `mms` mode; `source` overrides the computed
/// manufactured source. `levels` is only read by the convergence study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub alpha: f64,
    pub p: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub t_final: f64,
    pub nx: usize,
    pub nt: usize,
    pub mode: ModeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_star: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lag: Option<CoefficientLag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrector_sweeps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_solver_config<T: Scalar>(&self) -> Result<SolverConfig<T>> {
        let alpha = FracOrder::new(T::lit(self.alpha)).map_err(|e| Error::Config(e.to_string()))?;
        let p = T::lit(self.p);
        if p == T::zero() {
            return Err(Error::Config(
                "p = 0 (linear problem) is not supported".into(),
            ));
        }
        let problem = match self.mode {
            ModeName::Mms => {
                let text = self
                    .u_star
                    .as_deref()
                    .ok_or_else(|| Error::Config("mms mode needs \"u_star\"".into()))?;
                let u_star: PowerSum<T> = text.parse()?;
                match &self.source {
                    Some(src) => {
                        super::integer_exponent(p)?;
                        Problem::Mms {
                            u_star,
                            source: src.parse()?,
                        }
                    }
                    None => Problem::mms(u_star, p, alpha)?,
                }
            }
            ModeName::ExactSimilarity => {
                if self.u_star.is_some() || self.source.is_some() {
                    return Err(Error::Config(
                        "u_star/source are only valid in mms mode".into(),
                    ));
                }
                Problem::exact_similarity(p, alpha)?
            }
        };
        let config = SolverConfig {
            alpha,
            p,
            x_lo: T::lit(self.x_lo),
            x_hi: T::lit(self.x_hi),
            t_final: T::lit(self.t_final),
            nx: self.nx,
            nt: self.nt,
            lag: self.lag.unwrap_or_default(),
            corrector_sweeps: self.corrector_sweeps.unwrap_or(DEFAULT_CORRECTOR_SWEEPS),
            problem,
        };
        config.validate()?;
        Ok(config)
    }
}
