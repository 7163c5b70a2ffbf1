//! Fractional calculus on power-law expressions, Lie-symmetry checks for
//! two nonlinear time-fractional equations, and an L1 finite-difference
//! solver for `D^α u = (u^p u_x)_x`.
//!
//! Everything numerical is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! stated tolerances assume.

// `!(a > b)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Test oracles are frozen at full printed precision.
#![cfg_attr(test, allow(clippy::excessive_precision, clippy::approx_constant))]

pub mod equation;
pub mod error;
pub mod numerics;
pub mod order;
pub mod powerlaw;
pub mod scalar;
pub mod solutions;
pub mod solver;
pub mod special;
pub mod symmetry;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type FracOrder = order::FracOrder<f64>;
pub type Monomial = powerlaw::Monomial<f64>;
pub type PowerSum = powerlaw::PowerSum<f64>;
pub type EtaForm = powerlaw::EtaForm<f64>;
pub type GammaRatio = special::GammaRatio<f64>;
pub type Equation = equation::Equation<f64>;
pub type SampledFunction = numerics::SampledFunction<f64>;
pub type Generator = symmetry::Generator<f64>;
pub type SimilaritySolution = solutions::SimilaritySolution<f64>;
pub type SolverConfig = solver::SolverConfig<f64>;
pub type Field = solver::Field<f64>;

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
