//! Power-law similarity solutions `u = c x^a t^b` of the two equations.
//!
//! Substituting the ansatz reduces each equation to a scalar balance
//! `c R = c^(n+1) S` on a single monomial, where `R` comes from the Caputo
//! power rule and `S` from the spatial operator. Both are computed by the
//! algebra itself, and the solved constant is then certified by evaluating
//! the full residual.

use serde::Serialize;

use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::order::FracOrder;
use crate::powerlaw::{caputo_dt, CaputoMode, Monomial, PowerSum};
use crate::scalar::{rel_close, Scalar};
use crate::special::gamma_ratio;

/// Residual tolerance, relative to the size of either side of the balance.
pub const CERTIFICATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct SimilaritySolution<T> {
    #[serde(flatten)]
    pub equation: Equation<T>,
    pub alpha: FracOrder<T>,
    pub x_exp: T,
    pub t_exp: T,
    pub constant: T,
    /// Constant from the closed form printed in the literature, when real.
    pub paper_constant: Option<T>,
    pub matches_paper: bool,
    pub residual_max_coeff: T,
    /// Magnitude of the Caputo side of the balance; the certificate is
    /// `residual_max_coeff <= 1e-10 * residual_scale`.
    pub residual_scale: T,
}

impl<T: Scalar> SimilaritySolution<T> {
    pub fn monomial(&self) -> Monomial<T> {
        Monomial::new(self.constant, self.x_exp, self.t_exp)
    }

    pub fn eval(&self, t: T, x: T) -> T {
        self.monomial().eval(t, x)
    }
}

/// `D^α u = (u^p u_x)_x` with `u = c x^(2/p) t^(-α/p)`.
pub fn solve_constant_p<T: Scalar>(p: T, alpha: FracOrder<T>) -> Result<SimilaritySolution<T>> {
    if p == T::zero() {
        return Err(Error::Config("p must be nonzero".into()));
    }
    solve(Equation::Diffusion { p }, alpha)
}

/// `D^α u = (u^q u_xx)_x` with `u = c x^(3/q) t^(-α/q)`.
pub fn solve_constant_q<T: Scalar>(q: T, alpha: FracOrder<T>) -> Result<SimilaritySolution<T>> {
    if q == T::zero() {
        return Err(Error::Config("q must be nonzero".into()));
    }
    solve(Equation::ThirdOrder { q }, alpha)
}

/// Dispatches on the equation.
pub fn solve<T: Scalar>(
    equation: Equation<T>,
    alpha: FracOrder<T>,
) -> Result<SimilaritySolution<T>> {
    solve_with_tolerance(equation, alpha, T::lit(CERTIFICATE_TOL))
}

/// [`solve`] with a caller-chosen relative residual tolerance.
pub fn solve_with_tolerance<T: Scalar>(
    equation: Equation<T>,
    alpha: FracOrder<T>,
    tol: T,
) -> Result<SimilaritySolution<T>> {
    if equation.exponent() == T::zero() {
        return Err(Error::Config(format!(
            "{} exponent must be nonzero",
            equation.name()
        )));
    }
    let n = equation.exponent();
    let (x_exp, t_exp) = equation.similarity_exponents(alpha);
    let unit = Monomial::new(T::one(), x_exp, t_exp);

    let r = single_coeff(
        &caputo_dt(&PowerSum::from(unit), alpha, CaputoMode::Extended)?,
        "Caputo side",
    )?;
    let s = single_coeff(&equation.spatial_operator(&unit)?, "spatial side")?;
    if r == T::zero() {
        let a = alpha.value();
        return Err(Error::NoRealSolution(format!(
            "Gamma ratio vanishes: 1 + t_exp - alpha = {} is a pole, so the only balance is c = 0",
            (T::one() + t_exp - a).as_f64()
        )));
    }
    if s == T::zero() {
        return Err(Error::Degenerate(format!(
            "spatial operator annihilates x^{} for {} exponent {}",
            x_exp.as_f64(),
            equation.name(),
            n.as_f64()
        )));
    }
    let ratio = r / s;
    if ratio <= T::zero() || !ratio.is_finite() {
        return Err(Error::NoRealSolution(format!(
            "c^{} = {} has no positive real root",
            n.as_f64(),
            ratio.as_f64()
        )));
    }
    let constant = ratio.powf(n.recip());

    let u = Monomial::new(constant, x_exp, t_exp);
    let residual = equation.residual(&u, alpha)?;
    let residual_max_coeff = residual.max_abs_coeff();
    let residual_scale = (constant * r).abs();
    if !(residual_max_coeff <= tol * residual_scale) {
        return Err(Error::NoRealSolution(format!(
            "residual certificate failed: {} against scale {}",
            residual_max_coeff.as_f64(),
            residual_scale.as_f64()
        )));
    }

    let paper_constant = paper_constant(&equation, alpha);
    let matches_paper = paper_constant.is_some_and(|k| rel_close(k, constant, T::lit(1e-12)));
    Ok(SimilaritySolution {
        equation,
        alpha,
        x_exp,
        t_exp,
        constant,
        paper_constant,
        matches_paper,
        residual_max_coeff,
        residual_scale,
    })
}

fn single_coeff<T: Scalar>(s: &PowerSum<T>, what: &str) -> Result<T> {
    match s.len() {
        0 => Ok(T::zero()),
        1 => Ok(s.terms()[0].coeff),
        _ => Err(Error::Degenerate(format!(
            "{what} is not a single monomial: {s}"
        ))),
    }
}

/// Closed forms as printed in the literature:
/// `k^p = 2(2-p) R / p²` and `c'^q = q³ R / (3(3-q)(3+q))`, with
/// `R = Γ(1 - α/n) / Γ(1 - α/n - α)`.
fn paper_constant<T: Scalar>(equation: &Equation<T>, alpha: FracOrder<T>) -> Option<T> {
    let a = alpha.value();
    let n = equation.exponent();
    let arg = T::one() - a / n;
    let r = gamma_ratio(arg, arg - a).ok()?.value;
    let power = match *equation {
        Equation::Diffusion { p } => T::lit(2.0) * (T::lit(2.0) - p) * r / (p * p),
        Equation::ThirdOrder { q } => {
            q * q * q * r / (T::lit(3.0) * (T::lit(3.0) - q) * (T::lit(3.0) + q))
        }
    };
    if !power.is_finite() {
        return None;
    }
    if power > T::zero() {
        Some(power.powf(n.recip()))
    } else if power == T::zero() && n > T::zero() {
        Some(T::zero())
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sides {
    pub t_side: bool,
    pub x_side: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Blowup {
    pub t_to_0: bool,
    pub x_to_0: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IbvpVariant {
    /// `u(t, 0) = 0`, blow-up as `t → 0` (positive nonlinearity exponent).
    ZeroBoundary,
    /// `u(0, x) = 0`, blow-up as `x → 0` (negative nonlinearity exponent).
    ZeroInitial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IbvpClass {
    /// Whether `u` vanishes on `t = 0` / `x = 0`.
    pub zero_boundary: Sides,
    pub blowup: Blowup,
    pub variant: IbvpVariant,
}

pub fn classify_ibvp<T: Scalar>(solution: &SimilaritySolution<T>) -> IbvpClass {
    let (a, b) = (solution.x_exp, solution.t_exp);
    let positive = solution.constant > T::zero();
    IbvpClass {
        zero_boundary: Sides {
            t_side: b > T::zero(),
            x_side: a > T::zero(),
        },
        blowup: Blowup {
            t_to_0: positive && b < T::zero(),
            x_to_0: positive && a < T::zero(),
        },
        variant: if solution.equation.exponent() > T::zero() {
            IbvpVariant::ZeroBoundary
        } else {
            IbvpVariant::ZeroInitial
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlowupAxis {
    T,
    X,
}

/// Minimum local growth exponent `-Δ ln u / Δ ln s` accepted as blow-up.
pub const BLOWUP_MIN_RATE: f64 = 1e-3;

/// Finite-sequence check that `u → +∞` as the chosen coordinate goes to 0
/// with the other held at 1.
///
/// The values must increase strictly along the decreasing sequence, and
/// every consecutive pair must grow at least like `s^(-1e-3)`. A bounded
/// approach to a limit fails the rate test, while any power-law singularity
/// passes regardless of how many decades the sequence spans.
pub fn verify_blowup<T: Scalar>(
    solution: &SimilaritySolution<T>,
    axis: BlowupAxis,
    sequence: &[T],
) -> bool {
    if sequence.len() < 2 || sequence.iter().any(|s| !(*s > T::zero())) {
        return false;
    }
    if sequence.windows(2).any(|w| w[1] >= w[0]) {
        return false;
    }
    let values: Vec<T> = sequence
        .iter()
        .map(|&s| match axis {
            BlowupAxis::T => solution.eval(s, T::one()),
            BlowupAxis::X => solution.eval(T::one(), s),
        })
        .collect();
    if values.iter().any(|v| !(*v > T::zero()) || !v.is_finite()) {
        return false;
    }
    let min_rate = T::lit(BLOWUP_MIN_RATE);
    values.windows(2).zip(sequence.windows(2)).all(|(v, s)| {
        let rate = (v[1].ln() - v[0].ln()) / (s[0].ln() - s[1].ln());
        v[1] > v[0] && rate >= min_rate
    })
}
