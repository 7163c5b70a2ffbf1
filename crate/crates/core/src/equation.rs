//! The two nonlinear time-fractional equations and their residual operators.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::order::FracOrder;
use crate::powerlaw::{caputo_dt, d_dx, CaputoMode, Monomial, PowerSum};
use crate::scalar::Scalar;

/// `D^α u = (u^p u_x)_x` or `D^α u = (u^q u_xx)_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "equation", rename_all = "snake_case")]
pub enum Equation<T> {
    Diffusion { p: T },
    ThirdOrder { q: T },
}

impl<T: Scalar> Equation<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Equation::Diffusion { .. } => "diffusion",
            Equation::ThirdOrder { .. } => "third_order",
        }
    }

    /// The nonlinearity exponent (`p` or `q`).
    pub fn exponent(&self) -> T {
        match *self {
            Equation::Diffusion { p } => p,
            Equation::ThirdOrder { q } => q,
        }
    }

    /// `(x_exp, t_exp)` of the power-law similarity solution:
    /// `(2/p, -α/p)` or `(3/q, -α/q)`.
    pub fn similarity_exponents(&self, alpha: FracOrder<T>) -> (T, T) {
        let a = alpha.value();
        match *self {
            Equation::Diffusion { p } => (T::lit(2.0) / p, -a / p),
            Equation::ThirdOrder { q } => (T::lit(3.0) / q, -a / q),
        }
    }

    /// Right-hand side applied to a power-law `u`.
    pub fn spatial_operator(&self, u: &Monomial<T>) -> Result<PowerSum<T>> {
        match *self {
            Equation::Diffusion { p } => diffusion_operator(u, p),
            Equation::ThirdOrder { q } => third_order_operator(u, q),
        }
    }

    /// `D^α u - RHS(u)` with the Caputo derivative in extended mode.
    pub fn residual(&self, u: &Monomial<T>, alpha: FracOrder<T>) -> Result<PowerSum<T>> {
        let lhs = caputo_dt(&PowerSum::from(*u), alpha, CaputoMode::Extended)?;
        Ok(&lhs - &self.spatial_operator(u)?)
    }
}

/// `(u^p u_x)_x`
pub fn diffusion_operator<T: Scalar>(u: &Monomial<T>, p: T) -> Result<PowerSum<T>> {
    let us = PowerSum::from(*u);
    let flux = &PowerSum::from(u.pow_real(p)?) * &d_dx(&us);
    Ok(d_dx(&flux))
}

/// `(u^q u_xx)_x`
pub fn third_order_operator<T: Scalar>(u: &Monomial<T>, q: T) -> Result<PowerSum<T>> {
    let us = PowerSum::from(*u);
    let flux = &PowerSum::from(u.pow_real(q)?) * &d_dx(&d_dx(&us));
    Ok(d_dx(&flux))
}

/// Residual of `D^α u = (u^p u_x)_x` for a power-law `u`.
pub fn residual_diffusion<T: Scalar>(
    u: &Monomial<T>,
    p: T,
    alpha: FracOrder<T>,
) -> Result<PowerSum<T>> {
    Equation::Diffusion { p }.residual(u, alpha)
}

/// Residual of `D^α u = (u^q u_xx)_x` for a power-law `u`.
pub fn residual_third_order<T: Scalar>(
    u: &Monomial<T>,
    q: T,
    alpha: FracOrder<T>,
) -> Result<PowerSum<T>> {
    Equation::ThirdOrder { q }.residual(u, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fo(a: f64) -> FracOrder<f64> {
        FracOrder::new(a).unwrap()
    }

    #[test]
    fn constants_solve_both_equations() {
        let u = Monomial::constant(2.0);
        assert!(residual_diffusion(&u, 1.5, fo(0.5)).unwrap().is_zero());
        assert!(residual_third_order(&u, 2.0, fo(0.5)).unwrap().is_zero());
    }

    #[test]
    fn hand_checked_residuals() {
        let r = residual_diffusion(&Monomial::new(1.0, 1.0, 0.0), 1.0, fo(0.5)).unwrap();
        assert_eq!(r, PowerSum::constant(-1.0));
        let r = residual_third_order(&Monomial::new(1.0, 2.0, 0.0), 1.0, fo(0.5)).unwrap();
        assert_eq!(r, PowerSum::monomial(-4.0, 1.0, 0.0));
    }

    #[test]
    fn spatial_operator_matches_direct_expansion() {
        // u = c x^a t^b: (u^p u_x)_x = c^(p+1) a (a(p+1)) x^(a(p+1)-2+...)
        // written out: u^p u_x = c^(p+1) a x^(a(p+1)-1) t^(b(p+1))
        let (c, a, b, p): (f64, f64, f64, f64) = (1.3, 0.8, -0.2, 1.7);
        let u = Monomial::new(c, a, b);
        let got = diffusion_operator(&u, p).unwrap().as_monomial().unwrap();
        let e = a * (p + 1.0) - 1.0;
        let want = c.powf(p + 1.0) * a * e;
        assert!((got.coeff - want).abs() < 1e-13);
        assert!((got.x_exp - (e - 1.0)).abs() < 1e-14);
        assert!((got.t_exp - b * (p + 1.0)).abs() < 1e-14);
    }

    #[test]
    fn residual_requires_positive_base_for_real_powers() {
        let u = Monomial::new(-1.0, 1.0, 0.0);
        assert!(residual_diffusion(&u, 0.5, fo(0.5)).is_err());
    }
}
