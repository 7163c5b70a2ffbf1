//! Ordinary and fractional power rules on [`PowerSum`].

use serde::{Deserialize, Serialize};

use super::{same_exponent, Monomial, PowerSum};
use crate::error::{Error, Result};
use crate::order::FracOrder;
use crate::scalar::Scalar;
use crate::special::gamma_ratio;

/// How the Caputo power rule treats `t^b` with `-1 < b < 0`.
///
/// The Caputo integral diverges there. `Extended` applies the
/// Riemann–Liouville power rule anyway, which is what the closed-form
/// similarity constants rely on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaputoMode {
    #[default]
    Strict,
    Extended,
}

pub fn d_dx<T: Scalar>(s: &PowerSum<T>) -> PowerSum<T> {
    PowerSum::from_terms(
        s.terms()
            .iter()
            .filter(|m| !same_exponent(m.x_exp, T::zero()))
            .map(|m| Monomial::new(m.coeff * m.x_exp, m.x_exp - T::one(), m.t_exp)),
    )
}

pub fn d_dt<T: Scalar>(s: &PowerSum<T>) -> PowerSum<T> {
    PowerSum::from_terms(
        s.terms()
            .iter()
            .filter(|m| !same_exponent(m.t_exp, T::zero()))
            .map(|m| Monomial::new(m.coeff * m.t_exp, m.x_exp, m.t_exp - T::one())),
    )
}

/// `Γ(b+1)/Γ(b+1+shift) · t^(b+shift)` applied to a single term; `None` when
/// the ratio vanishes on a denominator pole.
fn gamma_power_rule<T: Scalar>(m: &Monomial<T>, shift: T) -> Result<Option<Monomial<T>>> {
    let b = m.t_exp;
    let r = gamma_ratio(b + T::one(), b + T::one() + shift)?;
    if r.is_zero {
        return Ok(None);
    }
    Ok(Some(Monomial::new(m.coeff * r.value, m.x_exp, b + shift)))
}

fn check_convergent<T: Scalar>(b: T) -> Result<()> {
    if b <= -T::one() {
        Err(Error::Divergent { t_exp: b.as_f64() })
    } else {
        Ok(())
    }
}

/// Caputo derivative of order α in `t`.
///
/// Constants are annihilated; `t^b` with `b > 0` maps to
/// `Γ(b+1)/Γ(b+1-α) t^(b-α)`. At α = 1 this is exactly [`d_dt`] and no
/// divergence checks apply.
pub fn caputo_dt<T: Scalar>(
    s: &PowerSum<T>,
    alpha: FracOrder<T>,
    mode: CaputoMode,
) -> Result<PowerSum<T>> {
    if alpha.is_integer() {
        return Ok(d_dt(s));
    }
    let a = alpha.value();
    s.map_terms(|m| {
        let b = m.t_exp;
        if same_exponent(b, T::zero()) {
            return Ok(None);
        }
        check_convergent(b)?;
        if b < T::zero() && mode == CaputoMode::Strict {
            return Err(Error::StrictMode { t_exp: b.as_f64() });
        }
        gamma_power_rule(m, -a)
    })
}

/// Riemann–Liouville derivative of order α in `t`. Unlike Caputo it maps a
/// constant to `t^(-α)/Γ(1-α)`.
pub fn rl_dt<T: Scalar>(s: &PowerSum<T>, alpha: FracOrder<T>) -> Result<PowerSum<T>> {
    if alpha.is_integer() {
        return Ok(d_dt(s));
    }
    let a = alpha.value();
    s.map_terms(|m| {
        check_convergent(m.t_exp)?;
        gamma_power_rule(m, -a)
    })
}

/// Riemann–Liouville fractional integral `I^order` for any `order > 0`.
pub fn frac_int<T: Scalar>(s: &PowerSum<T>, order: T) -> Result<PowerSum<T>> {
    if !(order > T::zero()) {
        return Err(Error::InvalidOrder(order.as_f64()));
    }
    s.map_terms(|m| {
        check_convergent(m.t_exp)?;
        gamma_power_rule(m, order)
    })
}
