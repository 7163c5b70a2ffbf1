//! Exact algebra over finite sums of monomials `c · x^a · t^b`.
//!
//! The set is closed under addition, multiplication, the power rule in `x`
//! and `t`, and the fractional power rules (Caputo, Riemann–Liouville,
//! fractional integral), so every identity the rest of the crate relies on
//! can be checked here without discretization error.

mod calculus;
mod eta;
mod text;

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use calculus::{caputo_dt, d_dt, d_dx, frac_int, rl_dt, CaputoMode};
pub use eta::EtaForm;
pub use text::{format_coeff, format_plain};

/// Two exponents are the same monomial power when they agree to this
/// absolute tolerance.
pub const EXPONENT_MERGE_TOL: f64 = 1e-12;

#[inline]
pub(crate) fn same_exponent<T: Scalar>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(EXPONENT_MERGE_TOL)
}

/// `coeff · x^x_exp · t^t_exp`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Monomial<T> {
    pub coeff: T,
    pub x_exp: T,
    pub t_exp: T,
}

impl<T: Scalar> Monomial<T> {
    pub fn new(coeff: T, x_exp: T, t_exp: T) -> Self {
        Monomial {
            coeff,
            x_exp,
            t_exp,
        }
    }

    pub fn constant(coeff: T) -> Self {
        Monomial::new(coeff, T::zero(), T::zero())
    }

    pub fn unit() -> Self {
        Monomial::constant(T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == T::zero()
    }

    pub fn same_powers(&self, other: &Self) -> bool {
        same_exponent(self.x_exp, other.x_exp) && same_exponent(self.t_exp, other.t_exp)
    }

    pub fn scale(self, k: T) -> Self {
        Monomial {
            coeff: self.coeff * k,
            ..self
        }
    }

    pub fn eval(&self, t: T, x: T) -> T {
        let xp = if self.x_exp == T::zero() {
            T::one()
        } else {
            x.powf(self.x_exp)
        };
        let tp = if self.t_exp == T::zero() {
            T::one()
        } else {
            t.powf(self.t_exp)
        };
        self.coeff * xp * tp
    }

    /// `(c x^a t^b)^r = c^r x^(ar) t^(br)`.
    ///
    /// Only positive coefficients admit arbitrary real powers; a non-positive
    /// coefficient is accepted for non-negative integer `r`.
    pub fn pow_real(self, r: T) -> Result<Self> {
        if r == T::zero() {
            return Ok(Monomial::unit());
        }
        let coeff = if self.coeff > T::zero() {
            self.coeff.powf(r)
        } else if r > T::zero() && r.fract() == T::zero() {
            let k = r.to_i32().ok_or(Error::NegativeBase {
                coeff: self.coeff.as_f64(),
                exponent: r.as_f64(),
            })?;
            self.coeff.powi(k)
        } else {
            return Err(Error::NegativeBase {
                coeff: self.coeff.as_f64(),
                exponent: r.as_f64(),
            });
        };
        Ok(Monomial::new(coeff, self.x_exp * r, self.t_exp * r))
    }
}

impl<T: Scalar> Mul for Monomial<T> {
    type Output = Monomial<T>;

    fn mul(self, rhs: Self) -> Self {
        Monomial::new(
            self.coeff * rhs.coeff,
            self.x_exp + rhs.x_exp,
            self.t_exp + rhs.t_exp,
        )
    }
}

/// Finite sum of monomials kept in normal form: like powers merged, exact
/// zeros dropped, terms sorted by `(x_exp, t_exp)` ascending. The empty sum
/// is zero.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct PowerSum<T> {
    terms: Vec<Monomial<T>>,
}

impl<T: Scalar> PowerSum<T> {
    pub fn zero() -> Self {
        PowerSum { terms: Vec::new() }
    }

    pub fn one() -> Self {
        PowerSum::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        PowerSum::from(Monomial::constant(c))
    }

    pub fn monomial(coeff: T, x_exp: T, t_exp: T) -> Self {
        PowerSum::from(Monomial::new(coeff, x_exp, t_exp))
    }

    /// Builds a normalized sum from arbitrary terms.
    pub fn from_terms<I: IntoIterator<Item = Monomial<T>>>(terms: I) -> Self {
        let mut merged: Vec<Monomial<T>> = Vec::new();
        for m in terms {
            if let Some(slot) = merged.iter_mut().find(|e| e.same_powers(&m)) {
                slot.coeff = slot.coeff + m.coeff;
            } else {
                merged.push(m);
            }
        }
        merged.retain(|m| !m.is_zero());
        merged.sort_by(|a, b| {
            a.x_exp
                .partial_cmp(&b.x_exp)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(
                    a.t_exp
                        .partial_cmp(&b.t_exp)
                        .unwrap_or(std::cmp::Ordering::Equal),
                )
        });
        PowerSum { terms: merged }
    }

    pub fn terms(&self) -> &[Monomial<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term of a one-term sum.
    pub fn as_monomial(&self) -> Option<Monomial<T>> {
        match self.terms.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// Coefficient of `x^x_exp t^t_exp`, zero when absent.
    pub fn coeff_of(&self, x_exp: T, t_exp: T) -> T {
        self.terms
            .iter()
            .find(|m| same_exponent(m.x_exp, x_exp) && same_exponent(m.t_exp, t_exp))
            .map_or(T::zero(), |m| m.coeff)
    }

    /// Sum of the terms with `t_exp = 0`, i.e. the value at `t = 0` of the
    /// part that stays bounded there.
    pub fn at_t_zero(&self) -> PowerSum<T> {
        PowerSum::from_terms(
            self.terms
                .iter()
                .copied()
                .filter(|m| same_exponent(m.t_exp, T::zero())),
        )
    }

    pub fn max_abs_coeff(&self) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, m| acc.max(m.coeff.abs()))
    }

    pub fn eval(&self, t: T, x: T) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, m| acc + m.eval(t, x))
    }

    pub fn scale(&self, k: T) -> Self {
        PowerSum::from_terms(self.terms.iter().map(|m| m.scale(k)))
    }

    pub fn map_terms<F>(&self, f: F) -> Result<Self>
    where
        F: FnMut(&Monomial<T>) -> Result<Option<Monomial<T>>>,
    {
        let mapped: Result<Vec<_>> = self.terms.iter().map(f).collect();
        Ok(PowerSum::from_terms(mapped?.into_iter().flatten()))
    }

    /// Repeated multiplication, `s^k`.
    pub fn pow_int(&self, k: u32) -> Self {
        let mut acc = PowerSum::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `max |coeff(self - other)| <= rel * max(1, max |coeff|)`
    pub fn approx_eq(&self, other: &Self, rel: T) -> bool {
        let diff = self - other;
        let scale = T::one()
            .max(self.max_abs_coeff())
            .max(other.max_abs_coeff());
        diff.max_abs_coeff() <= rel * scale
    }

    /// Coefficient-wise relative agreement: every term of `self - other` is
    /// small relative to the matching coefficients of the operands.
    pub fn termwise_close(&self, other: &Self, rel: T) -> bool {
        let diff = self - other;
        diff.terms.iter().all(|d| {
            let a = self.coeff_of(d.x_exp, d.t_exp).abs();
            let b = other.coeff_of(d.x_exp, d.t_exp).abs();
            d.coeff.abs() <= rel * a.max(b)
        })
    }
}

impl<T: Scalar> From<Monomial<T>> for PowerSum<T> {
    fn from(m: Monomial<T>) -> Self {
        PowerSum::from_terms([m])
    }
}

impl<T: Scalar> FromIterator<Monomial<T>> for PowerSum<T> {
    fn from_iter<I: IntoIterator<Item = Monomial<T>>>(iter: I) -> Self {
        PowerSum::from_terms(iter)
    }
}

impl<T: Scalar> Add for &PowerSum<T> {
    type Output = PowerSum<T>;

    fn add(self, rhs: &PowerSum<T>) -> PowerSum<T> {
        PowerSum::from_terms(self.terms.iter().chain(rhs.terms.iter()).copied())
    }
}

impl<T: Scalar> Sub for &PowerSum<T> {
    type Output = PowerSum<T>;

    fn sub(self, rhs: &PowerSum<T>) -> PowerSum<T> {
        PowerSum::from_terms(
            self.terms
                .iter()
                .copied()
                .chain(rhs.terms.iter().map(|m| m.scale(-T::one()))),
        )
    }
}

impl<T: Scalar> Mul for &PowerSum<T> {
    type Output = PowerSum<T>;

    fn mul(self, rhs: &PowerSum<T>) -> PowerSum<T> {
        PowerSum::from_terms(
            self.terms
                .iter()
                .flat_map(|a| rhs.terms.iter().map(move |b| *a * *b)),
        )
    }
}

impl<T: Scalar> Neg for &PowerSum<T> {
    type Output = PowerSum<T>;

    fn neg(self) -> PowerSum<T> {
        self.scale(-T::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for PowerSum<T> {
            type Output = PowerSum<T>;

            fn $m(self, rhs: PowerSum<T>) -> PowerSum<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for PowerSum<T> {
    type Output = PowerSum<T>;

    fn neg(self) -> PowerSum<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = PowerSum<f64>;

    fn mono(c: f64, a: f64, b: f64) -> P {
        P::monomial(c, a, b)
    }

    #[test]
    fn add_examples() {
        assert!((mono(1.0, 2.0, 1.0) + mono(-1.0, 2.0, 1.0)).is_zero());
        assert_eq!(
            mono(2.0, 0.5, 0.0) + mono(3.0, 0.5, 0.0),
            mono(5.0, 0.5, 0.0)
        );
        let s = mono(1.0, 1.0, 0.0) + mono(1.0, 0.0, 1.0);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn merge_uses_exponent_tolerance() {
        let s = mono(1.0, 0.5, 0.0) + mono(1.0, 0.5 + 1e-13, 0.0);
        assert_eq!(s.len(), 1);
        let s = mono(1.0, 0.5, 0.0) + mono(1.0, 0.5 + 1e-10, 0.0);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn mul_examples() {
        let a = mono(2.0, 0.5, -0.25);
        let b = mono(3.0, 1.5, 2.0);
        assert_eq!(&a * &b, mono(6.0, 2.0, 1.75));
        assert!((&a * &P::zero()).is_zero());
        let x = mono(1.0, 1.0, 0.0);
        let t = mono(1.0, 0.0, 1.0);
        let got = (&x + &t) * (&x - &t);
        assert_eq!(got, mono(1.0, 2.0, 0.0) - mono(1.0, 0.0, 2.0));
    }

    #[test]
    fn pow_real_examples() {
        let m = Monomial::new(4.0, 2.0, 0.0).pow_real(0.5).unwrap();
        assert_eq!(m, Monomial::new(2.0, 1.0, 0.0));
        assert_eq!(
            Monomial::new(7.0, 1.3, -2.0).pow_real(0.0).unwrap(),
            Monomial::unit()
        );
        let (p, alpha, c) = (2.0, 0.5, 3.0);
        let u = Monomial::new(c, 2.0 / p, -alpha / p).pow_real(p).unwrap();
        assert_eq!(u, Monomial::new(9.0, 2.0, -0.5));
        assert!(matches!(
            Monomial::new(-2.0, 1.0, 0.0).pow_real(0.5),
            Err(Error::NegativeBase { .. })
        ));
        assert_eq!(
            Monomial::new(-2.0, 1.0, 0.0).pow_real(3.0).unwrap().coeff,
            -8.0
        );
    }

    #[test]
    fn pow_int_examples() {
        let x = mono(1.0, 1.0, 0.0);
        let t = mono(1.0, 0.0, 1.0);
        let sq = (&x + &t).pow_int(2);
        assert_eq!(
            sq,
            mono(1.0, 2.0, 0.0) + mono(2.0, 1.0, 1.0) + mono(1.0, 0.0, 2.0)
        );
        assert_eq!(sq.pow_int(0), P::one());
        assert!(P::zero().pow_int(3).is_zero());
    }

    #[test]
    fn normal_form_is_sorted_and_zero_free() {
        let s = P::from_terms([
            Monomial::new(1.0, 2.0, 0.0),
            Monomial::new(0.0, 5.0, 5.0),
            Monomial::new(1.0, -1.0, 3.0),
            Monomial::new(1.0, -1.0, 1.0),
        ]);
        let exps: Vec<_> = s.terms().iter().map(|m| (m.x_exp, m.t_exp)).collect();
        assert_eq!(exps, vec![(-1.0, 1.0), (-1.0, 3.0), (2.0, 0.0)]);
    }

    fn quarter() -> impl Strategy<Value = f64> {
        (-8i32..=12).prop_map(|k| k as f64 * 0.25)
    }

    fn sum_strategy() -> impl Strategy<Value = P> {
        prop::collection::vec((-5.0f64..5.0, quarter(), quarter()), 0..4)
            .prop_map(|v| P::from_terms(v.into_iter().map(|(c, a, b)| Monomial::new(c, a, b))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in sum_strategy(), b in sum_strategy(), c in sum_strategy()) {
            let tol = 1e-12;
            prop_assert!((&a + &b).approx_eq(&(&b + &a), tol));
            prop_assert!((&a * &b).approx_eq(&(&b * &a), tol));
            prop_assert!((&(&a + &b) + &c).approx_eq(&(&a + &(&b + &c)), tol));
            prop_assert!((&(&a * &b) * &c).approx_eq(&(&a * &(&b * &c)), tol));
            prop_assert!((&a * &(&b + &c)).approx_eq(&(&(&a * &b) + &(&a * &c)), tol));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in sum_strategy(), b in sum_strategy(),
                                       t in 0.5f64..2.0, x in 0.5f64..2.0) {
            let lhs = (&a * &b).eval(t, x);
            let rhs = a.eval(t, x) * b.eval(t, x);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
        }
    }
}
