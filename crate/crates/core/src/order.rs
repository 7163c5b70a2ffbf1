use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Fractional order α with 0 < α ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64", bound = "T: Scalar")]
pub struct FracOrder<T>(T);

impl<T: Scalar> FracOrder<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if alpha > T::zero() && alpha <= T::one() {
            Ok(FracOrder(alpha))
        } else {
            Err(Error::InvalidOrder(alpha.as_f64()))
        }
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// True when α = 1, the ordinary first derivative.
    #[inline]
    pub fn is_integer(self) -> bool {
        self.0 == T::one()
    }

    /// The complementary order 1 - α, absent when α = 1.
    pub fn complement(self) -> Option<Self> {
        let c = T::one() - self.0;
        (c > T::zero()).then_some(FracOrder(c))
    }
}

impl<T: Scalar> TryFrom<f64> for FracOrder<T> {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        FracOrder::new(T::lit(v))
    }
}

impl<T: Scalar> From<FracOrder<T>> for f64 {
    fn from(a: FracOrder<T>) -> f64 {
        a.0.as_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_is_half_open() {
        assert!(FracOrder::new(0.0_f64).is_err());
        assert!(FracOrder::new(1.2_f64).is_err());
        assert!(FracOrder::new(f64::NAN).is_err());
        assert!(FracOrder::new(1.0_f64).unwrap().is_integer());
        assert_eq!(FracOrder::new(1.0_f64).unwrap().complement(), None);
        assert_eq!(
            FracOrder::new(0.25_f64)
                .unwrap()
                .complement()
                .unwrap()
                .value(),
            0.75
        );
    }
}
