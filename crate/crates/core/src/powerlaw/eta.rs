use serde::Serialize;

use super::PowerSum;
use crate::scalar::Scalar;

/// A polynomial in `u` with power-law coefficients,
/// `η(t, x, u) = Σ_k coefficient_k(t, x) · u^k`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct EtaForm<T> {
    terms: Vec<(u32, PowerSum<T>)>,
}

impl<T: Scalar> EtaForm<T> {
    pub fn zero() -> Self {
        EtaForm { terms: Vec::new() }
    }

    /// Normalizes: merges equal degrees, drops zero coefficients, sorts by
    /// degree.
    pub fn new<I: IntoIterator<Item = (u32, PowerSum<T>)>>(terms: I) -> Self {
        let mut out: Vec<(u32, PowerSum<T>)> = Vec::new();
        for (k, c) in terms {
            match out.iter_mut().find(|(d, _)| *d == k) {
                Some((_, acc)) => *acc = &*acc + &c,
                None => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out.sort_by_key(|(k, _)| *k);
        EtaForm { terms: out }
    }

    /// `A u + B`
    pub fn linear(a: PowerSum<T>, b: PowerSum<T>) -> Self {
        EtaForm::new([(1, a), (0, b)])
    }

    pub fn terms(&self) -> &[(u32, PowerSum<T>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(k, _)| *k)
    }

    pub fn coefficient(&self, degree: u32) -> PowerSum<T> {
        self.terms
            .iter()
            .find(|(k, _)| *k == degree)
            .map_or_else(PowerSum::zero, |(_, c)| c.clone())
    }

    /// Second derivative in `u`.
    pub fn d_uu(&self) -> Self {
        EtaForm::new(self.terms.iter().filter(|(k, _)| *k >= 2).map(|(k, c)| {
            (
                k - 2,
                c.scale(T::from_u32(k * (k - 1)).expect("small degree")),
            )
        }))
    }
}
