//! Grid-based fractional operators on uniformly sampled functions.
//!
//! - [`l1_caputo`]: L1 scheme for the Caputo derivative, order `2 - α` for
//!   smooth data.
//! - [`rl_integral_num`]: product-trapezoid Riemann–Liouville integral; the
//!   kernel is integrated exactly against the piecewise-linear interpolant.
//! - [`rl_derivative_num`]: L1 Caputo plus the `f(0) t^(-α)/Γ(1-α)`
//!   correction.
//!
//! [`leibniz_partial_sum`] evaluates the generalized Leibniz series for a
//! pair of power functions exactly, through the power-law algebra.

use std::io::{Read, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::FracOrder;
use crate::powerlaw::{d_dt, format_coeff, frac_int, rl_dt, Monomial, PowerSum};
use crate::scalar::Scalar;
use crate::special::{binomial_paper, gamma};

/// Relative tolerance on step-size variation for a grid to count as uniform.
pub const UNIFORM_GRID_TOL: f64 = 1e-12;

/// Samples `values[i] = f(t_nodes[i])` on a grid starting at `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct SampledFunction<T> {
    t_nodes: Vec<T>,
    values: Vec<T>,
}

impl<T: Scalar> SampledFunction<T> {
    pub fn new(t_nodes: Vec<T>, values: Vec<T>) -> Result<Self> {
        if t_nodes.len() < 2 || t_nodes.len() != values.len() {
            return Err(Error::Config(format!(
                "need at least two nodes with matching values (got {} nodes, {} values)",
                t_nodes.len(),
                values.len()
            )));
        }
        if t_nodes[0] != T::zero() {
            return Err(Error::Config("time grid must start at t = 0".into()));
        }
        if t_nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config(
                "time grid must be strictly increasing".into(),
            ));
        }
        Ok(SampledFunction { t_nodes, values })
    }

    /// Uniform grid `t_k = k · t_final / n_steps`, `k = 0..=n_steps`.
    pub fn uniform(n_steps: usize, t_final: T, f: impl Fn(T) -> T) -> Result<Self> {
        if n_steps == 0 || !(t_final > T::zero()) {
            return Err(Error::Config("need n_steps >= 1 and t_final > 0".into()));
        }
        let tau = t_final / T::from_usize_lossy(n_steps);
        let t: Vec<T> = (0..=n_steps)
            .map(|k| T::from_usize_lossy(k) * tau)
            .collect();
        let v = t.iter().map(|&s| f(s)).collect();
        SampledFunction::new(t, v)
    }

    /// Samples a power sum in `t` (at `x = 1`).
    pub fn from_power_sum(n_steps: usize, t_final: T, s: &PowerSum<T>) -> Result<Self> {
        SampledFunction::uniform(n_steps, t_final, |t| s.eval(t, T::one()))
    }

    pub fn t_nodes(&self) -> &[T] {
        &self.t_nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> (T, T) {
        let n = self.len() - 1;
        (self.t_nodes[n], self.values[n])
    }

    /// The common step size, or `NonUniformGridError`.
    pub fn uniform_step(&self) -> Result<T> {
        let n = T::from_usize_lossy(self.len() - 1);
        let tau = self.t_nodes[self.len() - 1] / n;
        let tol = T::lit(UNIFORM_GRID_TOL) * tau;
        for (k, w) in self.t_nodes.windows(2).enumerate() {
            if ((w[1] - w[0]) - tau).abs() > tol {
                return Err(Error::NonUniformGrid(format!(
                    "step {k} is {} but the mean step is {}",
                    (w[1] - w[0]).as_f64(),
                    tau.as_f64()
                )));
            }
        }
        Ok(tau)
    }

    fn with_values(&self, values: Vec<T>) -> Self {
        SampledFunction {
            t_nodes: self.t_nodes.clone(),
            values,
        }
    }

    /// Two-column CSV `t,value` with a header line.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["t", "value"])?;
        for (t, v) in self.t_nodes.iter().zip(&self.values) {
            wr.write_record([format_coeff(t.as_f64()), format_coeff(v.as_f64())])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let headers = rd.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
            return Err(Error::Parse(format!(
                "expected header t,value, found {headers:?}"
            )));
        }
        let (mut t, mut v) = (Vec::new(), Vec::new());
        for rec in rd.records() {
            let rec = rec?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            };
            t.push(T::lit(parse(&rec[0])?));
            v.push(T::lit(parse(&rec[1])?));
        }
        SampledFunction::new(t, v)
    }
}

/// L1 weights `b_j = (j+1)^(1-α) - j^(1-α)`, `j = 0..n_steps`.
pub fn l1_weights<T: Scalar>(alpha: FracOrder<T>, n_steps: usize) -> Result<Vec<T>> {
    if alpha.is_integer() {
        return Err(Error::InvalidOrder(1.0));
    }
    let e = T::one() - alpha.value();
    let mut prev = T::zero();
    Ok((0..n_steps)
        .map(|j| {
            let next = T::from_usize_lossy(j + 1).powf(e);
            let b = next - prev;
            prev = next;
            b
        })
        .collect())
}

/// `1/(Γ(2-α) τ^α)`, the L1 scaling factor.
pub(crate) fn l1_scale<T: Scalar>(alpha: FracOrder<T>, tau: T) -> Result<T> {
    let a = alpha.value();
    Ok(T::one() / (gamma(T::lit(2.0) - a)? * tau.powf(a)))
}

/// L1 approximation of the Caputo derivative at every node; node 0 is 0.
pub fn l1_caputo<T: Scalar>(
    f: &SampledFunction<T>,
    alpha: FracOrder<T>,
) -> Result<SampledFunction<T>> {
    let tau = f.uniform_step()?;
    let n = f.len() - 1;
    let b = l1_weights(alpha, n)?;
    let scale = l1_scale(alpha, tau)?;
    let diffs: Vec<T> = f.values.windows(2).map(|w| w[1] - w[0]).collect();
    let mut out = vec![T::zero(); n + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        // Σ_j b_j (f_{k-j} - f_{k-j-1})
        let acc = (0..k).fold(T::zero(), |acc, j| acc + b[j] * diffs[k - j - 1]);
        *slot = scale * acc;
    }
    Ok(f.with_values(out))
}

/// Product-trapezoid approximation of `I^order f`; node 0 is 0.
pub fn rl_integral_num<T: Scalar>(f: &SampledFunction<T>, order: T) -> Result<SampledFunction<T>> {
    if !(order > T::zero()) {
        return Err(Error::InvalidOrder(order.as_f64()));
    }
    let tau = f.uniform_step()?;
    let n = f.len() - 1;
    let a1 = order + T::one();
    // k^(α+1) for k = 0..=n
    let pw: Vec<T> = (0..=n).map(|k| T::from_usize_lossy(k).powf(a1)).collect();
    let scale = tau.powf(order) / gamma(order + T::lit(2.0))?;
    let mut out = vec![T::zero(); n + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let kf = T::from_usize_lossy(k);
        let w0 = pw[k - 1] - (kf - order - T::one()) * kf.powf(order);
        let mut acc = w0 * f.values[0] + f.values[k];
        for j in 1..k {
            let m = k - j;
            acc = acc + (pw[m + 1] - T::lit(2.0) * pw[m] + pw[m - 1]) * f.values[j];
        }
        *slot = scale * acc;
    }
    Ok(f.with_values(out))
}

/// Riemann–Liouville derivative from the Caputo relation,
/// `D^α f = ᶜD^α f + f(0) t^(-α)/Γ(1-α)` for `0 < α < 1`.
pub fn rl_derivative_num<T: Scalar>(
    f: &SampledFunction<T>,
    alpha: FracOrder<T>,
    f0: T,
) -> Result<SampledFunction<T>> {
    let mut out = l1_caputo(f, alpha)?;
    if f0 != T::zero() {
        let a = alpha.value();
        let g = gamma(T::one() - a)?;
        for (t, v) in out.t_nodes.iter().zip(out.values.iter_mut()).skip(1) {
            *v = *v + f0 * t.powf(-a) / g;
        }
    }
    Ok(out)
}

/// First `n_terms` terms of the generalized Leibniz series for
/// `D^α (t^a_exp · t^b_exp)`:
///
/// `Σ_n (α n) I^(n-α) f · dⁿg/dtⁿ`, where the `n = 0` term is the
/// Riemann–Liouville derivative `D^α f` and `I^0` is the identity.
///
/// The result is exact in the algebra; evaluate it with [`PowerSum::eval`].
pub fn leibniz_partial_sum<T: Scalar>(
    a_exp: T,
    b_exp: T,
    alpha: FracOrder<T>,
    n_terms: usize,
) -> Result<PowerSum<T>> {
    if a_exp <= -T::one() {
        return Err(Error::Divergent {
            t_exp: a_exp.as_f64(),
        });
    }
    if b_exp < T::zero() {
        return Err(Error::Config(format!(
            "g exponent must be non-negative, got {}",
            b_exp.as_f64()
        )));
    }
    let f = PowerSum::from(Monomial::new(T::one(), T::zero(), a_exp));
    let mut g_deriv = PowerSum::from(Monomial::new(T::one(), T::zero(), b_exp));
    let a = alpha.value();
    let mut total = PowerSum::zero();
    for n in 0..n_terms {
        if n > 0 {
            g_deriv = d_dt(&g_deriv);
        }
        if g_deriv.is_zero() {
            break;
        }
        let binom = binomial_paper(a, n)?;
        if binom == T::zero() {
            continue;
        }
        let order = T::from_usize_lossy(n) - a;
        let f_part = if n == 0 {
            rl_dt(&f, alpha)?
        } else if order == T::zero() {
            f.clone()
        } else {
            frac_int(&f, order)?
        };
        total = &total + &(&f_part * &g_deriv).scale(binom);
    }
    Ok(total)
}

/// One row of a Leibniz truncation study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeibnizTruncation {
    pub n_terms: usize,
    pub partial_sum: f64,
    pub abs_error: f64,
}

/// Partial sums at `t` for `n = 1..=n_terms` against the closed form
/// `D^α t^(a+b)`. Returns the closed-form value and the rows.
pub fn leibniz_study<T: Scalar>(
    a_exp: T,
    b_exp: T,
    alpha: FracOrder<T>,
    n_terms: usize,
    t: T,
) -> Result<(T, Vec<LeibnizTruncation>)> {
    let closed = rl_dt(
        &PowerSum::from(Monomial::new(T::one(), T::zero(), a_exp + b_exp)),
        alpha,
    )?
    .eval(t, T::one());
    let rows = (1..=n_terms)
        .map(|n| {
            let s = leibniz_partial_sum(a_exp, b_exp, alpha, n)?.eval(t, T::one());
            Ok(LeibnizTruncation {
                n_terms: n,
                partial_sum: s.as_f64(),
                abs_error: (s - closed).abs().as_f64(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((closed, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powerlaw::{caputo_dt, CaputoMode};

    fn fo(a: f64) -> FracOrder<f64> {
        FracOrder::new(a).unwrap()
    }

    fn t_pow(b: f64) -> PowerSum<f64> {
        PowerSum::monomial(1.0, 0.0, b)
    }

    fn caputo_at_one(b: f64, alpha: f64) -> f64 {
        caputo_dt(&t_pow(b), fo(alpha), CaputoMode::Strict)
            .unwrap()
            .eval(1.0, 1.0)
    }

    #[test]
    fn weights_examples() {
        let w = l1_weights(fo(0.5), 8).unwrap();
        assert_eq!(w[0], 1.0);
        assert!((w[1] - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        let sum: f64 = w.iter().sum();
        assert!((sum - 8f64.powf(0.5)).abs() < 1e-13);
        assert!(l1_weights(fo(1.0), 4).is_err());
    }

    #[test]
    fn weights_positive_and_strictly_decreasing() {
        for &a in &[0.1, 0.25, 0.5, 0.75, 0.9] {
            let w = l1_weights(fo(a), 2000).unwrap();
            assert!(w.iter().all(|&b| b > 0.0));
            assert!(w.windows(2).all(|p| p[1] < p[0]), "alpha {a}");
        }
    }

    #[test]
    fn l1_examples() {
        let c = SampledFunction::uniform(64, 1.0, |_| 3.0).unwrap();
        assert!(l1_caputo(&c, fo(0.5))
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));
        let f = SampledFunction::uniform(1024, 1.0, |t| t).unwrap();
        let got = l1_caputo(&f, fo(0.5)).unwrap().last().1;
        assert!((got - 1.128_379_167_095_512_6).abs() < 2e-3);
    }

    #[test]
    fn l1_on_t_squared_matches_independent_values() {
        // 30-digit evaluation of the same L1 sum.
        let want = [
            (256, 1.504_392_452_612_439_6),
            (512, 1.504_465_419_416_98),
            (1024, 1.504_491_328_512_500_2),
        ];
        for (n, w) in want {
            let f = SampledFunction::uniform(n, 1.0, |t| t * t).unwrap();
            let got = l1_caputo(&f, fo(0.5)).unwrap().last().1;
            assert!((got - w).abs() < 1e-12, "n = {n}: {got}");
        }
    }

    #[test]
    fn l1_order_on_t_squared() {
        for &a in &[0.25, 0.5, 0.75] {
            let exact = caputo_at_one(2.0, a);
            let err = |n: usize| {
                let f = SampledFunction::uniform(n, 1.0, |t| t * t).unwrap();
                (l1_caputo(&f, fo(a)).unwrap().last().1 - exact).abs()
            };
            let (e1, e2, e3) = (err(256), err(512), err(1024));
            for order in [(e1 / e2).log2(), (e2 / e3).log2()] {
                assert!((order - (2.0 - a)).abs() <= 0.3, "alpha {a}: order {order}");
            }
        }
    }

    #[test]
    fn l1_agrees_with_power_rule() {
        for &a in &[0.25, 0.5, 0.75] {
            for &b in &[0.0, 0.5, 1.0, 2.0] {
                let f = SampledFunction::uniform(
                    1024,
                    1.0,
                    |t: f64| if b == 0.0 { 1.0 } else { t.powf(b) },
                )
                .unwrap();
                let got = l1_caputo(&f, fo(a)).unwrap().last().1;
                let tol = if b == 0.5 { 5e-2 } else { 5e-3 };
                assert!((got - caputo_at_one(b, a)).abs() <= tol, "alpha {a} b {b}");
            }
        }
    }

    #[test]
    fn non_uniform_grid_is_rejected() {
        let f = SampledFunction::new(vec![0.0, 0.1, 0.3], vec![0.0, 1.0, 2.0]).unwrap();
        assert!(matches!(
            l1_caputo(&f, fo(0.5)),
            Err(Error::NonUniformGrid(_))
        ));
        assert!(matches!(
            rl_integral_num(&f, 0.5),
            Err(Error::NonUniformGrid(_))
        ));
        assert!(SampledFunction::new(vec![0.1, 0.2], vec![0.0, 1.0]).is_err());
        assert!(SampledFunction::new(vec![0.0], vec![0.0]).is_err());
    }

    #[test]
    fn rl_integral_examples() {
        let one = SampledFunction::<f64>::uniform(100, 2.0, |_| 1.0).unwrap();
        let got = rl_integral_num(&one, 1.0).unwrap();
        for (t, v) in got.t_nodes().iter().zip(got.values()) {
            assert!((t - v).abs() < 1e-13);
        }
        let f = SampledFunction::uniform(1024, 1.0, |t: f64| t).unwrap();
        let got = rl_integral_num(&f, 0.5).unwrap().last().1;
        assert!((got - 0.752_252_778_063_675).abs() < 1e-4);
        let z = SampledFunction::uniform(16, 1.0, |_| 0.0).unwrap();
        assert!(rl_integral_num(&z, 0.7)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn rl_integral_semigroup_numerically() {
        let f = SampledFunction::uniform(1024, 1.0, |t: f64| t * t + 1.0).unwrap();
        for &(a, b) in &[(0.25, 0.5), (0.5, 0.75), (0.75, 0.25)] {
            let twice = rl_integral_num(&rl_integral_num(&f, a).unwrap(), b)
                .unwrap()
                .last()
                .1;
            let once = rl_integral_num(&f, a + b).unwrap().last().1;
            assert!((twice - once).abs() < 5e-3);
        }
    }

    #[test]
    fn caputo_as_integral_of_derivative() {
        for &a in &[0.25, 0.5, 0.75] {
            let f = SampledFunction::uniform(1024, 1.0, |t: f64| t * t * t + t).unwrap();
            let df = SampledFunction::uniform(1024, 1.0, |t: f64| 3.0 * t * t + 1.0).unwrap();
            let lhs = l1_caputo(&f, fo(a)).unwrap().last().1;
            let rhs = rl_integral_num(&df, 1.0 - a).unwrap().last().1;
            assert!((lhs - rhs).abs() < 5e-3, "alpha {a}");
        }
    }

    #[test]
    fn rl_derivative_examples() {
        let f = SampledFunction::uniform(1024, 1.0, |t| 1.0 + t).unwrap();
        let got = rl_derivative_num(&f, fo(0.5), 1.0).unwrap().last().1;
        assert!((got - 1.692_568_750_643_268_9).abs() < 2e-3);

        let g = SampledFunction::uniform(64, 1.0, |t: f64| t.powi(2)).unwrap();
        assert_eq!(
            rl_derivative_num(&g, fo(0.4), 0.0).unwrap(),
            l1_caputo(&g, fo(0.4)).unwrap()
        );

        let c = SampledFunction::uniform(64, 2.0, |_| 2.5).unwrap();
        let got = rl_derivative_num(&c, fo(0.3), 2.5).unwrap();
        let want = rl_dt(&PowerSum::constant(2.5), fo(0.3)).unwrap();
        for (t, v) in got.t_nodes().iter().zip(got.values()).skip(1) {
            assert!((v - want.eval(*t, 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn rl_derivative_is_derivative_of_integral_numerically() {
        for &a in &[0.25, 0.5, 0.75] {
            let f = SampledFunction::uniform(1024, 1.0, |t: f64| t * t + 0.5).unwrap();
            let tau = f.uniform_step().unwrap();
            let big = rl_integral_num(&f, 1.0 - a).unwrap();
            let v = big.values();
            let n = v.len() - 1;
            let deriv = (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * tau);
            let want = rl_dt(&(&t_pow(2.0) + &PowerSum::constant(0.5)), fo(a))
                .unwrap()
                .eval(1.0, 1.0);
            assert!((deriv - want).abs() < 5e-3, "alpha {a}: {deriv} vs {want}");
        }
    }

    #[test]
    fn leibniz_examples() {
        let s = leibniz_partial_sum(1.0, 1.0, fo(0.5), 3)
            .unwrap()
            .eval(1.0, 1.0);
        assert!((s - 1.504_505_556_127_350_1).abs() < 1e-13);
        let s = leibniz_partial_sum(0.7, 0.0, fo(0.5), 1).unwrap();
        assert!(s.approx_eq(&rl_dt(&t_pow(0.7), fo(0.5)).unwrap(), 1e-14));
        let s = leibniz_partial_sum(0.0, 1.0, fo(0.5), 2)
            .unwrap()
            .eval(1.0, 1.0);
        let want = rl_dt(&t_pow(1.0), fo(0.5)).unwrap().eval(1.0, 1.0);
        assert!((s - want).abs() < 1e-13);
    }

    #[test]
    fn leibniz_integer_order_is_the_product_rule() {
        // α = 1: f' g + f g', the n >= 2 binomials vanish
        let s = leibniz_partial_sum(1.5, 2.0, fo(1.0), 6).unwrap();
        assert!(s.approx_eq(&PowerSum::monomial(3.5, 0.0, 2.5), 1e-14));
    }

    #[test]
    fn leibniz_finite_series_is_exact() {
        for &a in &[0.5, 1.0, 2.0] {
            for &b in &[0.0f64, 1.0, 2.0] {
                for &al in &[0.25, 0.5, 0.75] {
                    let s = leibniz_partial_sum(a, b, fo(al), b as usize + 1)
                        .unwrap()
                        .eval(1.0, 1.0);
                    let want = rl_dt(&t_pow(a + b), fo(al)).unwrap().eval(1.0, 1.0);
                    assert!((s - want).abs() <= 1e-10 * want.abs());
                }
            }
        }
    }

    #[test]
    fn leibniz_study_rows() {
        let (closed, rows) = leibniz_study(1.0, 1.0, fo(0.5), 4, 1.0).unwrap();
        assert!((closed - 1.504_505_556_127_35).abs() < 1e-13);
        assert_eq!(rows.len(), 4);
        assert!(rows[0].abs_error > 1e-3);
        assert!(rows[2].abs_error <= 1e-10);
    }

    #[test]
    fn csv_round_trip() {
        let f = SampledFunction::uniform(5, 1.0, |t: f64| t.sqrt() / 3.0).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(
            text.starts_with("t,value\n0,0\n0.2,0.149071198499986\n"),
            "{text}"
        );
        let back = SampledFunction::<f64>::read_csv(buf.as_slice()).unwrap();
        for (a, b) in back.values().iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
