//! L1 finite-difference solver for `ᶜD^α u = (u^p u_x)_x + f` on a
//! rectangle with Dirichlet data at both ends.
//!
//! Each step solves for the increment `δ = u^n - u^(n-1)`:
//!
//! ```text
//! s δ - L(a) δ = L(a) u^(n-1) + f^n - s Σ_{j≥1} b_j (u^(n-j) - u^(n-j-1))
//! ```
//!
//! with `s = 1/(Γ(2-α) τ^α)`, L1 weights `b_j`, and `L(a)` the centred flux
//! difference with face coefficients `(a_i + a_(i+1))/2`, `a = w^p`. The
//! coefficient base `w` is `u^(n-1)` (semi-implicit lag); optional corrector
//! sweeps re-evaluate it at the latest iterate of `u^n`, which removes the
//! first-order lag error. Constants give `L(a)u = 0` and zero history, so they
//! are reproduced exactly.
//!
//! The memory sum is evaluated in full, `O(nt² nx)` work per solve.

mod config;
mod convergence;
mod output;
mod tridiag;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::order::FracOrder;
use crate::powerlaw::{caputo_dt, d_dx, CaputoMode, PowerSum};
use crate::scalar::Scalar;
use crate::solutions::{solve_constant_p, SimilaritySolution};
use crate::special::gamma;

pub use config::{ConfigFile, ModeName};
pub use convergence::{convergence_study, ConvergenceRow};
pub use output::{write_convergence_csv, write_field_csv};
pub use tridiag::solve_tridiagonal;

/// `ᶜD^α u* - (u*^p u*_x)_x`, the source that makes `u*` an exact solution.
pub fn mms_source<T: Scalar>(
    u_star: &PowerSum<T>,
    p: u32,
    alpha: FracOrder<T>,
) -> Result<PowerSum<T>> {
    let lhs = caputo_dt(u_star, alpha, CaputoMode::Strict)?;
    let flux = &u_star.pow_int(p) * &d_dx(u_star);
    Ok(&lhs - &d_dx(&flux))
}

type Fn1<T> = Arc<dyn Fn(T) -> T + Send + Sync>;
type Fn2<T> = Arc<dyn Fn(T, T) -> T + Send + Sync>;

/// Problem data given as closures.
#[derive(Clone)]
pub struct CustomProblem<T> {
    /// `u(0, x)`
    pub initial: Fn1<T>,
    /// `u(t, x_lo)`
    pub left: Fn1<T>,
    /// `u(t, x_hi)`
    pub right: Fn1<T>,
    /// `f(t, x)`
    pub source: Fn2<T>,
    /// Exact solution `u(t, x)`, when known.
    pub reference: Option<Fn2<T>>,
}

impl<T> fmt::Debug for CustomProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomProblem")
            .field("reference", &self.reference.is_some())
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum Problem<T> {
    /// Manufactured solution `u*` with its exact source.
    Mms {
        u_star: PowerSum<T>,
        source: PowerSum<T>,
    },
    /// Certified power-law solution; Dirichlet data sampled from it.
    ExactSimilarity {
        solution: SimilaritySolution<T>,
    },
    Custom(CustomProblem<T>),
}

impl<T: Scalar> Problem<T> {
    pub fn mms(u_star: PowerSum<T>, p: T, alpha: FracOrder<T>) -> Result<Self> {
        let source = mms_source(&u_star, integer_exponent(p)?, alpha)?;
        Ok(Problem::Mms { u_star, source })
    }

    pub fn exact_similarity(p: T, alpha: FracOrder<T>) -> Result<Self> {
        Ok(Problem::ExactSimilarity {
            solution: solve_constant_p(p, alpha)?,
        })
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            Problem::Mms { .. } => "mms",
            Problem::ExactSimilarity { .. } => "exact_similarity",
            Problem::Custom(_) => "custom",
        }
    }

    fn initial(&self, x: T) -> T {
        match self {
            Problem::Mms { u_star, .. } => u_star.at_t_zero().eval(T::one(), x),
            Problem::ExactSimilarity { solution } => {
                if solution.t_exp > T::zero() {
                    T::zero()
                } else {
                    solution.eval(T::one(), x)
                }
            }
            Problem::Custom(c) => (c.initial)(x),
        }
    }

    fn boundary(&self, t: T, x: T, left: bool) -> T {
        match self {
            Problem::Mms { u_star, .. } => u_star.eval(t, x),
            Problem::ExactSimilarity { solution } => solution.eval(t, x),
            Problem::Custom(c) => {
                if left {
                    (c.left)(t)
                } else {
                    (c.right)(t)
                }
            }
        }
    }

    fn source(&self, t: T, x: T) -> T {
        match self {
            Problem::Mms { source, .. } => source.eval(t, x),
            Problem::ExactSimilarity { .. } => T::zero(),
            Problem::Custom(c) => (c.source)(t, x),
        }
    }

    fn reference(&self, t: T, x: T) -> Option<T> {
        match self {
            Problem::Mms { u_star, .. } => Some(u_star.eval(t, x)),
            Problem::ExactSimilarity { solution } => Some(if t == T::zero() {
                self.initial(x)
            } else {
                solution.eval(t, x)
            }),
            Problem::Custom(c) => c.reference.as_ref().map(|r| r(t, x)),
        }
    }

    pub fn has_reference(&self) -> bool {
        !matches!(
            self,
            Problem::Custom(CustomProblem {
                reference: None,
                ..
            })
        )
    }
}

fn integer_exponent<T: Scalar>(p: T) -> Result<u32> {
    if p >= T::one() && p.fract() == T::zero() && p <= T::lit(f64::from(u32::MAX)) {
        Ok(p.to_u32().expect("checked range"))
    } else {
        Err(Error::Config(format!(
            "mms mode needs a positive integer p, got {}",
            p.as_f64()
        )))
    }
}

/// Default number of coefficient re-evaluations per step.
pub const DEFAULT_CORRECTOR_SWEEPS: usize = 0;

/// Time level the nonlinear coefficient `|u|^p` is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientLag {
    /// `u^(n-1)`: first order in τ.
    Previous,
    /// `2u^(n-1) - u^(n-2)`, second order in τ; `u^0` on the first step.
    #[default]
    Extrapolated,
}

#[derive(Debug, Clone)]
pub struct SolverConfig<T> {
    pub alpha: FracOrder<T>,
    pub p: T,
    pub x_lo: T,
    pub x_hi: T,
    pub t_final: T,
    /// Number of spatial intervals.
    pub nx: usize,
    /// Number of time steps.
    pub nt: usize,
    pub lag: CoefficientLag,
    /// Extra solves per step, each with `a` re-evaluated at the latest
    /// iterate of `u^n` (Picard). `0` keeps one linear solve per step.
    pub corrector_sweeps: usize,
    pub problem: Problem<T>,
}

impl<T: Scalar> SolverConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        if self.p == T::zero() {
            return cfg("p = 0 (linear problem) is not supported".into());
        }
        if !self.p.is_finite() {
            return cfg("p must be finite".into());
        }
        if !(self.x_lo < self.x_hi) {
            return cfg(format!(
                "x_lo ({}) must be below x_hi ({})",
                self.x_lo.as_f64(),
                self.x_hi.as_f64()
            ));
        }
        if !(self.t_final > T::zero()) || !self.t_final.is_finite() {
            return cfg("t_final must be positive".into());
        }
        if self.nx < 3 {
            return cfg(format!("nx = {} < 3", self.nx));
        }
        if self.nt < 2 {
            return cfg(format!("nt = {} < 2", self.nt));
        }
        match &self.problem {
            Problem::Mms { .. } => {
                integer_exponent(self.p)?;
            }
            Problem::ExactSimilarity { solution } => {
                if solution.equation != (Equation::Diffusion { p: self.p }) {
                    return cfg("similarity solution was built for a different p".into());
                }
                if solution.x_exp < T::zero() && !(self.x_lo > T::zero()) {
                    return cfg("solution blows up at x = 0; need x_lo > 0".into());
                }
                if solution.t_exp < T::zero() {
                    return cfg("solution blows up at t = 0; no finite initial data".into());
                }
            }
            Problem::Custom(_) => {}
        }
        Ok(())
    }

    pub fn dx(&self) -> T {
        (self.x_hi - self.x_lo) / T::from_usize_lossy(self.nx)
    }

    pub fn dt(&self) -> T {
        self.t_final / T::from_usize_lossy(self.nt)
    }

    pub fn x_nodes(&self) -> Vec<T> {
        let h = self.dx();
        (0..=self.nx)
            .map(|i| {
                if i == self.nx {
                    self.x_hi
                } else {
                    self.x_lo + h * T::from_usize_lossy(i)
                }
            })
            .collect()
    }

    pub fn t_nodes(&self) -> Vec<T> {
        let k = self.dt();
        (0..=self.nt)
            .map(|n| {
                if n == self.nt {
                    self.t_final
                } else {
                    k * T::from_usize_lossy(n)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorNorms<T> {
    /// Max over all nodes and all steps `n ≥ 1`.
    pub max_error: T,
    /// `sqrt(h Σ e²)` at the final time.
    pub l2_error: T,
    /// Max over the final time slice.
    pub final_max_error: T,
}

#[derive(Debug, Clone)]
pub struct Field<T> {
    pub t: Vec<T>,
    pub x: Vec<T>,
    /// `u[n][i]` at `(t[n], x[i])`.
    pub u: Vec<Vec<T>>,
    pub reference: Option<Vec<Vec<T>>>,
    pub errors: Option<ErrorNorms<T>>,
    /// For similarity runs: the field stayed within the range of the
    /// boundary and initial data widened by 10%.
    pub bounds_ok: Option<bool>,
}

impl<T: Scalar> Field<T> {
    pub fn final_slice(&self) -> &[T] {
        self.u.last().expect("field has at least two time levels")
    }
}

/// Runs the time march described in the module docs.
pub fn solve<T: Scalar>(config: &SolverConfig<T>) -> Result<Field<T>> {
    config.validate()?;
    let alpha = config.alpha;
    let (nx, nt) = (config.nx, config.nt);
    let x = config.x_nodes();
    let t = config.t_nodes();
    let h = config.dx();
    let h2 = h * h;
    let tau = config.dt();
    let s = T::one() / (gamma(T::lit(2.0) - alpha.value())? * tau.powf(alpha.value()));
    let weights = l1_weights_any(alpha, nt);
    let problem = &config.problem;
    let p = config.p;

    let u0: Vec<T> = x.iter().map(|&xi| problem.initial(xi)).collect();
    check_finite(&u0, 0, "initial data")?;
    let mut u = Vec::with_capacity(nt + 1);
    u.push(u0);
    // increments d[k] = u^(k+1) - u^k
    let mut incs: Vec<Vec<T>> = Vec::with_capacity(nt);

    let m = nx - 1;
    let mut lower = vec![T::zero(); m];
    let mut diag = vec![T::zero(); m];
    let mut upper = vec![T::zero(); m];
    let mut rhs = vec![T::zero(); m];

    for n in 1..=nt {
        let tn = t[n];
        let prev = &u[n - 1];
        let left = problem.boundary(tn, x[0], true);
        let right = problem.boundary(tn, x[nx], false);
        if !left.is_finite() || !right.is_finite() {
            return Err(Error::Config(format!(
                "boundary data not finite at t = {}",
                tn.as_f64()
            )));
        }
        let f: Vec<T> = x.iter().map(|&xi| problem.source(tn, xi)).collect();
        check_finite(&f, n, "source")?;

        // s Σ_{j=1}^{n-1} b_j (u^(n-j) - u^(n-j-1))
        let mut history = vec![T::zero(); nx + 1];
        for j in 1..n {
            let w = weights[j];
            for (hv, dv) in history.iter_mut().zip(&incs[n - j - 1]) {
                *hv = *hv + w * *dv;
            }
        }

        let mut base: Vec<T> = match (config.lag, n) {
            (CoefficientLag::Extrapolated, 2..) => prev
                .iter()
                .zip(&incs[n - 2])
                .map(|(v, d)| *v + *d)
                .collect(),
            _ => prev.clone(),
        };
        if !coefficient_finite(&base, p) {
            base.clone_from(prev);
        }
        if !coefficient_finite(&base, p) {
            // e.g. p < 0 with zero initial data: start from the boundary line
            base = x
                .iter()
                .map(|&xi| left + (right - left) * (xi - x[0]) / (x[nx] - x[0]))
                .collect();
        }
        let mut next = Vec::new();
        for _ in 0..=config.corrector_sweeps {
            let a: Vec<T> = base.iter().map(|&v| v.abs().powf(p)).collect();
            check_finite(&a, n, "coefficient u^p")?;
            let face: Vec<T> = a.windows(2).map(|w| (w[0] + w[1]) / T::lit(2.0)).collect();
            let d_left = left - prev[0];
            let d_right = right - prev[nx];
            for k in 0..m {
                let i = k + 1;
                let (fl, fr) = (face[i - 1], face[i]);
                let lu = (fr * (prev[i + 1] - prev[i]) - fl * (prev[i] - prev[i - 1])) / h2;
                lower[k] = -fl / h2;
                upper[k] = -fr / h2;
                diag[k] = s + (fl + fr) / h2;
                rhs[k] = lu + f[i] - s * history[i];
            }
            rhs[0] = rhs[0] + face[0] / h2 * d_left;
            rhs[m - 1] = rhs[m - 1] + face[nx - 1] / h2 * d_right;
            let delta = solve_tridiagonal(&lower, &diag, &upper, &rhs)
                .ok_or_else(|| Error::Divergence(format!("singular step matrix at step {n}")))?;
            next = Vec::with_capacity(nx + 1);
            next.push(left);
            next.extend(delta.iter().zip(&prev[1..nx]).map(|(d, v)| *v + *d));
            next.push(right);
            check_finite(&next, n, "solution")?;
            base.clone_from(&next);
        }
        incs.push(next.iter().zip(prev).map(|(a, b)| *a - *b).collect());
        u.push(next);
    }

    let reference = problem.has_reference().then(|| {
        t.iter()
            .map(|&tn| {
                x.iter()
                    .map(|&xi| problem.reference(tn, xi).expect("reference present"))
                    .collect()
            })
            .collect::<Vec<Vec<T>>>()
    });
    let errors = reference.as_ref().map(|r| error_norms(&u, r, h));
    let bounds_ok = match problem {
        Problem::ExactSimilarity { .. } => Some(within_data_range(&u)),
        _ => None,
    };
    Ok(Field {
        t,
        x,
        u,
        reference,
        errors,
        bounds_ok,
    })
}

/// L1 weights, with the backward-Euler limit `[1, 0, 0, ...]` at α = 1.
fn l1_weights_any<T: Scalar>(alpha: FracOrder<T>, n: usize) -> Vec<T> {
    let e = T::one() - alpha.value();
    (0..n)
        .map(|j| {
            let j1 = T::from_usize_lossy(j + 1);
            let j0 = T::from_usize_lossy(j);
            if j == 0 {
                T::one()
            } else if e == T::zero() {
                T::zero()
            } else {
                j1.powf(e) - j0.powf(e)
            }
        })
        .collect()
}

fn coefficient_finite<T: Scalar>(u: &[T], p: T) -> bool {
    u.iter().all(|v| v.abs().powf(p).is_finite())
}

fn check_finite<T: Scalar>(v: &[T], step: usize, what: &str) -> Result<()> {
    match v.iter().position(|x| !x.is_finite()) {
        None => Ok(()),
        Some(i) => Err(Error::Divergence(format!(
            "{what} not finite at step {step}, node {i}"
        ))),
    }
}

fn error_norms<T: Scalar>(u: &[Vec<T>], r: &[Vec<T>], h: T) -> ErrorNorms<T> {
    let slice_max = |a: &[T], b: &[T]| {
        a.iter()
            .zip(b)
            .fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()))
    };
    let max_error = u
        .iter()
        .zip(r)
        .skip(1)
        .fold(T::zero(), |m, (a, b)| m.max(slice_max(a, b)));
    let (ul, rl) = (u.last().expect("nonempty"), r.last().expect("nonempty"));
    let l2_error = (ul
        .iter()
        .zip(rl)
        .fold(T::zero(), |acc, (a, b)| acc + (*a - *b) * (*a - *b))
        * h)
        .sqrt();
    ErrorNorms {
        max_error,
        l2_error,
        final_max_error: slice_max(ul, rl),
    }
}

fn within_data_range<T: Scalar>(u: &[Vec<T>]) -> bool {
    let data = u[0]
        .iter()
        .copied()
        .chain(u.iter().flat_map(|row| [row[0], row[row.len() - 1]]));
    let (lo, hi) = data.fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let margin = T::lit(0.1) * (hi - lo);
    u.iter()
        .flatten()
        .all(|v| *v >= lo - margin && *v <= hi + margin)
}
