use serde::Serialize;

use super::{solve, SolverConfig};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow<T> {
    pub nt: usize,
    pub nx: usize,
    pub max_error: T,
    pub l2_error: T,
    /// `log2(e_i / e_(i+1))` from the max error; absent on the last row.
    pub observed_order: Option<T>,
}

/// Simultaneous refinement `nt → 2nt`, `nx ∝ nt^((2-α)/2)` so the `O(h²)`
/// spatial error tracks the `O(τ^(2-α))` temporal one. Levels run on
/// separate threads.
pub fn convergence_study<T: Scalar>(
    config: &SolverConfig<T>,
    levels: usize,
) -> Result<Vec<ConvergenceRow<T>>> {
    if levels < 3 {
        return Err(Error::Config(format!(
            "need at least 3 levels, got {levels}"
        )));
    }
    if !config.problem.has_reference() {
        return Err(Error::Config(
            "convergence study needs a reference solution".into(),
        ));
    }
    config.validate()?;
    let rate = (2.0 - config.alpha.value().as_f64()) / 2.0;
    let configs: Vec<SolverConfig<T>> = (0..levels)
        .map(|i| SolverConfig {
            nt: config.nt << i,
            nx: (config.nx as f64 * 2f64.powf(i as f64 * rate)).round() as usize,
            ..config.clone()
        })
        .collect();

    let results: Vec<Result<(usize, usize, T, T)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| {
                scope.spawn(move || {
                    let field = solve(c)?;
                    let e = field.errors.expect("reference checked above");
                    Ok((c.nt, c.nx, e.max_error, e.l2_error))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });

    let rows: Vec<(usize, usize, T, T)> = results.into_iter().collect::<Result<_>>()?;
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, &(nt, nx, max_error, l2_error))| ConvergenceRow {
            nt,
            nx,
            max_error,
            l2_error,
            observed_order: rows.get(i + 1).map(|next| (max_error / next.2).log2()),
        })
        .collect())
}
