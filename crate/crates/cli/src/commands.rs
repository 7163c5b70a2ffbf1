use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use fraclab::powerlaw::{caputo_dt, CaputoMode, PowerSum};
use fraclab::solutions::{solve_with_tolerance, CERTIFICATE_TOL};
use fraclab::solver::{
    self, convergence_study, write_convergence_csv, write_field_csv, ConfigFile,
};
use fraclab::symmetry::{
    boundary_condition_exponent, boundary_line_invariance, initial_line_invariance,
    similarity_form, BoundarySide,
};
use fraclab::{numerics, Equation, Error, FracOrder, Generator, Result};

use crate::manifest::{write_manifest, write_output};
use crate::{
    BvpArgs, CaputoArgs, ConvergeArgs, EquationName, FamilyName, LeibnizArgs, Mode, SolveArgs,
    VerifyArgs,
};

const DEFAULT_LEVELS: usize = 4;

/// Residual tolerance, overridable through `FRACLAB_TOL`.
fn tolerance() -> Result<f64> {
    match std::env::var("FRACLAB_TOL") {
        Err(_) => Ok(CERTIFICATE_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(Error::Config(format!(
                "FRACLAB_TOL must be a positive number, got {s:?}"
            ))),
        },
    }
}

fn order(alpha: f64) -> Result<FracOrder> {
    FracOrder::new(alpha)
}

/// Stdout write that tolerates a closed pipe (e.g. `| head`).
fn print_out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn to_json<S: Serialize>(v: &S) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))
}

/// Prints the primary output and, with an output directory, saves it next
/// to a manifest.
fn emit<P: Serialize>(
    text: &str,
    out_dir: Option<&Path>,
    file: &str,
    name: &str,
    params: &P,
    started: Instant,
) -> Result<u8> {
    print_out(text);
    if let Some(dir) = out_dir {
        let out = write_output(dir, file, format!("{text}\n").as_bytes())?;
        write_manifest(dir, name, params, &[out], started)?;
    }
    Ok(0)
}

pub fn caputo(args: &CaputoArgs) -> Result<u8> {
    let started = Instant::now();
    let expr: PowerSum<f64> = args.expr.parse()?;
    let mode = match args.mode {
        Mode::Strict => CaputoMode::Strict,
        Mode::Extended => CaputoMode::Extended,
    };
    let result = caputo_dt(&expr, order(args.alpha)?, mode)?;
    emit(
        &result.to_string(),
        args.out_dir.as_deref(),
        "caputo.txt",
        "caputo",
        args,
        started,
    )
}

#[derive(Serialize)]
struct VerifyReport {
    matches_paper: bool,
    certified: bool,
    tolerance: f64,
    constant: f64,
    paper_constant: Option<f64>,
    solution: fraclab::SimilaritySolution,
}

pub fn verify(args: &VerifyArgs) -> Result<u8> {
    let started = Instant::now();
    let equation = match args.equation {
        EquationName::Diffusion => Equation::Diffusion {
            p: args
                .p
                .ok_or_else(|| Error::Config("--equation diffusion needs --p".into()))?,
        },
        EquationName::ThirdOrder => Equation::ThirdOrder {
            q: args
                .q
                .ok_or_else(|| Error::Config("--equation third_order needs --q".into()))?,
        },
    };
    let tol = tolerance()?;
    let s = solve_with_tolerance(equation, order(args.alpha)?, tol)?;
    eprintln!(
        "matches_paper: {} (certified constant {}, printed closed form {})",
        s.matches_paper,
        s.constant,
        s.paper_constant
            .map_or("undefined".to_string(), |k| k.to_string())
    );
    let report = VerifyReport {
        matches_paper: s.matches_paper,
        certified: true,
        tolerance: tol,
        constant: s.constant,
        paper_constant: s.paper_constant,
        solution: s,
    };
    emit(
        &to_json(&report)?,
        args.out_dir.as_deref(),
        "verify.json",
        "verify",
        args,
        started,
    )
}

fn need(v: Option<f64>, flag: &str, family: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Config(format!("--family {family} needs --{flag}")))
}

fn build_generator(a: &BvpArgs) -> Result<Generator> {
    let alpha = |fam| need(a.alpha, "alpha", fam).and_then(order);
    match a.family {
        FamilyName::Raw => Generator::new(a.e0, a.e1, a.f0, a.f1, a.g1),
        FamilyName::Diffusion => Generator::diffusion(
            a.c1,
            a.c2,
            a.c3,
            need(a.p, "p", "diffusion")?,
            alpha("diffusion")?,
        ),
        FamilyName::ThirdOrder => Generator::third_order(
            a.c1,
            a.c2,
            a.c3,
            a.c4,
            need(a.q, "q", "third_order")?,
            alpha("third_order")?,
        ),
        FamilyName::X1 => Ok(Generator::x1(alpha("x1")?)),
        FamilyName::X2 => Generator::x2(need(a.p, "p", "x2")?),
        FamilyName::Y1 => Ok(Generator::y1(need(a.q, "q", "y1")?)),
        FamilyName::Y2 => Ok(Generator::y2(alpha("y2")?, need(a.q, "q", "y2")?)),
    }
}

pub fn bvp_check(args: &BvpArgs) -> Result<u8> {
    let started = Instant::now();
    let gen = build_generator(args)?;
    let initial = initial_line_invariance(&gen);
    let boundary = boundary_line_invariance(&gen);
    let mut notes = Vec::new();

    let constrained = gen.apply_constraints(&initial).apply_constraints(&boundary);
    let usable = initial.admissible && boundary.admissible && !constrained.is_trivial();
    let mut exponent = |side| match boundary_condition_exponent(&constrained, side) {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("{side:?}: {e}"));
            None
        }
    };
    let (initial_t0, boundary_x0) = if usable {
        (
            exponent(BoundarySide::InitialT0),
            exponent(BoundarySide::BoundaryX0),
        )
    } else {
        notes.push("line constraints trivialize the generator".to_string());
        (None, None)
    };
    let form = if usable {
        similarity_form(&constrained)
            .map_err(|e| notes.push(format!("similarity form: {e}")))
            .ok()
    } else {
        None
    };
    let report = json!({
        "generator": gen,
        "initial_line": initial,
        "boundary_line": boundary,
        "constrained_generator": usable.then_some(constrained),
        "boundary_exponents": { "initial_t0": initial_t0, "boundary_x0": boundary_x0 },
        "similarity_form": form,
        "notes": notes,
    });
    emit(
        &to_json(&report)?,
        args.out_dir.as_deref(),
        "bvp_check.json",
        "bvp-check",
        args,
        started,
    )
}

fn load_config(path: &Path) -> Result<ConfigFile> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ConfigFile::from_json(&text)
}

pub fn solve(args: &SolveArgs) -> Result<u8> {
    let started = Instant::now();
    let file = load_config(&args.config)?;
    let config: fraclab::SolverConfig = file.to_solver_config()?;
    let field = solver::solve(&config)?;
    let mut csv = Vec::new();
    write_field_csv(&field, &mut csv)?;
    let out = write_output(&args.out_dir, "field.csv", &csv)?;
    let summary = json!({
        "mode": config.problem.mode_name(),
        "nx": config.nx,
        "nt": config.nt,
        "errors": field.errors,
        "bounds_ok": field.bounds_ok,
        "field_csv": out.display().to_string(),
    });
    print_out(&to_json(&summary)?);
    write_manifest(
        &args.out_dir,
        "solve",
        &json!({ "args": args, "config": file }),
        &[out],
        started,
    )?;
    Ok(0)
}

pub fn converge(args: &ConvergeArgs) -> Result<u8> {
    let started = Instant::now();
    let file = load_config(&args.config)?;
    let config: fraclab::SolverConfig = file.to_solver_config()?;
    let levels = args.levels.or(file.levels).unwrap_or(DEFAULT_LEVELS);
    let rows = convergence_study(&config, levels)?;
    let mut csv = Vec::new();
    write_convergence_csv(&rows, &mut csv)?;
    let out = write_output(&args.out_dir, "convergence.csv", &csv)?;
    let final_order = rows.iter().rev().find_map(|r| r.observed_order);
    let summary = json!({
        "mode": config.problem.mode_name(),
        "alpha": file.alpha,
        "levels": levels,
        "rows": rows,
        "final_observed_order": final_order,
        "convergence_csv": out.display().to_string(),
    });
    print_out(&to_json(&summary)?);
    write_manifest(
        &args.out_dir,
        "converge",
        &json!({ "args": args, "config": file }),
        &[out],
        started,
    )?;
    Ok(0)
}

pub fn leibniz(args: &LeibnizArgs) -> Result<u8> {
    let started = Instant::now();
    let alpha = order(args.alpha)?;
    if args.n_terms == 0 {
        return Err(Error::Config("--n-terms must be at least 1".into()));
    }
    let (closed, rows) = numerics::leibniz_study(args.a, args.b, alpha, args.n_terms, args.t)?;
    let expr = numerics::leibniz_partial_sum(args.a, args.b, alpha, args.n_terms)?;
    let report = json!({
        "a": args.a,
        "b": args.b,
        "alpha": args.alpha,
        "t": args.t,
        "closed_form": closed,
        "partial_sum": rows.last().map(|r| r.partial_sum),
        "partial_sum_expr": expr.to_string(),
        "truncations": rows,
    });
    emit(
        &to_json(&report)?,
        args.out_dir.as_deref(),
        "leibniz.json",
        "leibniz",
        args,
        started,
    )
}
