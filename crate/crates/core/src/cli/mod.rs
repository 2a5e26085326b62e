//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse error, 2 solve error, 3 verification
//! failure.

mod render;

pub use render::{json, latex, render, work_log, Format};

use std::io::Write;

use rayon::prelude::*;

use crate::exactnum::RatPoly;
use crate::forcing::{parse_forcing, parse_operator, ForcingFunction, ParseError};
use crate::solver::{particular_solution, Method, Solution, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_SOLVE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub operator_text: String,
    pub rhs_text: String,
    pub method: Method,
    pub format: Format,
    pub show_work: bool,
    /// Adds a floating-point spot check on top of the exact residual check.
    pub verify: bool,
    /// Solves `D y = rhs` and appends `+ C`; `operator_text` is ignored.
    pub integrate_mode: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            operator_text: String::new(),
            rhs_text: String::new(),
            method: Method::MatrixMultiplicity,
            format: Format::Text,
            show_work: false,
            verify: true,
            integrate_mode: false,
        }
    }
}

/// Splits `"LHS = RHS"` into operator and right-hand side.
pub fn split_ode(text: &str) -> Option<(String, String)> {
    let (lhs, rhs) = text.split_once('=')?;
    if rhs.contains('=') {
        return None;
    }
    Some((lhs.trim().to_string(), rhs.trim().to_string()))
}

const SPOT_POINTS: [f64; 3] = [-1.0, 0.3, 2.0];

/// Floating-point check of `φ(D) y = f` at a few points, relative to the
/// magnitude of the summands.
pub fn numeric_spot_check(phi: &RatPoly, y: &ForcingFunction, f: &ForcingFunction) -> bool {
    SPOT_POINTS.iter().all(|&x| {
        let mut dj = y.clone();
        let fx = f.evaluate_numeric(x);
        let (mut sum, mut scale) = (-fx, fx.abs() + 1.0);
        for a in phi.coeffs() {
            let term = crate::exactnum::to_f64(a) * dj.evaluate_numeric(x);
            sum += term;
            scale += term.abs();
            dj = dj.differentiate();
        }
        sum.abs() <= 1e-9 * scale
    })
}

enum Failure {
    Parse(String),
    Solve(SolveError),
    Numeric,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Solve(SolveError::Verification(_)) | Failure::Numeric => EXIT_VERIFY,
            Failure::Solve(_) => EXIT_SOLVE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(m) => m.clone(),
            Failure::Solve(e) => e.to_string(),
            Failure::Numeric => "verification failed: numeric spot check".into(),
        }
    }
}

fn parse_failure(what: &str, text: &str, e: ParseError) -> Failure {
    if let ParseError::ZeroOperator = e {
        return Failure::Solve(SolveError::ZeroOperator);
    }
    let mut msg = format!("{what}: {e}");
    if let Some(pos) = e.position() {
        msg.push_str(&format!("\n  {text}\n  {}^", " ".repeat(pos)));
    }
    Failure::Parse(msg)
}

fn solve_config(config: &RunConfig) -> Result<(Solution, RatPoly), Failure> {
    let phi = if config.integrate_mode {
        RatPoly::var()
    } else {
        parse_operator(&config.operator_text)
            .map_err(|e| parse_failure("operator", &config.operator_text, e))?
    };
    let f = parse_forcing(&config.rhs_text)
        .map_err(|e| parse_failure("right-hand side", &config.rhs_text, e))?;
    if config.method == Method::Maclaurin && !f.is_polynomial() {
        return Err(Failure::Solve(SolveError::NonPolynomialForMaclaurin));
    }
    let solution = particular_solution(&phi, &f, config.method).map_err(Failure::Solve)?;
    if config.verify && !numeric_spot_check(&phi, &solution.expression, &f) {
        return Err(Failure::Numeric);
    }
    Ok((solution, phi))
}

/// Output text for one problem, or the failure.
fn run_to_strings(config: &RunConfig) -> (String, String, i32) {
    match solve_config(config) {
        Ok((solution, _)) => {
            let mut out = String::new();
            let mut err = String::new();
            if config.show_work {
                let log = work_log(&solution);
                if config.format == Format::Json {
                    err.push_str(&log);
                } else {
                    out.push_str(&log);
                }
            }
            out.push_str(&render(&solution, config.format));
            if config.integrate_mode && config.format != Format::Json {
                out.push_str(" + C");
            }
            out.push('\n');
            (out, err, EXIT_OK)
        }
        Err(failure) => (
            String::new(),
            format!("error: {}\n", failure.message()),
            failure.code(),
        ),
    }
}

/// Solves one problem, writing the result to `out` and diagnostics to `err`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (o, e, code) = run_to_strings(config);
    // Broken pipes are not solver failures.
    let _ = out.write_all(o.as_bytes());
    let _ = err.write_all(e.as_bytes());
    code
}

/// One problem per line: `op ; rhs`, or just `rhs` in integrate mode.
/// Blank lines and lines starting with `#` are skipped. Lines are solved
/// in parallel and reported in input order; the exit code is the worst one.
pub fn run_batch(text: &str, base: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let problems: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(String, String, i32)> = problems
        .par_iter()
        .map(|&(lineno, line)| {
            let mut config = base.clone();
            if base.integrate_mode {
                config.rhs_text = line.to_string();
            } else {
                let Some((op, rhs)) = line.split_once(';') else {
                    return (
                        String::new(),
                        format!("line {lineno}: error: expected `op ; rhs`\n"),
                        EXIT_PARSE,
                    );
                };
                config.operator_text = op.trim().to_string();
                config.rhs_text = rhs.trim().to_string();
            }
            let (o, e, code) = run_to_strings(&config);
            let e = if e.is_empty() {
                e
            } else {
                format!("line {lineno}: {e}")
            };
            (o, e, code)
        })
        .collect();
    let mut worst = EXIT_OK;
    for (o, e, code) in results {
        let _ = out.write_all(o.as_bytes());
        let _ = err.write_all(e.as_bytes());
        worst = worst.max(code);
    }
    worst
}
