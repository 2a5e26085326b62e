use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactnum::{ratio_string, Rational};
use crate::forcing::{ForcingFunction, ForcingTerm, TrigKind};
use crate::solver::{ModeSolution, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

#[derive(Serialize)]
struct JsonTerm {
    coef: String,
    power: u32,
    alpha: String,
    beta: String,
    trig: &'static str,
}

#[derive(Serialize)]
struct JsonSolution {
    terms: Vec<JsonTerm>,
    residual_zero: bool,
    method: &'static str,
}

fn latex_rational(r: &Rational) -> String {
    let n = r.numer().abs();
    let sign = if r.is_negative() { "-" } else { "" };
    if r.is_integer() {
        format!("{sign}{n}")
    } else {
        format!("{sign}\\frac{{{n}}}{{{}}}", r.denom())
    }
}

/// `x` scaled by `r`: `x`, `-x`, `3x`, `\frac{1}{2}x`.
fn latex_rate(r: &Rational) -> String {
    if r.is_one() {
        "x".into()
    } else if (-r).is_one() {
        "-x".into()
    } else {
        format!("{}x", latex_rational(r))
    }
}

fn latex_term(t: &ForcingTerm) -> String {
    let mut factors = String::new();
    match t.power {
        0 => {}
        1 => factors.push('x'),
        p => write!(factors, "x^{{{p}}}").unwrap(),
    }
    if !t.alpha.is_zero() {
        write!(factors, "e^{{{}}}", latex_rate(&t.alpha)).unwrap();
    }
    match t.trig {
        TrigKind::One => {}
        TrigKind::Sin => write!(factors, "\\sin{{{}}}", latex_rate(&t.beta)).unwrap(),
        TrigKind::Cos => write!(factors, "\\cos{{{}}}", latex_rate(&t.beta)).unwrap(),
    }
    let c = t.coef.abs();
    if factors.is_empty() {
        latex_rational(&c)
    } else if c.is_one() {
        factors
    } else {
        format!("{}{factors}", latex_rational(&c))
    }
}

pub fn latex(f: &ForcingFunction) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in f.terms().iter().enumerate() {
        let neg = t.coef.is_negative();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&latex_term(t));
    }
    s
}

pub fn json(solution: &Solution) -> String {
    let doc = JsonSolution {
        terms: solution
            .expression
            .terms()
            .iter()
            .map(|t| JsonTerm {
                coef: ratio_string(&t.coef),
                power: t.power,
                alpha: ratio_string(&t.alpha),
                beta: ratio_string(&t.beta),
                trig: t.trig.name(),
            })
            .collect(),
        residual_zero: solution.residual.is_zero(),
        method: solution.method.name(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

/// The solution alone, without any trailing newline.
pub fn render(solution: &Solution, format: Format) -> String {
    match format {
        Format::Text => solution.expression.to_string(),
        Format::Latex => latex(&solution.expression),
        Format::Json => json(solution),
    }
}

fn vector(v: &[Rational]) -> String {
    let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", cells.join(", "))
}

/// Matrices and vectors of each mode solve, one block per mode.
pub fn work_log(solution: &Solution) -> String {
    let mut s = String::new();
    for m in &solution.per_mode {
        mode_log(&mut s, m);
    }
    s
}

fn mode_log(s: &mut String, m: &ModeSolution) {
    let names: Vec<String> = m
        .basis
        .functions()
        .iter()
        .map(ToString::to_string)
        .collect();
    writeln!(s, "mode alpha={} beta={}", m.alpha, m.beta).unwrap();
    writeln!(s, "basis: {{{}}}", names.join(", ")).unwrap();
    if let Some(w) = &m.work {
        for rejected in &w.rejected {
            writeln!(s, "unsolvable in a basis of size {}", rejected.len()).unwrap();
        }
        writeln!(s, "k = {}", w.k).unwrap();
        writeln!(s, "D_B =\n{}", w.derivative).unwrap();
        writeln!(s, "phi(D_B) =\n{}", w.phi_matrix).unwrap();
        let label = match w.route {
            crate::linalg::SolveRoute::Inverse => "inverse",
            crate::linalg::SolveRoute::Shell(_) => "pseudoinverse (block)",
            crate::linalg::SolveRoute::General => "pseudoinverse (rank factorization)",
        };
        writeln!(s, "{label} =\n{}", w.generalized_inverse).unwrap();
        writeln!(s, "f_B = {}", vector(&w.rhs)).unwrap();
    }
    writeln!(s, "y_B = {}", vector(&m.coords)).unwrap();
}
