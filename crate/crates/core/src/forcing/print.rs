use std::fmt;

use num_traits::{Signed, Zero};

use super::{ForcingFunction, ForcingTerm, TrigKind};
use crate::exactnum::is_unit;

/// Unit-coefficient factors of a term in the input grammar, e.g.
/// `x^2*e^(2x)*sin(3x)`. Empty for a constant.
pub(crate) fn factor_text(t: &ForcingTerm) -> String {
    let mut parts = Vec::new();
    match t.power {
        0 => {}
        1 => parts.push("x".to_string()),
        p => parts.push(format!("x^{p}")),
    }
    if !t.alpha.is_zero() {
        parts.push(format!("e^({}x)", t.alpha));
    }
    match t.trig {
        TrigKind::One => {}
        TrigKind::Sin => parts.push(format!("sin({}x)", t.beta)),
        TrigKind::Cos => parts.push(format!("cos({}x)", t.beta)),
    }
    parts.join("*")
}

impl fmt::Display for ForcingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = factor_text(self);
        if factors.is_empty() {
            write!(f, "{}", self.coef)
        } else if is_unit(&self.coef) {
            let sign = if self.coef.is_negative() { "-" } else { "" };
            write!(f, "{sign}{factors}")
        } else {
            write!(f, "{}*{factors}", self.coef)
        }
    }
}

/// Grammar-compatible text; `parse_forcing` reads it back to the same value.
impl fmt::Display for ForcingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{t}")?;
                continue;
            }
            let mut magnitude = t.clone();
            if t.coef.is_negative() {
                magnitude.coef = -magnitude.coef;
                write!(f, " - {magnitude}")?;
            } else {
                write!(f, " + {magnitude}")?;
            }
        }
        Ok(())
    }
}
