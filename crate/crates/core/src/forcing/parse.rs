//! Recursive-descent parsers for right-hand sides and operators.
//!
//! Forcing grammar (whitespace is insignificant):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor (['*'] factor)*
//! factor   := rational | 'x' ['^' uint] | 'e' '^' '(' rate ')'
//!           | ('sin'|'cos') '(' rate ')'
//! rate     := ['+'|'-'] [rational ['*']] 'x'
//! rational := uint ['/' uint]
//! ```
//!
//! Operators are polynomials in `D` built from `+ - * ^ ( )`, rational
//! literals and juxtaposition, or the `y`-notation `y'' + 3y' - 4y`,
//! `y^(4)`; the two may be mixed as in `(D^2 + 1)y`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{canonicalize, ForcingFunction, ForcingTerm, TrigKind};
use crate::exactnum::{RatPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("non-rational literal at position {pos}")]
    NonRational { pos: usize },
    #[error("zero operator")]
    ZeroOperator,
}

impl ParseError {
    /// Byte offset into the input, when the error has one.
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::NonRational { pos } => Some(*pos),
            ParseError::ZeroOperator => None,
        }
    }
}

type Result<T> = std::result::Result<T, ParseError>;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!(
                    "expected '{}', found '{}'",
                    c as char, found as char
                )),
                None => self.error(format!("expected '{}', found end of input", c as char)),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        match self.digits() {
            Some(d) => d.parse().map_err(|_| ParseError::Syntax {
                pos: start,
                message: "exponent too large".into(),
            }),
            None => self.error("expected an unsigned integer"),
        }
    }

    /// `uint ['/' uint]`, rejecting decimal points.
    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let num: BigInt = match self.digits() {
            Some(d) => d.parse().unwrap(),
            None => return self.error("expected a number"),
        };
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(ParseError::NonRational { pos: start });
        }
        let save = self.pos;
        if self.eat(b'/') {
            let den_pos = self.pos;
            match self.digits() {
                Some(d) => {
                    if self.src.get(self.pos) == Some(&b'.') {
                        return Err(ParseError::NonRational { pos: start });
                    }
                    let den: BigInt = d.parse().unwrap();
                    if den.is_zero() {
                        return Err(ParseError::Syntax {
                            pos: den_pos,
                            message: "zero denominator".into(),
                        });
                    }
                    return Ok(Rational::new(num, den));
                }
                None => {
                    self.pos = save;
                    return self.error("expected a denominator after '/'");
                }
            }
        }
        Ok(Rational::from_integer(num))
    }
}

// ---------------------------------------------------------------------------
// Forcing functions
// ---------------------------------------------------------------------------

/// Parses a right-hand side into canonical form.
pub fn parse_forcing(text: &str) -> Result<ForcingFunction> {
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return cur.error("empty expression");
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negate = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return cur.error("expected '+' or '-'");
        };
        first = false;
        let mut term = forcing_term(&mut cur)?;
        if negate {
            term.coef = -term.coef;
        }
        terms.push(term);
        match cur.peek() {
            None => break,
            Some(b'+' | b'-') => continue,
            Some(c) => return cur.error(format!("unexpected '{}'", c as char)),
        }
    }
    Ok(canonicalize(terms))
}

struct TermBuilder {
    coef: Rational,
    power: u32,
    alpha: Rational,
    trig: Option<(TrigKind, Rational)>,
}

fn starts_factor(c: Option<u8>) -> bool {
    matches!(c, Some(b'0'..=b'9' | b'x' | b'e' | b's' | b'c'))
}

fn forcing_term(cur: &mut Cursor) -> Result<ForcingTerm> {
    let mut b = TermBuilder {
        coef: Rational::one(),
        power: 0,
        alpha: Rational::zero(),
        trig: None,
    };
    forcing_factor(cur, &mut b)?;
    loop {
        if cur.eat(b'*') || starts_factor(cur.peek()) {
            forcing_factor(cur, &mut b)?;
        } else {
            break;
        }
    }
    Ok(match b.trig {
        None => ForcingTerm::new(b.coef, b.power, b.alpha, Rational::zero(), TrigKind::One),
        Some((kind, beta)) => ForcingTerm::new(b.coef, b.power, b.alpha, beta, kind),
    })
}

fn forcing_factor(cur: &mut Cursor, b: &mut TermBuilder) -> Result<()> {
    match cur.peek() {
        Some(b'0'..=b'9') => {
            b.coef *= cur.rational()?;
        }
        Some(b'x') => {
            cur.pos += 1;
            let p = if cur.eat(b'^') { cur.uint()? } else { 1 };
            b.power = b.power.checked_add(p).ok_or_else(|| ParseError::Syntax {
                pos: cur.pos,
                message: "exponent too large".into(),
            })?;
        }
        Some(b'e') => {
            cur.pos += 1;
            cur.expect(b'^')?;
            cur.expect(b'(')?;
            b.alpha += rate(cur)?;
            cur.expect(b')')?;
        }
        Some(b's' | b'c') => {
            let start = cur.pos;
            let kind = if cur.eat_keyword("sin") {
                TrigKind::Sin
            } else if cur.eat_keyword("cos") {
                TrigKind::Cos
            } else {
                return cur.error("expected 'sin' or 'cos'");
            };
            cur.expect(b'(')?;
            let beta = rate(cur)?;
            cur.expect(b')')?;
            if b.trig.is_some() {
                return Err(ParseError::Syntax {
                    pos: start,
                    message: "products of trigonometric factors are not supported".into(),
                });
            }
            b.trig = Some((kind, beta));
        }
        Some(c) => return cur.error(format!("expected a factor, found '{}'", c as char)),
        None => return cur.error("expected a factor, found end of input"),
    }
    Ok(())
}

/// `['+'|'-'] [rational ['*']] 'x'`, the linear argument of `e^()`,
/// `sin()` and `cos()`.
fn rate(cur: &mut Cursor) -> Result<Rational> {
    let negative = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    let mut r = Rational::one();
    if matches!(cur.peek(), Some(b'0'..=b'9')) {
        r = cur.rational()?;
        cur.eat(b'*');
    }
    cur.expect(b'x')?;
    Ok(if negative { -r } else { r })
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

struct OpValue {
    poly: RatPoly,
    /// Mentions `y`; such a factor may appear at most once per product.
    has_y: bool,
}

/// Parses an operator polynomial in `D` (or a `y`-notation left-hand side).
pub fn parse_operator(text: &str) -> Result<RatPoly> {
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return cur.error("empty operator");
    }
    let value = op_expr(&mut cur)?;
    if let Some(c) = cur.peek() {
        return cur.error(format!("unexpected '{}'", c as char));
    }
    if value.poly.is_zero() {
        return Err(ParseError::ZeroOperator);
    }
    Ok(value.poly)
}

fn op_expr(cur: &mut Cursor) -> Result<OpValue> {
    let start = cur.pos;
    let mut acc = RatPoly::zero();
    let mut with_y = 0usize;
    let mut count = 0usize;
    let mut first = true;
    loop {
        let negate = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            break;
        };
        first = false;
        let term = op_term(cur)?;
        count += 1;
        with_y += usize::from(term.has_y);
        acc = if negate {
            &acc - &term.poly
        } else {
            &acc + &term.poly
        };
        if !matches!(cur.peek(), Some(b'+' | b'-')) {
            break;
        }
    }
    if with_y != 0 && with_y != count {
        return Err(ParseError::Syntax {
            pos: start,
            message: "every summand of a y-notation operator must contain y".into(),
        });
    }
    Ok(OpValue {
        poly: acc,
        has_y: with_y > 0,
    })
}

fn op_term(cur: &mut Cursor) -> Result<OpValue> {
    let mut acc = op_power(cur)?;
    loop {
        let explicit = cur.eat(b'*');
        if !explicit && !matches!(cur.peek(), Some(b'0'..=b'9' | b'D' | b'y' | b'(')) {
            break;
        }
        let pos = cur.pos;
        let rhs = op_power(cur)?;
        if acc.has_y && rhs.has_y {
            return Err(ParseError::Syntax {
                pos,
                message: "product of two y terms".into(),
            });
        }
        acc = OpValue {
            poly: &acc.poly * &rhs.poly,
            has_y: acc.has_y || rhs.has_y,
        };
    }
    Ok(acc)
}

fn op_power(cur: &mut Cursor) -> Result<OpValue> {
    let (base, is_y_atom) = op_atom(cur)?;
    if !is_y_atom && cur.eat(b'^') {
        let pos = cur.pos;
        let e = cur.uint()?;
        if base.has_y && e != 1 {
            return Err(ParseError::Syntax {
                pos,
                message: "cannot raise y to a power".into(),
            });
        }
        return Ok(OpValue {
            poly: base.poly.pow(e),
            has_y: base.has_y,
        });
    }
    Ok(base)
}

fn op_atom(cur: &mut Cursor) -> Result<(OpValue, bool)> {
    match cur.peek() {
        Some(b'0'..=b'9') => {
            let r = cur.rational()?;
            Ok((
                OpValue {
                    poly: RatPoly::constant(r),
                    has_y: false,
                },
                false,
            ))
        }
        Some(b'D') => {
            cur.pos += 1;
            Ok((
                OpValue {
                    poly: RatPoly::var(),
                    has_y: false,
                },
                false,
            ))
        }
        Some(b'y') => {
            cur.pos += 1;
            let mut order = 0u32;
            while cur.src.get(cur.pos) == Some(&b'\'') {
                order += 1;
                cur.pos += 1;
            }
            if order == 0 && cur.eat(b'^') {
                cur.expect(b'(')?;
                order = cur.uint()?;
                cur.expect(b')')?;
            }
            Ok((
                OpValue {
                    poly: RatPoly::var().pow(order),
                    has_y: true,
                },
                true,
            ))
        }
        Some(b'(') => {
            cur.pos += 1;
            let inner = op_expr(cur)?;
            cur.expect(b')')?;
            Ok((inner, false))
        }
        Some(c) => cur.error(format!("expected an operator atom, found '{}'", c as char)),
        None => cur.error("expected an operator atom, found end of input"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::forcing::tests::arb_forcing;
    use proptest::prelude::*;

    fn term(c: Rational, p: u32, a: i64, b: i64, trig: TrigKind) -> ForcingTerm {
        ForcingTerm::new(c, p, int(a), int(b), trig)
    }

    #[test]
    fn forcing_examples() {
        let f = parse_forcing("2*x*e^(2x)*cos(3x)").unwrap();
        assert_eq!(f.terms(), &[term(int(2), 1, 2, 3, TrigKind::Cos)]);
        assert!(parse_forcing("0").unwrap().is_zero());
        let s = parse_forcing("sin(-2x)").unwrap();
        assert_eq!(s.terms(), &[term(int(-1), 0, 0, 2, TrigKind::Sin)]);
    }

    #[test]
    fn forcing_accepts_juxtaposition_and_spacing() {
        let a = parse_forcing("2xe^(2x)cos(3x)").unwrap();
        let b = parse_forcing(" 2 * x * e^( 2 * x ) * cos( 3x ) ").unwrap();
        assert_eq!(a, b);
        let c = parse_forcing("e^(x) + e^(-x) - 1/2*x^3").unwrap();
        assert_eq!(
            c.terms(),
            &[
                term(int(1), 0, -1, 0, TrigKind::One),
                term(rat(-1, 2), 3, 0, 0, TrigKind::One),
                term(int(1), 0, 1, 0, TrigKind::One),
            ]
        );
        let d = parse_forcing("e^(1/2x)*sin(x)").unwrap();
        assert_eq!(d.terms()[0].alpha, rat(1, 2));
        assert_eq!(d.terms()[0].beta, int(1));
    }

    #[test]
    fn forcing_errors_carry_positions() {
        let e = parse_forcing("2*x + 1.5").unwrap_err();
        assert_eq!(e, ParseError::NonRational { pos: 6 });
        let e = parse_forcing("2*x + ").unwrap_err();
        assert_eq!(e.position(), Some(6));
        assert!(matches!(
            parse_forcing("sin(x)*cos(x)"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_forcing("tan(x)"),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_forcing("x)"),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(parse_forcing("").is_err());
        assert!(parse_forcing("1/0").is_err());
    }

    #[test]
    fn operator_examples() {
        let p = parse_operator("(D-2)^2*(D+4)^2").unwrap();
        assert_eq!(p, RatPoly::from_i64(&[64, -32, -12, 4, 1]));
        let q = parse_operator("y'''' + 2*y'' + y").unwrap();
        assert_eq!(q, RatPoly::from_i64(&[1, 0, 2, 0, 1]));
        assert_eq!(parse_operator("D").unwrap(), RatPoly::var());
    }

    #[test]
    fn operator_forms() {
        let a = parse_operator("y'' + 3y' - 4y").unwrap();
        assert_eq!(a, RatPoly::from_i64(&[-4, 3, 1]));
        assert_eq!(parse_operator("D^2 + 3D - 4").unwrap(), a);
        assert_eq!(parse_operator("(D^2 + 3D - 4)y").unwrap(), a);
        assert_eq!(parse_operator("y^(2) + 3*y' - 4*y").unwrap(), a);
        assert_eq!(
            parse_operator("1/2 D^2").unwrap(),
            RatPoly::from_coeffs(vec![int(0), int(0), rat(1, 2)])
        );
        assert_eq!(
            parse_operator("-D + 1").unwrap(),
            RatPoly::from_i64(&[1, -1])
        );
    }

    #[test]
    fn operator_errors() {
        assert_eq!(parse_operator("0"), Err(ParseError::ZeroOperator));
        assert_eq!(parse_operator("D - D"), Err(ParseError::ZeroOperator));
        assert!(matches!(
            parse_operator("y'' + 3"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_operator("y*y'"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_operator("D + "),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_operator("(D+1"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_operator("D x"),
            Err(ParseError::Syntax { .. })
        ));
    }

    proptest! {
        #[test]
        fn print_parse_is_a_fixed_point(f in arb_forcing()) {
            let text = f.to_string();
            let back = parse_forcing(&text).unwrap();
            prop_assert_eq!(&back, &f, "text was {}", text);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn operator_display_reparses(coeffs in prop::collection::vec((-5i64..=5, 1i64..=3), 1..6)) {
            let p = RatPoly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect());
            prop_assume!(!p.is_zero());
            prop_assert_eq!(parse_operator(&p.to_string()).unwrap(), p);
        }
    }
}
