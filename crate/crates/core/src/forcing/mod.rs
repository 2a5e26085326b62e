//! Right-hand sides and solutions as canonical sums of
//! `c · x^p · e^{αx} · {1, sin βx, cos βx}` terms.

mod parse;
mod print;

pub use parse::{parse_forcing, parse_operator, ParseError};

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrigKind {
    One,
    Sin,
    Cos,
}

impl TrigKind {
    pub fn name(self) -> &'static str {
        match self {
            TrigKind::One => "one",
            TrigKind::Sin => "sin",
            TrigKind::Cos => "cos",
        }
    }
}

/// One summand `coef · x^power · e^{alpha x} · trig(beta x)`.
///
/// Inside a [`ForcingFunction`] the coefficient is nonzero, `beta >= 0`, and
/// `trig == One` exactly when `beta == 0`. Free-standing terms may violate
/// this; [`canonicalize`] repairs them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForcingTerm {
    pub coef: Rational,
    pub power: u32,
    pub alpha: Rational,
    pub beta: Rational,
    pub trig: TrigKind,
}

impl ForcingTerm {
    pub fn new(
        coef: Rational,
        power: u32,
        alpha: Rational,
        beta: Rational,
        trig: TrigKind,
    ) -> Self {
        Self {
            coef,
            power,
            alpha,
            beta,
            trig,
        }
    }

    /// `coef · x^power`.
    pub fn monomial(coef: Rational, power: u32) -> Self {
        Self::new(
            coef,
            power,
            Rational::zero(),
            Rational::zero(),
            TrigKind::One,
        )
    }

    fn key(&self) -> TermKey {
        TermKey {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            power: Reverse(self.power),
            trig: self.trig,
        }
    }

    /// Same function up to the coefficient.
    pub fn same_shape(&self, other: &ForcingTerm) -> bool {
        self.power == other.power
            && self.trig == other.trig
            && self.alpha == other.alpha
            && self.beta == other.beta
    }

    fn derivative_terms(&self) -> impl Iterator<Item = ForcingTerm> {
        let mut out = Vec::with_capacity(3);
        let shaped = |coef: Rational, power: u32, trig: TrigKind| {
            ForcingTerm::new(coef, power, self.alpha.clone(), self.beta.clone(), trig)
        };
        if self.power > 0 {
            let c = &self.coef * Rational::from_integer(BigInt::from(self.power));
            out.push(shaped(c, self.power - 1, self.trig));
        }
        out.push(shaped(&self.coef * &self.alpha, self.power, self.trig));
        match self.trig {
            TrigKind::One => {}
            TrigKind::Sin => out.push(shaped(&self.coef * &self.beta, self.power, TrigKind::Cos)),
            TrigKind::Cos => out.push(shaped(
                -(&self.coef * &self.beta),
                self.power,
                TrigKind::Sin,
            )),
        }
        out.into_iter()
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let trig = match self.trig {
            TrigKind::One => 1.0,
            TrigKind::Sin => (to_f64(&self.beta) * x).sin(),
            TrigKind::Cos => (to_f64(&self.beta) * x).cos(),
        };
        to_f64(&self.coef) * x.powi(self.power as i32) * (to_f64(&self.alpha) * x).exp() * trig
    }
}

/// Canonical sort key: `(alpha, beta, power desc, One < Sin < Cos)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct TermKey {
    alpha: Rational,
    beta: Rational,
    power: Reverse<u32>,
    trig: TrigKind,
}

/// A canonical finite sum of [`ForcingTerm`]s. The empty sum is the zero
/// function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ForcingFunction {
    terms: Vec<ForcingTerm>,
}

/// Merges like terms, drops zeros, folds the sign of β by parity and sorts.
pub fn canonicalize<I: IntoIterator<Item = ForcingTerm>>(terms: I) -> ForcingFunction {
    let mut merged: BTreeMap<TermKey, ForcingTerm> = BTreeMap::new();
    for mut t in terms {
        if t.trig == TrigKind::One {
            t.beta = Rational::zero();
        } else if t.beta.is_zero() {
            if t.trig == TrigKind::Sin {
                continue;
            }
            t.trig = TrigKind::One;
        } else if t.beta.is_negative() {
            t.beta = -t.beta;
            if t.trig == TrigKind::Sin {
                t.coef = -t.coef;
            }
        }
        if t.coef.is_zero() {
            continue;
        }
        match merged.get_mut(&t.key()) {
            Some(existing) => existing.coef += &t.coef,
            None => {
                merged.insert(t.key(), t);
            }
        }
    }
    ForcingFunction {
        terms: merged.into_values().filter(|t| !t.coef.is_zero()).collect(),
    }
}

impl ForcingFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(term: ForcingTerm) -> Self {
        canonicalize([term])
    }

    pub fn terms(&self) -> &[ForcingTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term has `alpha = 0` and `beta = 0`.
    pub fn is_polynomial(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.alpha.is_zero() && t.beta.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        canonicalize(self.terms.iter().map(|t| {
            let mut t = t.clone();
            t.coef *= c;
            t
        }))
    }

    /// Exact derivative by the product rule, term by term.
    pub fn differentiate(&self) -> Self {
        canonicalize(self.terms.iter().flat_map(ForcingTerm::derivative_terms))
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            if f.is_zero() {
                break;
            }
            f = f.differentiate();
        }
        f
    }

    /// Floating-point evaluation of the symbolic form.
    pub fn evaluate_numeric(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.evaluate(x)).sum()
    }

    /// Groups terms by `(alpha, beta)`; modes come out in canonical order.
    pub fn split_modes(&self) -> Vec<Mode> {
        let mut modes: Vec<Mode> = Vec::new();
        for t in &self.terms {
            match modes.last_mut() {
                Some(m) if m.alpha == t.alpha && m.beta == t.beta => {
                    m.max_degree = m.max_degree.max(t.power);
                    m.terms.push(t.clone());
                }
                _ => modes.push(Mode {
                    alpha: t.alpha.clone(),
                    beta: t.beta.clone(),
                    max_degree: t.power,
                    terms: vec![t.clone()],
                }),
            }
        }
        modes
    }
}

impl Add for &ForcingFunction {
    type Output = ForcingFunction;
    fn add(self, rhs: Self) -> ForcingFunction {
        canonicalize(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl Sub for &ForcingFunction {
    type Output = ForcingFunction;
    fn sub(self, rhs: Self) -> ForcingFunction {
        self + &(-rhs)
    }
}

impl Neg for &ForcingFunction {
    type Output = ForcingFunction;
    fn neg(self) -> ForcingFunction {
        self.scale(&-Rational::one())
    }
}

impl Add for ForcingFunction {
    type Output = ForcingFunction;
    fn add(self, rhs: Self) -> ForcingFunction {
        &self + &rhs
    }
}

impl Sub for ForcingFunction {
    type Output = ForcingFunction;
    fn sub(self, rhs: Self) -> ForcingFunction {
        &self - &rhs
    }
}

impl FromIterator<ForcingTerm> for ForcingFunction {
    fn from_iter<I: IntoIterator<Item = ForcingTerm>>(iter: I) -> Self {
        canonicalize(iter)
    }
}

impl PartialOrd for ForcingTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ForcingTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key()
            .cmp(&other.key())
            .then_with(|| self.coef.cmp(&other.coef))
    }
}

/// Terms sharing one `(alpha, beta)` pair; solved independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mode {
    pub alpha: Rational,
    pub beta: Rational,
    /// Highest power of `x` among the terms.
    pub max_degree: u32,
    pub terms: Vec<ForcingTerm>,
}

impl Mode {
    pub fn forcing(&self) -> ForcingFunction {
        canonicalize(self.terms.iter().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn t(c: i64, p: u32, a: i64, b: i64, trig: TrigKind) -> ForcingTerm {
        ForcingTerm::new(int(c), p, int(a), int(b), trig)
    }

    use TrigKind::{Cos, One, Sin};

    #[test]
    fn canonicalize_examples() {
        assert!(canonicalize([t(1, 0, 0, 2, Sin), t(-1, 0, 0, 2, Sin)]).is_zero());
        assert_eq!(
            canonicalize([t(2, 1, 2, 3, Cos), t(3, 1, 2, 3, Cos)]).terms(),
            &[t(5, 1, 2, 3, Cos)]
        );
        assert_eq!(
            canonicalize([t(1, 0, 0, -2, Cos)]).terms(),
            &[t(1, 0, 0, 2, Cos)]
        );
        assert_eq!(
            canonicalize([t(1, 0, 0, -2, Sin)]).terms(),
            &[t(-1, 0, 0, 2, Sin)]
        );
        assert!(canonicalize([t(4, 2, 1, 0, Sin)]).is_zero());
        assert_eq!(
            canonicalize([t(4, 2, 1, 0, Cos)]).terms(),
            &[t(4, 2, 1, 0, One)]
        );
    }

    #[test]
    fn canonical_order_is_power_descending_sin_first() {
        let f = canonicalize([
            t(1, 0, 2, 3, Cos),
            t(1, 1, 2, 3, Cos),
            t(1, 1, 2, 3, Sin),
            t(1, 0, 2, 3, Sin),
        ]);
        let shapes: Vec<_> = f.terms().iter().map(|t| (t.power, t.trig)).collect();
        assert_eq!(shapes, vec![(1, Sin), (1, Cos), (0, Sin), (0, Cos)]);
    }

    #[test]
    fn differentiate_matches_worked_derivative() {
        let f = canonicalize([t(1, 1, 2, 3, Sin), t(2, 1, 2, 3, Cos), t(-2, 0, 2, 3, Cos)]);
        let expected = canonicalize([
            t(-4, 1, 2, 3, Sin),
            t(7, 1, 2, 3, Cos),
            t(7, 0, 2, 3, Sin),
            t(-2, 0, 2, 3, Cos),
        ]);
        assert_eq!(f.differentiate(), expected);
        assert!(canonicalize([t(5, 0, 0, 0, One)]).differentiate().is_zero());
        assert_eq!(
            canonicalize([t(1, 3, 0, 0, One)]).differentiate(),
            canonicalize([t(3, 2, 0, 0, One)])
        );
    }

    #[test]
    fn split_modes_examples() {
        let f = canonicalize([t(2, 1, -3, 2, Sin), t(-4, 1, -3, 2, Cos)]);
        let modes = f.split_modes();
        assert_eq!(modes.len(), 1);
        assert_eq!(
            (
                modes[0].alpha.clone(),
                modes[0].beta.clone(),
                modes[0].max_degree
            ),
            (int(-3), int(2), 1)
        );

        let g = canonicalize([t(1, 1, 2, 0, One), t(1, 0, 0, 1, Sin)]);
        let modes = g.split_modes();
        let keys: Vec<_> = modes
            .iter()
            .map(|m| (m.alpha.clone(), m.beta.clone(), m.max_degree))
            .collect();
        assert_eq!(keys, vec![(int(0), int(1), 0), (int(2), int(0), 1)]);

        assert!(ForcingFunction::zero().split_modes().is_empty());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            canonicalize([t(1, 2, 0, 0, One)]).evaluate_numeric(3.0),
            9.0
        );
        assert_eq!(
            canonicalize([t(1, 0, 0, 0, One)]).evaluate_numeric(-7.25),
            1.0
        );
        assert_eq!(
            canonicalize([t(1, 0, 0, 1, Sin)]).evaluate_numeric(0.0),
            0.0
        );
    }

    pub(crate) fn arb_term() -> impl Strategy<Value = ForcingTerm> {
        (
            (-9i64..=9, 1i64..=4),
            0u32..4,
            (-2i64..=2, 1i64..=2),
            0i64..=3,
            prop_oneof![Just(Sin), Just(Cos)],
        )
            .prop_map(|((cn, cd), p, (an, ad), b, trig)| {
                let trig = if b == 0 { One } else { trig };
                ForcingTerm::new(rat(cn, cd), p, rat(an, ad), int(b), trig)
            })
    }

    pub(crate) fn arb_forcing() -> impl Strategy<Value = ForcingFunction> {
        prop::collection::vec(arb_term(), 0..6).prop_map(canonicalize)
    }

    proptest! {
        #[test]
        fn differentiate_is_linear(f in arb_forcing(), g in arb_forcing()) {
            prop_assert_eq!((&f + &g).differentiate(), &f.differentiate() + &g.differentiate());
        }

        #[test]
        fn split_then_concatenate_is_identity(f in arb_forcing()) {
            let rejoined: Vec<ForcingTerm> =
                f.split_modes().into_iter().flat_map(|m| m.terms).collect();
            prop_assert_eq!(rejoined.as_slice(), f.terms());
            for m in f.split_modes() {
                prop_assert_eq!(m.max_degree, m.terms.iter().map(|t| t.power).max().unwrap());
            }
        }

        #[test]
        fn derivative_agrees_with_central_difference(f in arb_forcing(), x in -1.5f64..1.5) {
            let h = 1e-5;
            let fd = (f.evaluate_numeric(x + h) - f.evaluate_numeric(x - h)) / (2.0 * h);
            let exact = f.differentiate().evaluate_numeric(x);
            let scale = exact.abs().max(f.evaluate_numeric(x).abs()).max(1.0);
            prop_assert!((fd - exact).abs() <= 1e-6 * scale, "fd {} exact {}", fd, exact);
        }
    }
}
