//! Polynomial right-hand sides by truncating the power series of `1/φ(D)`.

use num_traits::Zero;

use super::SolveError;
use crate::exactnum::{RatPoly, Rational};
use crate::forcing::{canonicalize, ForcingFunction, ForcingTerm};

/// First `count` coefficients of the series `1/φ(D) = c_0 + c_1 D + …`.
///
/// Requires `a_0 ≠ 0`.
pub fn maclaurin_coefficients(phi: &RatPoly, count: usize) -> Result<Vec<Rational>, SolveError> {
    if phi.is_zero() {
        return Err(SolveError::ZeroOperator);
    }
    let a0 = phi.coeff(0);
    if a0.is_zero() {
        return Err(SolveError::VanishingConstantTerm);
    }
    let n = phi.degree().unwrap_or(0);
    let q: Vec<Rational> = (1..=n).map(|i| -phi.coeff(i) / &a0).collect();
    let mut c: Vec<Rational> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            c.push(a0.recip());
            continue;
        }
        let ck = (1..=n.min(k)).fold(Rational::zero(), |acc, i| acc + &q[i - 1] * &c[k - i]);
        c.push(ck);
    }
    Ok(c)
}

fn antiderivative(p: &ForcingFunction) -> ForcingFunction {
    canonicalize(p.terms().iter().map(|t| {
        ForcingTerm::monomial(
            &t.coef / Rational::from_integer((t.power + 1).into()),
            t.power + 1,
        )
    }))
}

/// Particular solution of `φ(D) y = P` for polynomial `P`.
///
/// When `φ = D^t ψ` with `ψ(0) ≠ 0`, solves with `ψ` and antidifferentiates
/// `t` times using zero constants.
pub fn solve_poly_maclaurin(
    phi: &RatPoly,
    p: &ForcingFunction,
) -> Result<ForcingFunction, SolveError> {
    if phi.is_zero() {
        return Err(SolveError::ZeroOperator);
    }
    if !p.is_polynomial() {
        return Err(SolveError::NonPolynomialForMaclaurin);
    }
    if p.is_zero() {
        return Ok(ForcingFunction::zero());
    }
    let t = phi.low_order_zeros();
    let reduced = phi.shift_down(t);
    let deg_p = p.terms().iter().map(|term| term.power).max().unwrap_or(0) as usize;
    let c = maclaurin_coefficients(&reduced, deg_p + 1)?;
    let mut y = ForcingFunction::zero();
    let mut dj = p.clone();
    for cj in &c {
        y = &y + &dj.scale(cj);
        dj = dj.differentiate();
    }
    for _ in 0..t {
        y = antiderivative(&y);
    }
    Ok(y)
}
