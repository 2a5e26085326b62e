//! Particular solutions of `φ(D) y = f`.
//!
//! The right-hand side is split into `(α, β)` modes; each mode is solved in
//! its own basis and the results are added. Every solution is substituted
//! back symbolically and a nonzero residual is an error.

mod maclaurin;

pub use maclaurin::{maclaurin_coefficients, solve_poly_maclaurin};

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::{GaussianRational, RatPoly, Rational};
use crate::forcing::{ForcingFunction, Mode};
use crate::linalg::{solve_traced, LinalgError, RatMatrix, SolveRoute};
use crate::opspace::{
    build_basis, build_matrix_operator, coordinates, from_coordinates, operator_polynomial, Basis,
    OpError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    MatrixMultiplicity,
    MatrixAdaptive,
    Maclaurin,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::MatrixMultiplicity => "matrix",
            Method::MatrixAdaptive => "adaptive",
            Method::Maclaurin => "maclaurin",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("zero operator")]
    ZeroOperator,
    #[error("the maclaurin method needs a polynomial right-hand side")]
    NonPolynomialForMaclaurin,
    #[error("the operator has a vanishing constant term")]
    VanishingConstantTerm,
    #[error("escalation limit exceeded after {0} steps")]
    EscalationLimit(usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("verification failed: residual {0}")]
    Verification(ForcingFunction),
}

impl From<OpError> for SolveError {
    fn from(e: OpError) -> Self {
        SolveError::Internal(e.to_string())
    }
}

impl From<LinalgError> for SolveError {
    fn from(e: LinalgError) -> Self {
        SolveError::Internal(e.to_string())
    }
}

/// Matrices behind one mode solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeWork {
    pub k: usize,
    pub derivative: RatMatrix,
    pub phi_matrix: RatMatrix,
    pub route: SolveRoute,
    pub generalized_inverse: RatMatrix,
    pub rhs: Vec<Rational>,
    /// Bases rejected as unsolvable before the final one (adaptive only).
    pub rejected: Vec<Basis>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeSolution {
    pub alpha: Rational,
    pub beta: Rational,
    pub basis: Basis,
    pub coords: Vec<Rational>,
    pub work: Option<ModeWork>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub expression: ForcingFunction,
    pub per_mode: Vec<ModeSolution>,
    pub residual: ForcingFunction,
    pub method: Method,
}

/// `Σ a_j y^{(j)} − f`, canonical; zero when `y` is a particular solution.
pub fn verify_particular(
    phi: &RatPoly,
    y: &ForcingFunction,
    f: &ForcingFunction,
) -> ForcingFunction {
    let mut acc = -f;
    let mut dj = y.clone();
    for a in phi.coeffs() {
        if !a.is_zero() {
            acc = &acc + &dj.scale(a);
        }
        dj = dj.differentiate();
    }
    acc
}

fn require_nonempty(mode: &Mode) -> Result<(), SolveError> {
    if mode.terms.is_empty() {
        return Err(SolveError::Internal("empty mode".into()));
    }
    Ok(())
}

struct Attempt {
    basis: Basis,
    work: ModeWork,
    coords: Vec<Rational>,
}

fn mode_basis(mode: &Mode, k: usize) -> Basis {
    build_basis(
        mode.alpha.clone(),
        mode.beta.clone(),
        mode.max_degree,
        k as u32,
    )
}

fn attempt(phi: &RatPoly, mode: &Mode, k: usize) -> Result<Attempt, LinalgError> {
    let basis = mode_basis(mode, k);
    let d = build_matrix_operator(&basis).expect("bases are closed under differentiation");
    let a = operator_polynomial(phi, &d);
    let rhs = coordinates(&mode.forcing(), &basis).expect("forcing lies in its own mode basis");
    let sol = solve_traced(&a.matrix, &rhs)?;
    Ok(Attempt {
        coords: sol.x,
        work: ModeWork {
            k,
            derivative: d.matrix,
            phi_matrix: a.matrix,
            route: sol.route,
            generalized_inverse: sol.generalized_inverse,
            rhs,
            rejected: Vec::new(),
        },
        basis,
    })
}

/// Zero first `dk` rows and zero last `dk` columns.
fn has_shell_structure(a: &RatMatrix, dk: usize) -> bool {
    let n = a.rows();
    dk <= n && (0..dk).all(|i| a.row_is_zero(i)) && (n - dk..n).all(|j| a.col_is_zero(j))
}

/// Solves one mode in the basis sized by the root multiplicity of `α + βi`.
pub fn solve_mode_multiplicity(phi: &RatPoly, mode: &Mode) -> Result<ModeSolution, SolveError> {
    require_nonempty(mode)?;
    let z = GaussianRational::new(mode.alpha.clone(), mode.beta.clone());
    let k = phi
        .root_multiplicity(&z)
        .map_err(|_| SolveError::ZeroOperator)?;
    let Attempt {
        basis,
        work,
        coords,
    } = attempt(phi, mode, k)?;
    let dk = basis.block_size() * k;
    if k > 0 && !has_shell_structure(&work.phi_matrix, dk) {
        return Err(SolveError::Internal(format!(
            "operator matrix lacks the expected zero blocks of size {dk}"
        )));
    }
    Ok(ModeSolution {
        alpha: mode.alpha.clone(),
        beta: mode.beta.clone(),
        basis,
        coords,
        work: Some(work),
    })
}

/// Solves one mode starting from the smallest basis and multiplying the span
/// by `x` while the system stays unsolvable.
pub fn solve_mode_adaptive(
    phi: &RatPoly,
    mode: &Mode,
    max_escalations: usize,
) -> Result<ModeSolution, SolveError> {
    require_nonempty(mode)?;
    if phi.is_zero() {
        return Err(SolveError::ZeroOperator);
    }
    let mut rejected = Vec::new();
    for k in 0..=max_escalations {
        match attempt(phi, mode, k) {
            Ok(Attempt {
                basis,
                mut work,
                coords,
            }) => {
                work.rejected = rejected;
                return Ok(ModeSolution {
                    alpha: mode.alpha.clone(),
                    beta: mode.beta.clone(),
                    basis,
                    coords,
                    work: Some(work),
                });
            }
            Err(LinalgError::Unsolvable) => rejected.push(mode_basis(mode, k)),
            Err(e) => return Err(e.into()),
        }
    }
    Err(SolveError::EscalationLimit(max_escalations))
}

fn solve_maclaurin(phi: &RatPoly, f: &ForcingFunction) -> Result<Vec<ModeSolution>, SolveError> {
    let y = solve_poly_maclaurin(phi, f)?;
    if y.is_zero() {
        return Ok(Vec::new());
    }
    let top = y.terms().iter().map(|t| t.power).max().unwrap_or(0);
    let basis = build_basis(Rational::zero(), Rational::zero(), top, 0);
    let coords = coordinates(&y, &basis)?;
    Ok(vec![ModeSolution {
        alpha: Rational::zero(),
        beta: Rational::zero(),
        basis,
        coords,
        work: None,
    }])
}

/// A particular solution of `φ(D) y = f`, verified by substitution.
pub fn particular_solution(
    phi: &RatPoly,
    f: &ForcingFunction,
    method: Method,
) -> Result<Solution, SolveError> {
    if phi.is_zero() {
        return Err(SolveError::ZeroOperator);
    }
    let per_mode = match method {
        Method::Maclaurin => solve_maclaurin(phi, f)?,
        Method::MatrixMultiplicity | Method::MatrixAdaptive => {
            let bound = phi.degree().unwrap_or(0);
            f.split_modes()
                .par_iter()
                .map(|mode| match method {
                    Method::MatrixAdaptive => solve_mode_adaptive(phi, mode, bound),
                    _ => solve_mode_multiplicity(phi, mode),
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let expression = per_mode.iter().fold(ForcingFunction::zero(), |acc, m| {
        &acc + &from_coordinates(&m.coords, &m.basis)
    });
    let residual = verify_particular(phi, &expression, f);
    if !residual.is_zero() {
        return Err(SolveError::Verification(residual));
    }
    Ok(Solution {
        expression,
        per_mode,
        residual,
        method,
    })
}

/// An antiderivative of `f` with zero constant.
pub fn integrate(f: &ForcingFunction) -> Result<ForcingFunction, SolveError> {
    particular_solution(&RatPoly::var(), f, Method::MatrixMultiplicity).map(|s| s.expression)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::forcing::parse_forcing;

    fn op(c: &[i64]) -> RatPoly {
        RatPoly::from_i64(c)
    }

    fn f(s: &str) -> ForcingFunction {
        parse_forcing(s).unwrap()
    }

    fn only_mode(s: &str) -> Mode {
        let mut modes = f(s).split_modes();
        assert_eq!(modes.len(), 1);
        modes.remove(0)
    }

    fn check(phi: &RatPoly, rhs: &str, expected: &str) {
        for method in [Method::MatrixMultiplicity, Method::MatrixAdaptive] {
            let s = particular_solution(phi, &f(rhs), method).unwrap();
            assert_eq!(s.expression, f(expected), "{method:?} on {rhs}");
            assert!(s.residual.is_zero());
        }
    }

    #[test]
    fn worked_examples() {
        // y'' + 3y' - 4y
        check(&op(&[-4, 3, 1]), "x*e^(2x)", "1/6*x*e^(2x) - 7/36*e^(2x)");
        check(
            &op(&[-4, 3, 1]),
            "2*x*e^(2x) - 3*e^(2x)",
            "1/3*x*e^(2x) - 8/9*e^(2x)",
        );
        // (D² + 1)²
        check(
            &op(&[1, 0, 2, 0, 1]),
            "2*sin(1x) - 4*cos(1x)",
            "-1/4*x^2*sin(1x) + 1/2*x^2*cos(1x)",
        );
        // (D - 2)²(D + 4)²
        check(&op(&[64, -32, -12, 4, 1]), "3*e^(2x)", "1/24*x^2*e^(2x)");
        check(
            &op(&[13, -4, 1]),
            "2*x*e^(2x)*cos(3x)",
            "1/6*x^2*e^(2x)*sin(3x) + 1/18*x*e^(2x)*cos(3x)",
        );
        check(
            &op(&[16, -5, 1]),
            "x*e^(2x)*sin(3x)",
            "1/10*x*e^(2x)*sin(3x) + 7/25*e^(2x)*sin(3x) + 3/10*x*e^(2x)*cos(3x) + 27/50*e^(2x)*cos(3x)",
        );
        check(
            &op(&[1, 0, 1]),
            "x*cos(1x)",
            "1/4*x^2*sin(1x) + 1/4*x*cos(1x)",
        );
        check(
            &op(&[13, 6, 1]),
            "2*x*e^(-3x)*sin(2x) - 4*x*e^(-3x)*cos(2x)",
            "-1/2*x^2*e^(-3x)*sin(2x) - 1/4*x^2*e^(-3x)*cos(2x) + 1/8*x*e^(-3x)*sin(2x) - 1/4*x*e^(-3x)*cos(2x)",
        );
        check(&op(&[0, 1]), "x", "1/2*x^2");
        check(
            &op(&[1, 2, -1, 1]),
            "x^3 + 2*x^2 + 3*x",
            "x^3 - 4*x^2 + 25*x - 64",
        );
    }

    #[test]
    fn mode_vectors() {
        let s =
            solve_mode_multiplicity(&op(&[13, -4, 1]), &only_mode("2*x*e^(2x)*cos(3x)")).unwrap();
        assert_eq!(s.basis.len(), 6);
        assert_eq!(
            s.coords,
            vec![rat(1, 6), int(0), int(0), rat(1, 18), int(0), int(0)]
        );
        assert_eq!(s.work.as_ref().unwrap().k, 1);

        let s =
            solve_mode_multiplicity(&op(&[-4, 3, 1]), &only_mode("2*x*e^(2x) - 3*e^(2x)")).unwrap();
        assert_eq!(s.coords, vec![rat(1, 3), rat(-8, 9)]);

        let s = solve_mode_multiplicity(&op(&[0, 1]), &only_mode("x")).unwrap();
        assert_eq!(s.coords, vec![rat(1, 2), int(0), int(0)]);
    }

    #[test]
    fn adaptive_escalation_counts() {
        let s = solve_mode_adaptive(&op(&[0, 1]), &only_mode("x"), 1).unwrap();
        assert_eq!(s.work.unwrap().rejected.len(), 1);
        let s = solve_mode_adaptive(
            &op(&[1, 0, 2, 0, 1]),
            &only_mode("2*sin(1x) - 4*cos(1x)"),
            4,
        )
        .unwrap();
        let w = s.work.unwrap();
        assert_eq!((w.k, w.rejected.len()), (2, 2));
        let s = solve_mode_adaptive(&op(&[-4, 3, 1]), &only_mode("x*e^(2x)"), 2).unwrap();
        assert_eq!(s.work.unwrap().k, 0);
        assert_eq!(
            solve_mode_adaptive(&op(&[1, 0, 2, 0, 1]), &only_mode("sin(1x)"), 1),
            Err(SolveError::EscalationLimit(1))
        );
    }

    #[test]
    fn shell_structure_in_singular_solves() {
        let s = solve_mode_multiplicity(&op(&[13, 6, 1]), &only_mode("x*e^(-3x)*sin(2x)")).unwrap();
        let w = s.work.unwrap();
        assert!(matches!(w.route, SolveRoute::Shell(_)));
        assert!(has_shell_structure(&w.phi_matrix, 2));
    }

    #[test]
    fn integration() {
        assert_eq!(
            integrate(&f("13*x*e^(2x)*sin(3x) - 13*x*e^(2x)*cos(3x) + 5*e^(2x)*sin(3x) - 4*e^(2x)*cos(3x)")).unwrap(),
            f("-x*e^(2x)*sin(3x) - 5*x*e^(2x)*cos(3x) + 15/13*e^(2x)*sin(3x) - 16/13*e^(2x)*cos(3x)")
        );
        assert!(integrate(&ForcingFunction::zero()).unwrap().is_zero());
        assert_eq!(integrate(&f("cos(1x)")).unwrap(), f("sin(1x)"));
    }

    #[test]
    fn verification_examples() {
        assert!(verify_particular(
            &op(&[1, 0, 1]),
            &f("1/4*x^2*sin(1x) + 1/4*x*cos(1x)"),
            &f("x*cos(1x)")
        )
        .is_zero());
        assert!(verify_particular(
            &op(&[3, 1]),
            &ForcingFunction::zero(),
            &ForcingFunction::zero()
        )
        .is_zero());
        assert!(verify_particular(&op(&[0, 1]), &f("1/2*x^2"), &f("x")).is_zero());
        assert_eq!(
            verify_particular(&op(&[0, 1]), &f("x"), &f("x")),
            f("1 - x")
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            particular_solution(&RatPoly::zero(), &f("x"), Method::MatrixMultiplicity),
            Err(SolveError::ZeroOperator)
        );
        assert_eq!(
            particular_solution(&op(&[1, 1]), &f("sin(1x)"), Method::Maclaurin),
            Err(SolveError::NonPolynomialForMaclaurin)
        );
        let s = particular_solution(
            &op(&[1, 1]),
            &ForcingFunction::zero(),
            Method::MatrixMultiplicity,
        )
        .unwrap();
        assert!(s.expression.is_zero() && s.per_mode.is_empty());
    }
}
