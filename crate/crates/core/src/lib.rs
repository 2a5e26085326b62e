//! Particular solutions of linear ODEs with constant coefficients.
//!
//! A right-hand side built from terms `x^p e^{αx}`, `x^p e^{αx} sin βx` and
//! `x^p e^{αx} cos βx` determines a finite function space closed under
//! differentiation. On that space `d/dx` is a matrix, `φ(D)` becomes
//! `φ(𝒟)`, and the ODE turns into a linear system solved exactly with the
//! Moore-Penrose pseudoinverse, even when `φ(𝒟)` is singular.
//!
//! ```
//! use pinvode::{parse_forcing, parse_operator, particular_solution, Method};
//!
//! let phi = parse_operator("D^2 - 4D + 13").unwrap();
//! let f = parse_forcing("2*x*e^(2x)*cos(3x)").unwrap();
//! let y = particular_solution(&phi, &f, Method::MatrixMultiplicity).unwrap();
//! assert_eq!(y.expression.to_string(), "1/6*x^2*e^(2x)*sin(3x) + 1/18*x*e^(2x)*cos(3x)");
//! ```

pub mod cli;
pub mod exactnum;
pub mod forcing;
pub mod linalg;
pub mod opspace;
pub mod solver;

pub use exactnum::{GaussianRational, RatPoly, Rational};
pub use forcing::{parse_forcing, parse_operator, ForcingFunction, ForcingTerm, Mode, TrigKind};
pub use linalg::RatMatrix;
pub use solver::{integrate, particular_solution, verify_particular, Method, Solution, SolveError};
