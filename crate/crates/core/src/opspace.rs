//! Solution bases and the matrix differential operator on them.
//!
//! A basis for one `(α, β)` mode is
//! `x^{k+m} e^{αx}, …, e^{αx}` when `β = 0` and
//! `x^{k+m} e^{αx} sin βx, x^{k+m} e^{αx} cos βx, …, e^{αx} sin βx, e^{αx} cos βx`
//! otherwise. Column `j` of the operator matrix holds the coordinates of the
//! derivative of basis function `j`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{RatPoly, Rational};
use crate::forcing::{canonicalize, ForcingFunction, ForcingTerm, TrigKind};
use crate::linalg::{LinalgError, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("term {0} lies outside the span of the basis")]
    OutsideSpan(String),
    #[error("derivative of basis function {0} escapes the span")]
    NotClosed(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A unit-coefficient member `x^power e^{αx} trig(βx)` of a basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisFunction {
    pub power: u32,
    pub alpha: Rational,
    pub beta: Rational,
    pub trig: TrigKind,
}

impl BasisFunction {
    pub fn as_term(&self, coef: Rational) -> ForcingTerm {
        ForcingTerm::new(
            coef,
            self.power,
            self.alpha.clone(),
            self.beta.clone(),
            self.trig,
        )
    }
}

impl std::fmt::Display for BasisFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_term(Rational::one()))
    }
}

/// Ordered basis of one mode: powers descending, `sin` before `cos`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    alpha: Rational,
    beta: Rational,
    top_power: u32,
    functions: Vec<BasisFunction>,
}

/// Builds the basis of size `k+m+1` (`β = 0`) or `2(k+m+1)` (`β > 0`).
pub fn build_basis(alpha: Rational, beta: Rational, m: u32, k: u32) -> Basis {
    let top_power = k + m;
    let trigs: &[TrigKind] = if beta.is_zero() {
        &[TrigKind::One]
    } else {
        &[TrigKind::Sin, TrigKind::Cos]
    };
    let functions = (0..=top_power)
        .rev()
        .flat_map(|power| {
            trigs.iter().map({
                let (alpha, beta) = (alpha.clone(), beta.clone());
                move |&trig| BasisFunction {
                    power,
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    trig,
                }
            })
        })
        .collect();
    Basis {
        alpha,
        beta,
        top_power,
        functions,
    }
}

impl Basis {
    pub fn functions(&self) -> &[BasisFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// Functions per power of `x`: 1 for `β = 0`, 2 otherwise.
    pub fn block_size(&self) -> usize {
        if self.beta.is_zero() {
            1
        } else {
            2
        }
    }

    pub fn index_of(&self, t: &ForcingTerm) -> Option<usize> {
        if t.alpha != self.alpha || t.beta != self.beta || t.power > self.top_power {
            return None;
        }
        let offset = match (self.block_size(), t.trig) {
            (1, TrigKind::One) => 0,
            (2, TrigKind::Sin) => 0,
            (2, TrigKind::Cos) => 1,
            _ => return None,
        };
        Some((self.top_power - t.power) as usize * self.block_size() + offset)
    }
}

/// Coordinates of `f` in `basis`.
pub fn coordinates(f: &ForcingFunction, basis: &Basis) -> Result<Vec<Rational>, OpError> {
    let mut v = vec![Rational::zero(); basis.len()];
    for t in f.terms() {
        let i = basis
            .index_of(t)
            .ok_or_else(|| OpError::OutsideSpan(t.to_string()))?;
        v[i] = t.coef.clone();
    }
    Ok(v)
}

/// The function with coordinates `v` in `basis`.
pub fn from_coordinates(v: &[Rational], basis: &Basis) -> ForcingFunction {
    canonicalize(
        basis
            .functions
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| b.as_term(c.clone())),
    )
}

/// A square matrix acting on coordinates in `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOperator {
    pub basis: Basis,
    pub matrix: RatMatrix,
}

/// The matrix of `d/dx` on the span of `basis`.
pub fn build_matrix_operator(basis: &Basis) -> Result<MatrixOperator, OpError> {
    let n = basis.len();
    let mut matrix = RatMatrix::zeros(n, n);
    for (j, b) in basis.functions.iter().enumerate() {
        let d = ForcingFunction::from_term(b.as_term(Rational::one())).differentiate();
        let col = coordinates(&d, basis).map_err(|_| OpError::NotClosed(b.to_string()))?;
        for (i, c) in col.into_iter().enumerate() {
            matrix[(i, j)] = c;
        }
    }
    Ok(MatrixOperator {
        basis: basis.clone(),
        matrix,
    })
}

/// `φ(𝒟) = a_n 𝒟^n + … + a_1 𝒟 + a_0 I` by Horner's scheme.
pub fn operator_polynomial(phi: &RatPoly, d: &MatrixOperator) -> MatrixOperator {
    let n = d.matrix.rows();
    let mut acc = RatMatrix::zeros(n, n);
    for c in phi.coeffs().iter().rev() {
        acc = &acc * &d.matrix;
        acc.add_scalar_identity(c);
    }
    MatrixOperator {
        basis: d.basis.clone(),
        matrix: acc,
    }
}

pub fn apply(op: &MatrixOperator, v: &[Rational]) -> Result<Vec<Rational>, OpError> {
    Ok(op.matrix.mul_vec(v)?)
}
