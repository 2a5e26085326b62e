use super::{invert, rank, rref, LinalgError, RatMatrix};
use crate::exactnum::Rational;

/// An `m×n` matrix of the form `[[0, 0], [R, 0]]`: the first `m - r` rows
/// and the last `n - r` columns vanish and the bottom-left `r×r` block `R`
/// is regular.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShellShape {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

impl ShellShape {
    /// Leading zero rows, `m - r`.
    pub fn row_padding(&self) -> usize {
        self.rows - self.rank
    }
}

/// Recognises the `[[0, 0], [R, 0]]` pattern. Matrices of full rank and zero
/// matrices are not shells.
pub fn detect_shell(a: &RatMatrix) -> Option<ShellShape> {
    let (m, n) = a.shape();
    let r = rank(a);
    if r == 0 || r == m.min(n) {
        return None;
    }
    let pad = m - r;
    if !(0..pad).all(|i| a.row_is_zero(i)) || !(r..n).all(|j| a.col_is_zero(j)) {
        return None;
    }
    invert(&a.block(pad, 0, r, r)).ok()?;
    Some(ShellShape {
        rank: r,
        rows: m,
        cols: n,
    })
}

/// `[[0, R⁻¹], [0, 0]]` (`n×m`), the Moore-Penrose inverse of a shell.
pub fn pinv_shell(a: &RatMatrix, shape: ShellShape) -> RatMatrix {
    let r = shape.rank;
    let pad = shape.row_padding();
    let r_inv = invert(&a.block(pad, 0, r, r)).expect("shell block must be regular");
    let mut x = RatMatrix::zeros(shape.cols, shape.rows);
    x.set_block(0, pad, &r_inv);
    x
}

/// Moore-Penrose inverse of any matrix through a full-rank factorization
/// `A = C·F`: `A⁺ = Fᵀ (F Fᵀ)⁻¹ (Cᵀ C)⁻¹ Cᵀ`.
///
/// `F` is the nonzero part of the reduced row echelon form and `C` the
/// pivot columns of `A`.
pub fn pinv_general(a: &RatMatrix) -> RatMatrix {
    let (reduced, pivots) = rref(a);
    let r = pivots.len();
    if r == 0 {
        return RatMatrix::zeros(a.cols(), a.rows());
    }
    let f = reduced.block(0, 0, r, a.cols());
    let mut c = RatMatrix::zeros(a.rows(), r);
    for (k, &p) in pivots.iter().enumerate() {
        for i in 0..a.rows() {
            c[(i, k)] = a[(i, p)].clone();
        }
    }
    let ft = f.transpose();
    let ct = c.transpose();
    let fft_inv = invert(&(&f * &ft)).expect("F has full row rank");
    let ctc_inv = invert(&(&ct * &c)).expect("C has full column rank");
    &(&(&ft * &fft_inv) * &ctc_inv) * &ct
}

/// The four Penrose conditions for a candidate `X` against `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PenroseReport {
    /// `A X A = A`
    pub axa: bool,
    /// `X A X = X`
    pub xax: bool,
    /// `(A X)ᵀ = A X`
    pub ax_symmetric: bool,
    /// `(X A)ᵀ = X A`
    pub xa_symmetric: bool,
}

impl PenroseReport {
    pub fn all(&self) -> bool {
        self.axa && self.xax && self.ax_symmetric && self.xa_symmetric
    }

    pub fn as_array(&self) -> [bool; 4] {
        [self.axa, self.xax, self.ax_symmetric, self.xa_symmetric]
    }
}

pub fn penrose_check(a: &RatMatrix, x: &RatMatrix) -> Result<PenroseReport, LinalgError> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(LinalgError::DimensionMismatch {
            op: "Penrose check",
            lhs: a.shape(),
            rhs: x.shape(),
        });
    }
    let ax = a.checked_mul(x)?;
    let xa = x.checked_mul(a)?;
    Ok(PenroseReport {
        axa: ax.checked_mul(a)? == *a,
        xax: xa.checked_mul(x)? == *x,
        ax_symmetric: ax.transpose() == ax,
        xa_symmetric: xa.transpose() == xa,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveRoute {
    Inverse,
    Shell(ShellShape),
    General,
}

/// Solution of `A x = b` together with the (pseudo)inverse that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracedSolution {
    pub x: Vec<Rational>,
    pub route: SolveRoute,
    pub generalized_inverse: RatMatrix,
}

/// Solves `A x = b` exactly, trying `A⁻¹`, then the shell fast path, then
/// the general pseudoinverse. Unsolvable exactly when `A A⁺ b ≠ b`.
pub fn solve_traced(a: &RatMatrix, b: &[Rational]) -> Result<TracedSolution, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            lhs: a.shape(),
            rhs: (b.len(), 1),
        });
    }
    if a.is_square() {
        if let Ok(inv) = invert(a) {
            let x = inv.mul_vec(b)?;
            return Ok(TracedSolution {
                x,
                route: SolveRoute::Inverse,
                generalized_inverse: inv,
            });
        }
    }
    let (pinv, route) = match detect_shell(a) {
        Some(shape) => (pinv_shell(a, shape), SolveRoute::Shell(shape)),
        None => (pinv_general(a), SolveRoute::General),
    };
    let x = pinv.mul_vec(b)?;
    if a.mul_vec(&x)? != b {
        return Err(LinalgError::Unsolvable);
    }
    Ok(TracedSolution {
        x,
        route,
        generalized_inverse: pinv,
    })
}

pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    solve_traced(a, b).map(|s| s.x)
}
