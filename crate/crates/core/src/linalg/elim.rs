use num_traits::{One, Zero};

use super::{LinalgError, RatMatrix};
use crate::exactnum::Rational;

/// Reduced row echelon form and pivot columns.
///
/// The pivot is the first nonzero entry at or below the current row; exact
/// arithmetic makes magnitude-based pivoting unnecessary.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let inv = m[(r, c)].recip();
        for j in c..cols {
            let v = &m[(r, j)] * &inv;
            m[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..cols {
                let v = &m[(r, j)] * &factor;
                m[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).1.len()
}

/// Gauss-Jordan inverse of a square matrix.
pub fn invert(a: &RatMatrix) -> Result<RatMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut aug = RatMatrix::zeros(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, &RatMatrix::identity(n));
    let (reduced, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    Ok(reduced.block(0, n, n, n))
}

/// A basis of `{v : A v = 0}`, one vector per free column.
pub fn null_space(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a);
    let cols = a.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::zeros(3, 4)), 0);
        // φ(𝒟_B) for y'''' + 2y'' + y on the 6-function sin/cos basis: only
        // rows 5 and 6 are nonzero, (-8, 0, ...) and (0, -8, ...).
        let mut a = RatMatrix::zeros(6, 6);
        a[(4, 0)] = rat(-8, 1);
        a[(5, 1)] = rat(-8, 1);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn invert_examples() {
        let a = RatMatrix::from_i64(&[&[6, 0], &[5, -4]]);
        let expected = RatMatrix::from_rows(vec![
            vec![rat(1, 6), rat(0, 1)],
            vec![rat(5, 24), rat(-1, 4)],
        ]);
        assert_eq!(invert(&a).unwrap(), expected);

        let d =
            RatMatrix::from_i64(&[&[2, -3, 0, 0], &[3, 2, 0, 0], &[1, 0, 2, -3], &[0, 1, 3, 2]]);
        let expected = RatMatrix::from_rows(vec![
            vec![rat(2, 13), rat(3, 13), rat(0, 1), rat(0, 1)],
            vec![rat(-3, 13), rat(2, 13), rat(0, 1), rat(0, 1)],
            vec![rat(5, 169), rat(-12, 169), rat(2, 13), rat(3, 13)],
            vec![rat(12, 169), rat(5, 169), rat(-3, 13), rat(2, 13)],
        ]);
        assert_eq!(invert(&d).unwrap(), expected);
        assert_eq!(
            invert(&RatMatrix::identity(4)).unwrap(),
            RatMatrix::identity(4)
        );
    }

    #[test]
    fn invert_errors() {
        assert_eq!(
            invert(&RatMatrix::zeros(2, 3)),
            Err(LinalgError::NotSquare(2, 3))
        );
        let s = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(invert(&s), Err(LinalgError::Singular));
    }

    #[test]
    fn null_space_vectors_are_annihilated() {
        let a = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = null_space(&a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }
}
