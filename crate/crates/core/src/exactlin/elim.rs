use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatMatrix;

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. Columns are scanned left to right and the pivot
/// in each column is the first nonzero entry at or below the current row.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let t = &factor * &a[(r, j)];
                    a[(i, j)] = &a[(i, j)] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).pivots.len()
}

/// Rank and a basis of the right kernel `{v : M v = 0}`.
///
/// The kernel basis has one vector per free column, in increasing column
/// order; each vector has a 1 in its free column and zeros in the other free
/// columns.
pub fn rank_kernel(m: &RatMatrix) -> (usize, Vec<Vec<BigRational>>) {
    let Rref { matrix, pivots } = rref(m);
    let cols = m.cols();
    let mut is_pivot = alloc::vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let mut kernel = Vec::new();
    for free in 0..cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = alloc::vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &c) in pivots.iter().enumerate() {
            let e = &matrix[(row, free)];
            if !e.is_zero() {
                v[c] = -e.clone();
            }
        }
        kernel.push(v);
    }
    (pivots.len(), kernel)
}

/// Indices of a lexicographically first maximal independent subset of the
/// columns of `m`.
pub fn pivot_columns(m: &RatMatrix) -> Vec<usize> {
    rref(m).pivots
}

/// Left inverse of a matrix with independent columns: returns `L` with
/// `L * M = I`. `None` when the columns are dependent.
pub fn left_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let (rows, cols) = m.shape();
    // Row-reduce [M | I]; the top `cols` rows of the right block form L.
    let aug = RatMatrix::from_fn(rows, cols + rows, |i, j| {
        if j < cols {
            m[(i, j)].clone()
        } else if j - cols == i {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let red = rref(&aug);
    if red.pivots.iter().take_while(|&&p| p < cols).count() < cols {
        return None;
    }
    Some(RatMatrix::from_fn(cols, rows, |i, j| {
        red.matrix[(i, cols + j)].clone()
    }))
}

/// Some solution of `M x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let (rows, cols) = m.shape();
    assert_eq!(b.len(), rows);
    let aug = RatMatrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let red = rref(&aug);
    if red.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = alloc::vec![BigRational::zero(); cols];
    for (row, &c) in red.pivots.iter().enumerate() {
        x[c] = red.matrix[(row, cols)].clone();
    }
    Some(x)
}
