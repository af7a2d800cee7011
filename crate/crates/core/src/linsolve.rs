//! Dense Gauss-Jordan elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinSolveError {
    #[error("inconsistent linear system (row {row} reduces to 0 = nonzero)")]
    Inconsistent { row: usize },
    #[error("matrix rows have differing lengths")]
    Ragged,
}

/// Reduced row echelon form of a matrix, with pivot column per nonzero row.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(mut a: Vec<Vec<BigRational>>, ncols: usize) -> Result<Rref, LinSolveError> {
    if a.iter().any(|r| r.len() != ncols) {
        return Err(LinSolveError::Ragged);
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = BigRational::one() / &a[row][col];
        for v in a[row].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row).skip(col) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    Ok(Rref {
        rows: a,
        pivots,
        ncols,
    })
}

/// Solution of `A x = b`: a particular solution (free variables set to zero) and
/// the number of free variables.
#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Vec<BigRational>,
    pub free: usize,
}

pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Solution, LinSolveError> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let red = rref(aug, ncols + 1)?;
    if let Some(i) = red.pivots.iter().position(|&c| c == ncols) {
        return Err(LinSolveError::Inconsistent { row: i });
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &c) in red.rows.iter().zip(&red.pivots) {
        x[c] = r[ncols].clone();
    }
    Ok(Solution {
        x,
        free: ncols - red.rank(),
    })
}

/// Basis of `{x : A x = 0}`, one vector per free column.
pub fn nullspace(a: &[Vec<BigRational>], ncols: usize) -> Result<Vec<Vec<BigRational>>, LinSolveError> {
    let red = rref(a.to_vec(), ncols)?;
    let mut is_pivot = vec![false; ncols];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (r, &c) in red.rows.iter().zip(&red.pivots) {
            v[c] = -r[free].clone();
        }
        basis.push(v);
    }
    Ok(basis)
}
