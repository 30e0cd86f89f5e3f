use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::Rational;
use crate::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// Rejects ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolveOutcome {
    UniqueSolution(Vec<Rational>),
    NoSolution,
    /// The solution set is a positive-dimensional affine space; the witness
    /// sets every free variable to zero.
    UnderDetermined(Vec<Rational>),
}

impl LinearSolveOutcome {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LinearSolveOutcome::UniqueSolution(x) | LinearSolveOutcome::UnderDetermined(x) => {
                Some(x)
            }
            LinearSolveOutcome::NoSolution => None,
        }
    }
}

/// Solves `a · x = b` exactly by Gauss-Jordan elimination over the rationals.
///
/// Any returned solution is substituted back before returning.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<LinearSolveOutcome> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let (rows, cols) = (a.rows, a.cols);
    let width = cols + 1;
    let mut m: Vec<Rational> = Vec::with_capacity(rows * width);
    for r in 0..rows {
        m.extend_from_slice(&a.data[r * cols..(r + 1) * cols]);
        m.push(b[r].clone());
    }

    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r * width + col].is_zero()) else {
            continue;
        };
        if p != row {
            for k in 0..width {
                m.swap(p * width + k, row * width + k);
            }
        }
        let inv = m[row * width + col].recip();
        for k in col..width {
            m[row * width + k] *= &inv;
        }
        let pivot_row: Vec<Rational> = m[row * width..(row + 1) * width].to_vec();
        for r in 0..rows {
            if r == row {
                continue;
            }
            let factor = m[r * width + col].clone();
            if factor.is_zero() {
                continue;
            }
            for k in col..width {
                if !pivot_row[k].is_zero() {
                    m[r * width + k] -= &factor * &pivot_row[k];
                }
            }
        }
        pivots.push(col);
        row += 1;
    }

    // rows below the last pivot are zero on the left; a nonzero rhs is inconsistent
    if (row..rows).any(|r| !m[r * width + cols].is_zero()) {
        return Ok(LinearSolveOutcome::NoSolution);
    }

    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r * width + cols].clone();
    }
    assert_eq!(a.mul_vec(&x), b, "linear solve produced a non-solution");
    Ok(if pivots.len() == cols {
        LinearSolveOutcome::UniqueSolution(x)
    } else {
        LinearSolveOutcome::UnderDetermined(x)
    })
}
