//! Dense matrices and fraction-free rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::polycert::poly::{MonomialSpace, MultilinearPoly};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    cols: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(Self { cols, rows })
    }

    /// An empty row list with a fixed column count.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Self { cols: size, rows }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn push_row(&mut self, row: Vec<T>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::InvalidInput(format!(
                "row of length {} in a matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        Self {
            cols: columns.len(),
            rows: self
                .rows
                .iter()
                .map(|r| columns.iter().map(|&c| r[c].clone()).collect())
                .collect(),
        }
    }
}

/// Row `i` holds the coefficients of `polys[i]` in the space's monomial order.
pub fn coefficient_matrix<T: Scalar>(
    polys: &[MultilinearPoly<T>],
    space: &MonomialSpace,
) -> Result<Matrix<T>> {
    let mut m = Matrix::empty(space.dimension());
    for p in polys {
        let mut row = vec![T::zero(); space.dimension()];
        for (mono, c) in p.terms() {
            let col = space.position(mono).ok_or(Error::SpaceTooSmall {
                degree: p.degree(),
                cap: space.degree_cap(),
            })?;
            row[col] = c.clone();
        }
        m.push_row(row)?;
    }
    Ok(m)
}

/// Rank by fraction-free (Bareiss) elimination.
///
/// After each pivot step every active entry is a minor of the input, so the
/// division by the previous pivot is exact over any integral domain.
pub fn rank_exact<T: Scalar>(matrix: &Matrix<T>) -> usize {
    let mut a: Vec<Vec<T>> = matrix.rows.clone();
    let (rows, cols) = (a.len(), matrix.cols);
    let mut prev = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[c], T::zero());
            for j in c + 1..cols {
                let num = pivot.clone() * row[j].clone() - lead.clone() * pivot_row[j].clone();
                debug_assert!(
                    (num.clone() % prev.clone()).is_zero(),
                    "inexact Bareiss division"
                );
                row[j] = num / prev.clone();
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Scales every row by the lcm of its denominators, giving an integer
/// matrix with the same rank.
pub fn clear_denominators(matrix: &Matrix<Rational>) -> Matrix<BigInt> {
    let rows = matrix
        .rows
        .iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    Matrix {
        cols: matrix.cols,
        rows,
    }
}

/// Exact rank of a rational matrix, eliminating over the integers.
pub fn rank_rational(matrix: &Matrix<Rational>) -> usize {
    rank_exact(&clear_denominators(matrix))
}
