//! Dense exact matrices over a cyclotomic field.
//!
//! Rank is computed by fraction-free (Bareiss) elimination with
//! first-nonzero pivot selection, so results are deterministic and exact;
//! inverses use Gauss-Jordan elimination.  Row operations skip zero
//! multipliers, which keeps the common near-monomial matrices cheap.

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};

/// A dense `rows x cols` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycScalar>,
}

impl Matrix {
    /// Zero matrix with all entries in `Q(zeta_order)`.
    pub fn zero(rows: usize, cols: usize, order: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycScalar::zero(order); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize, order: usize) -> Self {
        let mut m = Self::zero(n, n, order);
        for i in 0..n {
            m[(i, i)] = CycScalar::one(order);
        }
        m
    }

    /// Build from column-sparse data: `cols_data[j]` lists `(row, value)`.
    pub fn from_columns(rows: usize, cols_data: &[Vec<(usize, CycScalar)>], order: usize) -> Self {
        let mut m = Self::zero(rows, cols_data.len(), order);
        for (j, col) in cols_data.iter().enumerate() {
            for (i, v) in col {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let order = self.data[0].order().max(rhs.data[0].order());
        let mut out = Matrix::zero(self.rows, rhs.cols, order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Apply to a sparse coefficient vector (columns are images of basis
    /// vectors): returns `self * v` as sparse `(row, value)` pairs sorted
    /// by row.
    pub fn apply_sparse(&self, v: &[(usize, CycScalar)]) -> Vec<(usize, CycScalar)> {
        let order = self.data.first().map(|c| c.order()).unwrap_or(1);
        let mut acc = vec![CycScalar::zero(order); self.rows];
        let mut touched = vec![false; self.rows];
        for (j, c) in v {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, *j)];
                if a.is_zero() {
                    continue;
                }
                acc[i] = acc[i].add(&a.mul(c));
                touched[i] = true;
            }
        }
        (0..self.rows)
            .filter(|&i| touched[i] && !acc[i].is_zero())
            .map(|i| (i, acc[i].clone()))
            .collect()
    }

    /// Rank by fraction-free Bareiss elimination, first nonzero pivot in
    /// column order.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let order = m.data.first().map(|c| c.order()).unwrap_or(1);
        let mut prev = CycScalar::one(order);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // first nonzero pivot at or below `row`
            let pivot = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(row * m.cols + j, p * m.cols + j);
                }
            }
            let piv = m[(row, col)].clone();
            for r in row + 1..m.rows {
                let lead = m[(r, col)].clone();
                if lead.is_zero() {
                    // still must rescale the row for Bareiss bookkeeping
                    for j in col..m.cols {
                        if !m[(r, j)].is_zero() {
                            let num = m[(r, j)].mul(&piv);
                            m[(r, j)] = num.mul(&prev.inv().expect("pivot nonzero"));
                        }
                    }
                    continue;
                }
                let prev_inv = prev.inv().expect("pivot nonzero");
                for j in col..m.cols {
                    let num = m[(r, j)].mul(&piv).sub(&lead.mul(&m[(row, j)]));
                    m[(r, j)] = num.mul(&prev_inv);
                }
            }
            prev = piv;
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Exact inverse via Gauss-Jordan; errors on non-square or singular
    /// input.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let order = self.data.first().map(|c| c.order()).unwrap_or(1);
        let mut a = self.clone();
        let mut inv = Matrix::identity(n, order);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or_else(|| {
                Error::SingularMatrix(format!("no pivot in column {col}"))
            })?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let scale = a[(col, col)].inv().expect("pivot nonzero");
            for j in 0..n {
                a[(col, j)] = a[(col, j)].mul(&scale);
                inv[(col, j)] = inv[(col, j)].mul(&scale);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let lead = a[(r, col)].clone();
                if lead.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].sub(&lead.mul(&a[(col, j)]));
                    inv[(r, j)] = inv[(r, j)].sub(&lead.mul(&inv[(col, j)]));
                }
            }
        }
        Ok(inv)
    }

    /// Column `j` as sparse `(row, value)` pairs.
    pub fn column_sparse(&self, j: usize) -> Vec<(usize, CycScalar)> {
        (0..self.rows)
            .filter(|&i| !self[(i, j)].is_zero())
            .map(|i| (i, self[(i, j)].clone()))
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = CycScalar;
    fn index(&self, (i, j): (usize, usize)) -> &CycScalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycScalar {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::root_of_unity;

    #[test]
    fn rank_of_identity_and_singular() {
        let id = Matrix::identity(5, 3);
        assert_eq!(id.rank(), 5);
        let mut m = Matrix::zero(3, 3, 3);
        let z = root_of_unity(3, 1).unwrap();
        // rows 0 and 1 proportional, row 2 independent
        m[(0, 0)] = CycScalar::one(3);
        m[(0, 1)] = z.clone();
        m[(1, 0)] = z.clone();
        m[(1, 1)] = z.mul(&z);
        m[(2, 2)] = CycScalar::one(3);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let z = root_of_unity(4, 1).unwrap();
        let mut m = Matrix::identity(3, 4);
        m[(0, 1)] = z.clone();
        m[(1, 2)] = CycScalar::from_integer(2).embed(4).unwrap();
        m[(2, 0)] = z.neg();
        let inv = m.inverse().unwrap();
        let prod = m.matmul(&inv).unwrap();
        assert_eq!(prod, Matrix::identity(3, 4));
    }

    #[test]
    fn singular_inverse_errors() {
        let m = Matrix::zero(2, 2, 1);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn apply_sparse_matches_matmul() {
        let z = root_of_unity(6, 1).unwrap();
        let mut m = Matrix::zero(3, 3, 6);
        m[(0, 0)] = z.clone();
        m[(2, 1)] = CycScalar::one(6);
        m[(1, 2)] = z.mul(&z);
        let v = vec![(0, CycScalar::one(6)), (2, z.clone())];
        let out = m.apply_sparse(&v);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], (0, z.clone()));
        assert_eq!(out[1], (1, z.pow(3).unwrap()));
    }
}
