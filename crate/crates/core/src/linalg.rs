//! Dense exact linear algebra over the rationals.
//!
//! Structure constants are stored sparsely elsewhere; every elimination in the
//! crate is small enough to run on a dense copy.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution (free variables set to zero) and a basis of the
    /// kernel of `A`.
    Consistent { particular: Vec<Scalar>, kernel: Vec<Vec<Scalar>> },
    /// No solution. `certificate` is a row vector `y` with `y A = 0` and
    /// `y b != 0`.
    Inconsistent { certificate: Vec<Scalar> },
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Solution::Consistent { .. })
    }

    pub fn unique(&self) -> Option<&[Scalar]> {
        match self {
            Solution::Consistent { particular, kernel } if kernel.is_empty() => Some(particular),
            _ => None,
        }
    }
}

/// Reduced row echelon form with the list of pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Builds a matrix whose columns are the given coordinate vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = m.get(row, c);
                    if sub.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &factor * sub;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in e.pivots.iter().enumerate() {
                    v[p] = -e.reduced.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn image(&self) -> Vec<Vec<Scalar>> {
        self.echelon().pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let e = aug.echelon();
        if e.pivots.len() < n || (n > 0 && e.pivots[n - 1] != n - 1) {
            return Err(Error::Singular("matrix inverse".into()));
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, e.reduced.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} equations but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + 1);
        for (r, br) in b.iter().enumerate() {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, br.clone());
        }
        let e = aug.echelon();
        if e.pivots.last() == Some(&n) {
            return Ok(Solution::Inconsistent { certificate: self.farkas(b) });
        }
        let mut particular = vec![Scalar::zero(); n];
        for (r, &p) in e.pivots.iter().enumerate() {
            particular[p] = e.reduced.get(r, n).clone();
        }
        Ok(Solution::Consistent { particular, kernel: self.kernel() })
    }

    /// A left-kernel vector `y` of `self` with `y . b != 0`. Assumes the
    /// system is inconsistent.
    fn farkas(&self, b: &[Scalar]) -> Vec<Scalar> {
        let left = self.transpose().kernel();
        left.into_iter()
            .find(|y| !dot(y, b).is_zero())
            .expect("inconsistent system has a separating left-kernel vector")
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of a family of coordinate vectors of common length `len`.
pub fn rank_of(vectors: &[Vec<Scalar>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(len, vectors).rank()
}
