use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linalg::Matrix;
use crate::linear_map::LinearMap;
use crate::scalar::{parity_sign, Scalar};

/// A bilinear form of degree `−n`: `(e_i, e_j)` may be nonzero only when
/// `|e_i| + |e_j| = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPairing {
    space: GradedSpace,
    degree: i32,
    table: BTreeMap<(usize, usize), Scalar>,
}

impl CyclicPairing {
    /// Stores exactly the given ordered entries. Nothing is completed, so a
    /// non-symmetric table is representable and caught by validation.
    pub fn from_table(
        space: &GradedSpace,
        degree: i32,
        entries: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for ((i, j), c) in entries {
            if i >= space.dim() || j >= space.dim() {
                return Err(Error::InvalidPairing(format!("index ({i}, {j}) out of range")));
            }
            if !c.is_zero() {
                table.insert((i, j), c);
            }
        }
        Ok(CyclicPairing { space: space.clone(), degree, table })
    }

    /// Completes entries by graded symmetry `(x,y) = (−1)^{|x||y|}(y,x)`.
    /// Inconsistent pairs and entries breaking the degree constraint are
    /// errors.
    pub fn symmetric(
        space: &GradedSpace,
        degree: i32,
        entries: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Result<Self> {
        let mut table: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for ((i, j), c) in entries {
            if i >= space.dim() || j >= space.dim() {
                return Err(Error::InvalidPairing(format!("index ({i}, {j}) out of range")));
            }
            if c.is_zero() {
                continue;
            }
            let (di, dj) = (space.degree(i), space.degree(j));
            if di + dj != degree {
                return Err(Error::InvalidPairing(format!(
                    "({}, {}) has degrees {di} + {dj}, expected total {degree}",
                    space.label(i),
                    space.label(j)
                )));
            }
            let mirrored = parity_sign((di * dj) as i64).apply(c.clone());
            for (key, value) in [((i, j), c), ((j, i), mirrored)] {
                match table.get(&key) {
                    Some(old) if *old != value => {
                        return Err(Error::InvalidPairing(format!(
                            "conflicting values for ({}, {})",
                            space.label(key.0),
                            space.label(key.1)
                        )))
                    }
                    _ => {
                        table.insert(key, value);
                    }
                }
            }
        }
        Ok(CyclicPairing { space: space.clone(), degree, table })
    }

    pub fn zero(space: &GradedSpace, degree: i32) -> Self {
        CyclicPairing { space: space.clone(), degree, table: BTreeMap::new() }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    /// The integer `n`; the form has degree `−n`.
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.table.iter()
    }

    pub fn basis(&self, i: usize, j: usize) -> Scalar {
        self.table.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        let mut out = Scalar::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(c) = self.table.get(&(*i, *j)) {
                    out += a * b * c;
                }
            }
        }
        out
    }

    /// Gram matrix `((rows_r, cols_c))`.
    pub fn gram(&self, rows: &[Vector], cols: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (r, x) in rows.iter().enumerate() {
            for (c, y) in cols.iter().enumerate() {
                let v = self.eval(x, y);
                if !v.is_zero() {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// `(f·, f·)` on the domain of a degree-0 map.
    pub fn pullback(&self, map: &LinearMap) -> Result<CyclicPairing> {
        if !map.codomain().same_as(&self.space) {
            return Err(Error::SpaceMismatch);
        }
        let dom = map.domain();
        let mut table = BTreeMap::new();
        for i in 0..dom.dim() {
            for j in 0..dom.dim() {
                let v = self.eval(map.column(i), map.column(j));
                if !v.is_zero() {
                    table.insert((i, j), v);
                }
            }
        }
        Ok(CyclicPairing { space: dom.clone(), degree: self.degree, table })
    }

    /// Rank of the full Gram matrix.
    pub fn rank(&self) -> usize {
        let basis: Vec<Vector> = (0..self.space.dim()).map(Vector::basis).collect();
        if basis.is_empty() {
            return 0;
        }
        self.gram(&basis, &basis).rank()
    }
}
