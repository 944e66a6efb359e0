//! Degree-homogeneous linear maps between graded spaces.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A linear map stored column by column: `columns[i]` is the image of the
/// `i`-th domain basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    domain: GradedSpace,
    codomain: GradedSpace,
    degree: i32,
    columns: Vec<Vector>,
}

impl LinearMap {
    pub fn zero(domain: &GradedSpace, codomain: &GradedSpace, degree: i32) -> Self {
        LinearMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            degree,
            columns: vec![Vector::zero(); domain.dim()],
        }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        LinearMap {
            domain: space.clone(),
            codomain: space.clone(),
            degree: 0,
            columns: (0..space.dim()).map(Vector::basis).collect(),
        }
    }

    pub fn from_columns(
        domain: &GradedSpace,
        codomain: &GradedSpace,
        degree: i32,
        columns: Vec<Vector>,
    ) -> Result<Self> {
        if columns.len() != domain.dim() {
            return Err(Error::LengthMismatch { expected: domain.dim(), got: columns.len() });
        }
        for (i, col) in columns.iter().enumerate() {
            col.check_in(codomain)?;
            let want = domain.degree(i) + degree;
            if let Some(j) = col.support().find(|&j| codomain.degree(j) != want) {
                return Err(Error::DegreeMismatch(format!(
                    "image of `{}` has a component on `{}` of degree {}, expected {}",
                    domain.label(i),
                    codomain.label(j),
                    codomain.degree(j),
                    want
                )));
            }
        }
        Ok(LinearMap { domain: domain.clone(), codomain: codomain.clone(), degree, columns })
    }

    pub fn domain(&self) -> &GradedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedSpace {
        &self.codomain
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn column(&self, i: usize) -> &Vector {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in v.iter() {
            out.add_scaled(&self.columns[*i], c);
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if !other.codomain.same_as(&self.domain) {
            return Err(Error::SpaceMismatch);
        }
        Ok(LinearMap {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            degree: self.degree + other.degree,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if !self.domain.same_as(&other.domain) || !self.codomain.same_as(&other.codomain) {
            return Err(Error::SpaceMismatch);
        }
        if self.degree != other.degree && !(self.is_zero() || other.is_zero()) {
            return Err(Error::DegreeMismatch(format!(
                "cannot add maps of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Ok(LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            degree,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap { columns: self.columns.iter().map(|v| v.scaled(c)).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    /// The block `L^degree -> L^{degree + self.degree}` as a dense matrix,
    /// rows and columns ordered by basis index.
    pub fn block(&self, degree: i32) -> (Vec<usize>, Vec<usize>, Matrix) {
        let cols = self.domain.indices_in_degree(degree);
        let rows = self.codomain.indices_in_degree(degree + self.degree);
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for (i, &r) in rows.iter().enumerate() {
                let x = self.columns[c].get(r);
                if !x.is_zero() {
                    m.set(i, j, x);
                }
            }
        }
        (rows, cols, m)
    }

    pub fn rank(&self) -> usize {
        self.domain.support().into_iter().map(|d| self.block(d).2.rank()).sum()
    }

    /// Basis of the kernel, degree by degree.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for d in self.domain.support() {
            let (_, cols, m) = self.block(d);
            for k in m.kernel() {
                out.push(Vector::from_dense(&cols, &k));
            }
        }
        out
    }

    /// Basis of the image, degree by degree.
    pub fn image(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for d in self.domain.support() {
            let (rows, _, m) = self.block(d);
            for col in m.image() {
                out.push(Vector::from_dense(&rows, &col));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn rejects_degree_violations() {
        let s = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        assert!(LinearMap::from_columns(&s, &s, 1, vec![Vector::basis(1), Vector::zero()]).is_ok());
        assert!(LinearMap::from_columns(&s, &s, 1, vec![Vector::basis(0), Vector::zero()]).is_err());
    }

    #[test]
    fn compose_and_rank() {
        let s = GradedSpace::new([("a", 0), ("b", 1), ("c", 2)]).unwrap();
        let d = LinearMap::from_columns(&s, &s, 1, vec![Vector::basis(1), Vector::zero(), Vector::zero()]).unwrap();
        assert_eq!(d.rank(), 1);
        assert!(d.compose(&d).unwrap().is_zero());
        assert_eq!(d.kernel().len(), 2);
        assert_eq!(d.image(), vec![Vector::basis(1)]);
        let twice = d.add(&d).unwrap();
        assert_eq!(twice, d.scale(&int(2)));
    }
}
