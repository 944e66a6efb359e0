//! DG-Lie algebras given by structure constants.

mod cohomology;
mod equivariant;
mod splitting;

pub use cohomology::{cohomology, CohomologyPresentation};
pub use equivariant::{
    check_invariance, check_invariance_where, find_equivariant_splitting, EquivariantSearch, EquivariantSplitting,
    NoSplittingCertificate, Obstruction, SplittingPart,
};
pub use splitting::{compute_splitting, verify_splitting, Splitting};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linear_map::LinearMap;
use crate::multilinear::MultilinearMap;
use crate::report::Violation;
use crate::scalar::{parity_sign, Sign};
use crate::subspace;

/// Degree spans wider than this are legal but flagged by [`DgLieAlgebra::warnings`].
pub const WIDE_DEGREE_SPAN: i32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgLieAlgebra {
    space: GradedSpace,
    differential: LinearMap,
    bracket: MultilinearMap,
}

impl DgLieAlgebra {
    /// Checks shapes and degrees only; the identities are checked by
    /// [`validate_dgla`].
    pub fn new(space: GradedSpace, differential: LinearMap, bracket: MultilinearMap) -> Result<Self> {
        if !differential.domain().same_as(&space) || !differential.codomain().same_as(&space) {
            return Err(Error::SpaceMismatch);
        }
        if !bracket.domain().same_as(&space) || !bracket.codomain().same_as(&space) {
            return Err(Error::SpaceMismatch);
        }
        if differential.degree() != 1 && !differential.is_zero() {
            return Err(Error::DegreeMismatch(format!(
                "differential has degree {}, expected 1",
                differential.degree()
            )));
        }
        if bracket.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, got: bracket.arity() });
        }
        if bracket.degree() != 0 && !bracket.is_zero() {
            return Err(Error::DegreeMismatch(format!("bracket has degree {}, expected 0", bracket.degree())));
        }
        let differential = if differential.degree() == 1 { differential } else { LinearMap::zero(&space, &space, 1) };
        let bracket = if bracket.degree() == 0 { bracket } else { MultilinearMap::zero(&space, &space, 2, 0) };
        Ok(DgLieAlgebra { space, differential, bracket })
    }

    /// The abelian algebra with zero differential.
    pub fn abelian(space: GradedSpace) -> Self {
        let d = LinearMap::zero(&space, &space, 1);
        let b = MultilinearMap::zero(&space, &space, 2, 0);
        DgLieAlgebra { space, differential: d, bracket: b }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn differential(&self) -> &LinearMap {
        &self.differential
    }

    pub fn bracket_map(&self) -> &MultilinearMap {
        &self.bracket
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn d(&self, v: &Vector) -> Vector {
        self.differential.apply(v)
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket.evaluate_unchecked(&[x, y])
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        self.bracket.eval_basis(&[i, j])
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.is_zero()
    }

    pub fn warnings(&self) -> Vec<String> {
        let span = self.space.degree_span();
        if span > WIDE_DEGREE_SPAN {
            vec![format!("basis spans {span} degrees")]
        } else {
            Vec::new()
        }
    }

    /// The subalgebra spanned by `basis`, together with its inclusion. The
    /// span must be closed under `d` and the bracket. Also serves as a change
    /// of basis when `basis` spans everything.
    pub fn subalgebra(&self, basis: &[(String, Vector)]) -> Result<(DgLieAlgebra, LinearMap)> {
        let vectors: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
        if !subspace::is_independent(&vectors) {
            return Err(Error::NotSubalgebra("basis vectors are linearly dependent".into()));
        }
        let mut degs = Vec::with_capacity(basis.len());
        for (label, v) in basis {
            v.check_in(&self.space)?;
            match v.homogeneous_degree(&self.space) {
                Some(Some(d)) => degs.push((label.clone(), d)),
                _ => return Err(Error::NotHomogeneous(label.clone())),
            }
        }
        let sub = GradedSpace::new(degs)?;
        let coords = |v: &Vector, what: &str| -> Result<Vector> {
            let c = subspace::coordinates(&vectors, v).ok_or_else(|| {
                Error::NotSubalgebra(format!("{what} = {} leaves the span", self.space.format_vector(v)))
            })?;
            Ok(Vector::from_dense(&(0..vectors.len()).collect::<Vec<_>>(), &c))
        };
        let mut dcols = Vec::with_capacity(vectors.len());
        for (label, v) in basis {
            dcols.push(coords(&self.d(v), &format!("d{label}"))?);
        }
        let d = LinearMap::from_columns(&sub, &sub, 1, dcols)?;
        let mut br = MultilinearMap::zero(&sub, &sub, 2, 0);
        for key in br.canonical_domain_tuples() {
            let (i, j) = (key[0], key[1]);
            let value = self.bracket(&vectors[i], &vectors[j]);
            let c = coords(&value, &format!("[{},{}]", basis[i].0, basis[j].0))?;
            br.set(&key, c)?;
        }
        let inclusion = LinearMap::from_columns(&sub, &self.space, 0, vectors)?;
        Ok((DgLieAlgebra::new(sub, d, br)?, inclusion))
    }
}

fn labels(space: &GradedSpace, tuple: &[usize]) -> Vec<String> {
    tuple.iter().map(|&i| space.label(i).to_string()).collect()
}

/// Checks d² = 0, graded skew-symmetry, graded Jacobi and the Leibniz rule
/// on all basis pairs and triples. Returns one entry per failing tuple.
pub fn validate_dgla(a: &DgLieAlgebra) -> Vec<Violation> {
    let s = a.space();
    let n = s.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let dd = a.d(&a.d(&Vector::basis(i)));
        if !dd.is_zero() {
            out.push(Violation::new(
                "d^2 = 0",
                labels(s, &[i]),
                format!("d(d{}) = {}", s.label(i), s.format_vector(&dd)),
            ));
        }
    }
    for i in 0..n {
        for j in i..n {
            let lhs = a.bracket_basis(i, j);
            let swapped = Sign::antisymmetric_swap(s.degree(i), s.degree(j)).apply_vector(a.bracket_basis(j, i));
            if lhs != swapped {
                out.push(Violation::new("skew-symmetry", labels(s, &[i, j]), "bracket is not graded skew-symmetric"));
            }
            let x = Vector::basis(i);
            let y = Vector::basis(j);
            let l = a.d(&lhs);
            let r =
                a.bracket(&a.d(&x), &y).plus(&parity_sign(s.degree(i) as i64).apply_vector(a.bracket(&x, &a.d(&y))));
            if l != r {
                out.push(Violation::new(
                    "Leibniz",
                    labels(s, &[i, j]),
                    format!("d[x,y] = {} but [dx,y] + (-1)^|x|[x,dy] = {}", s.format_vector(&l), s.format_vector(&r)),
                ));
            }
        }
    }
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (i..n).flat_map(move |j| (j..n).map(move |k| (i, j, k)))).collect();
    let jac: Vec<Violation> = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let v = jacobiator(a, i, j, k);
            (!v.is_zero()).then(|| {
                Violation::new("Jacobi", labels(s, &[i, j, k]), format!("Jacobiator = {}", s.format_vector(&v)))
            })
        })
        .collect();
    out.extend(jac);
    out
}

/// (−1)^{|x||z|}[x,[y,z]] + (−1)^{|y||x|}[y,[z,x]] + (−1)^{|z||y|}[z,[x,y]]
pub(crate) fn jacobiator(a: &DgLieAlgebra, i: usize, j: usize, k: usize) -> Vector {
    let s = a.space();
    let (di, dj, dk) = (s.degree(i) as i64, s.degree(j) as i64, s.degree(k) as i64);
    let (x, y, z) = (Vector::basis(i), Vector::basis(j), Vector::basis(k));
    let t1 = parity_sign(di * dk).apply_vector(a.bracket(&x, &a.bracket_basis(j, k)));
    let t2 = parity_sign(dj * di).apply_vector(a.bracket(&y, &a.bracket_basis(k, i)));
    let t3 = parity_sign(dk * dj).apply_vector(a.bracket(&z, &a.bracket_basis(i, j)));
    t1.plus(&t2).plus(&t3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn paper_examples_are_valid() {
        assert!(validate_dgla(&corpus::nocontraction().algebra).is_empty());
        assert!(validate_dgla(&corpus::noformal_dim3().algebra).is_empty());
    }

    #[test]
    fn corrupted_bracket_is_caught() {
        let nc = corpus::nocontraction().algebra;
        let s = nc.space().clone();
        let mut br = nc.bracket_map().clone();
        br.set(&[s.index_of("a").unwrap(), s.index_of("b").unwrap()], s.parse_vector("b").unwrap()).unwrap();
        let bad = DgLieAlgebra::new(s, nc.differential().clone(), br).unwrap();
        let report = validate_dgla(&bad);
        assert!(report.iter().any(|v| v.identity == "Leibniz" || v.identity == "Jacobi"));
    }

    #[test]
    fn change_of_basis_preserves_validity() {
        let a = corpus::nocontraction().algebra;
        let s = a.space();
        let basis: Vec<(String, Vector)> = (0..s.dim())
            .map(|i| {
                let mut v = Vector::basis(i);
                if let Some(j) = (0..i).rev().find(|&j| s.degree(j) == s.degree(i)) {
                    v.add_term(j, &crate::scalar::int(2));
                }
                (format!("e{i}"), v)
            })
            .collect();
        let (b, _) = a.subalgebra(&basis).unwrap();
        assert!(validate_dgla(&b).is_empty());
    }
}
