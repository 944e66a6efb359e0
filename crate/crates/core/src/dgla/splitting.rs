//! Splittings `L = H ⊕ d(K) ⊕ K` and the contraction `(ι₁, π, h)`.

use num_traits::Zero;

use super::DgLieAlgebra;
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linalg::Matrix;
use crate::linear_map::LinearMap;
use crate::report::Violation;
use crate::subspace;

#[derive(Clone, Debug)]
pub struct Splitting {
    algebra: DgLieAlgebra,
    harmonic: Vec<Vector>,
    complement: Vec<Vector>,
    cohomology_space: GradedSpace,
    inclusion: LinearMap,
    projection: LinearMap,
    homotopy: LinearMap,
}

fn degree_of(space: &GradedSpace, v: &Vector, what: &str) -> Result<i32> {
    v.check_in(space)?;
    match v.homogeneous_degree(space) {
        Some(Some(d)) => Ok(d),
        Some(None) => Err(Error::InvalidSplitting(format!("{what} contains the zero vector"))),
        None => Err(Error::NotHomogeneous(format!("{what} vector {}", space.format_vector(v)))),
    }
}

impl Splitting {
    /// Builds the contraction from bases of `H` and `K`. `H` must consist of
    /// cocycles and `H ⊕ d(K) ⊕ K` must be all of `L`, degree by degree.
    pub fn from_subspaces(algebra: &DgLieAlgebra, harmonic: Vec<Vector>, complement: Vec<Vector>) -> Result<Self> {
        let space = algebra.space();
        let mut h_deg = Vec::with_capacity(harmonic.len());
        for v in &harmonic {
            h_deg.push(degree_of(space, v, "H")?);
            if !algebra.d(v).is_zero() {
                return Err(Error::InvalidSplitting(format!("{} in H is not a cocycle", space.format_vector(v))));
            }
        }
        let mut k_deg = Vec::with_capacity(complement.len());
        for v in &complement {
            k_deg.push(degree_of(space, v, "K")?);
        }
        let h_labels: Vec<(String, i32)> =
            harmonic.iter().zip(&h_deg).map(|(v, &d)| (space.derived_label(v), d)).collect();
        let cohomology_space = GradedSpace::new(h_labels)?;
        let hspace = &cohomology_space;

        let mut pi_cols = vec![Vector::zero(); space.dim()];
        let mut h_cols = vec![Vector::zero(); space.dim()];
        for deg in space.support() {
            let rows = space.indices_in_degree(deg);
            let hs: Vec<usize> = (0..harmonic.len()).filter(|&t| h_deg[t] == deg).collect();
            let dks: Vec<usize> = (0..complement.len()).filter(|&t| k_deg[t] == deg - 1).collect();
            let ks: Vec<usize> = (0..complement.len()).filter(|&t| k_deg[t] == deg).collect();
            let mut cols: Vec<Vec<_>> = hs.iter().map(|&t| harmonic[t].dense(&rows)).collect();
            cols.extend(dks.iter().map(|&t| algebra.d(&complement[t]).dense(&rows)));
            cols.extend(ks.iter().map(|&t| complement[t].dense(&rows)));
            if cols.len() != rows.len() {
                return Err(Error::InvalidSplitting(format!(
                    "degree {deg}: dim H + dim d(K) + dim K = {} but dim L = {}",
                    cols.len(),
                    rows.len()
                )));
            }
            if rows.is_empty() {
                continue;
            }
            let inv = Matrix::from_columns(rows.len(), &cols)
                .inverse()
                .map_err(|_| Error::InvalidSplitting(format!("degree {deg}: H, d(K) and K are not independent")))?;
            for (c, &e) in rows.iter().enumerate() {
                let mut p = Vector::zero();
                for (r, &t) in hs.iter().enumerate() {
                    p.add_term(t, inv.get(r, c));
                }
                let mut h = Vector::zero();
                for (r, &t) in dks.iter().enumerate() {
                    let coeff = inv.get(hs.len() + r, c);
                    if !coeff.is_zero() {
                        h.add_scaled(&complement[t], &-coeff.clone());
                    }
                }
                pi_cols[e] = p;
                h_cols[e] = h;
            }
        }
        let inclusion = LinearMap::from_columns(hspace, space, 0, harmonic.clone())?;
        let projection = LinearMap::from_columns(space, hspace, 0, pi_cols)?;
        let homotopy = LinearMap::from_columns(space, space, -1, h_cols)?;
        Ok(Splitting {
            algebra: algebra.clone(),
            harmonic,
            complement,
            cohomology_space,
            inclusion,
            projection,
            homotopy,
        })
    }

    pub fn algebra(&self) -> &DgLieAlgebra {
        &self.algebra
    }

    /// Basis of `H` inside `L`.
    pub fn harmonic(&self) -> &[Vector] {
        &self.harmonic
    }

    /// Basis of `K` inside `L`.
    pub fn complement(&self) -> &[Vector] {
        &self.complement
    }

    /// Basis of `d(K)`, in the order of `K`.
    pub fn boundaries(&self) -> Vec<Vector> {
        self.complement.iter().map(|k| self.algebra.d(k)).collect()
    }

    /// `H` as an abstract graded space; basis element `t` is `harmonic()[t]`.
    pub fn cohomology_space(&self) -> &GradedSpace {
        &self.cohomology_space
    }

    pub fn iota(&self) -> &LinearMap {
        &self.inclusion
    }

    pub fn pi(&self) -> &LinearMap {
        &self.projection
    }

    pub fn h(&self) -> &LinearMap {
        &self.homotopy
    }

    pub fn harmonic_in_degree(&self, deg: i32) -> Vec<usize> {
        self.cohomology_space.indices_in_degree(deg)
    }

    pub fn complement_in_degree(&self, deg: i32) -> Vec<Vector> {
        let s = self.algebra.space();
        self.complement.iter().filter(|v| v.is_homogeneous_of(s, deg)).cloned().collect()
    }

    /// Replaces the homotopy; the other maps are kept. Meant for testing the
    /// verifier.
    pub fn with_homotopy(mut self, h: LinearMap) -> Result<Self> {
        if !h.domain().same_as(self.algebra.space()) || !h.codomain().same_as(self.algebra.space()) {
            return Err(Error::SpaceMismatch);
        }
        self.homotopy = h;
        Ok(self)
    }

    /// Same splitting with `H` relabelled.
    pub fn with_cohomology_labels(mut self, labels: &[String]) -> Result<Self> {
        if labels.len() != self.harmonic.len() {
            return Err(Error::LengthMismatch { expected: self.harmonic.len(), got: labels.len() });
        }
        let degs = self.cohomology_space.degrees().to_vec();
        let space = GradedSpace::new(labels.iter().cloned().zip(degs))?;
        let a = self.algebra.space().clone();
        self.inclusion = LinearMap::from_columns(&space, &a, 0, self.inclusion.columns().to_vec())?;
        self.projection = LinearMap::from_columns(&a, &space, 0, self.projection.columns().to_vec())?;
        self.cohomology_space = space;
        Ok(self)
    }
}

/// The deterministic splitting: `K` greedily from basis elements with
/// independent differentials, `H` greedily from the reduced kernel basis.
pub fn compute_splitting(a: &DgLieAlgebra) -> Splitting {
    let space = a.space();
    let mut harmonic = Vec::new();
    let mut complement = Vec::new();
    for deg in space.support() {
        let idx = space.indices_in_degree(deg);
        let images: Vec<Vector> = idx.iter().map(|&i| a.d(&Vector::basis(i))).collect();
        for t in subspace::extend_greedy(&[], &images) {
            complement.push(Vector::basis(idx[t]));
        }
    }
    for deg in space.support() {
        let (_, _, block) = a.differential().block(deg);
        let idx = space.indices_in_degree(deg);
        let cycles: Vec<Vector> = block.kernel().iter().map(|k| Vector::from_dense(&idx, k)).collect();
        let boundaries: Vec<Vector> =
            complement.iter().filter(|k| k.is_homogeneous_of(space, deg - 1)).map(|k| a.d(k)).collect();
        for t in subspace::extend_greedy(&boundaries, &cycles) {
            harmonic.push(cycles[t].clone());
        }
    }
    Splitting::from_subspaces(a, harmonic, complement).expect("greedy choice is a splitting")
}

/// Checks the seven contraction identities on every basis element.
pub fn verify_splitting(s: &Splitting) -> Vec<Violation> {
    let a = s.algebra();
    let l = a.space();
    let hs = s.cohomology_space();
    let (iota, pi, h) = (s.iota(), s.pi(), s.h());
    let mut out = Vec::new();
    for t in 0..hs.dim() {
        let x = Vector::basis(t);
        let ix = iota.apply(&x);
        let w = vec![hs.label(t).to_string()];
        if !a.d(&ix).is_zero() {
            out.push(Violation::new("d ι₁ = 0", w.clone(), l.format_vector(&a.d(&ix))));
        }
        let back = pi.apply(&ix);
        if back != x {
            out.push(Violation::new("π ι₁ = id", w.clone(), hs.format_vector(&back)));
        }
        if !h.apply(&ix).is_zero() {
            out.push(Violation::new("h ι₁ = 0", w, l.format_vector(&h.apply(&ix))));
        }
    }
    for e in 0..l.dim() {
        let v = Vector::basis(e);
        let w = vec![l.label(e).to_string()];
        let pd = pi.apply(&a.d(&v));
        if !pd.is_zero() {
            out.push(Violation::new("π d = 0", w.clone(), hs.format_vector(&pd)));
        }
        let lhs = a.d(&h.apply(&v)).plus(&h.apply(&a.d(&v)));
        let rhs = iota.apply(&pi.apply(&v)).minus(&v);
        if lhs != rhs {
            out.push(Violation::new(
                "dh + hd = ι₁π − id",
                w.clone(),
                format!("{} vs {}", l.format_vector(&lhs), l.format_vector(&rhs)),
            ));
        }
        let ph = pi.apply(&h.apply(&v));
        if !ph.is_zero() {
            out.push(Violation::new("π h = 0", w.clone(), hs.format_vector(&ph)));
        }
        let hh = h.apply(&h.apply(&v));
        if !hh.is_zero() {
            out.push(Violation::new("h² = 0", w, l.format_vector(&hh)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::int;

    #[test]
    fn nocontraction_splitting() {
        let a = corpus::nocontraction().algebra;
        let s = compute_splitting(&a);
        assert!(verify_splitting(&s).is_empty());
        let hs = s.cohomology_space();
        assert_eq!(hs.labels(), &["a", "x", "y", "z"]);
        let ks: Vec<String> = s.complement().iter().map(|k| a.space().derived_label(k)).collect();
        assert_eq!(ks, vec!["b", "p"]);
        let p = a.space().parse_vector("p").unwrap();
        let dp = a.space().parse_vector("dp").unwrap();
        assert_eq!(s.h().apply(&dp), p.neg());
    }

    #[test]
    fn scaled_homotopy_is_rejected() {
        let a = corpus::nocontraction().algebra;
        let s = compute_splitting(&a);
        let h2 = s.h().scale(&int(2));
        let bad = s.with_homotopy(h2).unwrap();
        let report = verify_splitting(&bad);
        assert!(report.iter().any(|v| v.identity == "dh + hd = ι₁π − id"));
    }

    #[test]
    fn zero_differential_gives_everything_harmonic() {
        let space = GradedSpace::new([("u", 0), ("v", 1)]).unwrap();
        let s = compute_splitting(&DgLieAlgebra::abelian(space));
        assert_eq!(s.harmonic().len(), 2);
        assert!(s.complement().is_empty());
    }

    #[test]
    fn acyclic_complex_has_no_cohomology() {
        let space = GradedSpace::new([("u", 0), ("w", 1)]).unwrap();
        let d = LinearMap::from_columns(&space, &space, 1, vec![Vector::basis(1), Vector::zero()]).unwrap();
        let a = DgLieAlgebra::new(space.clone(), d, crate::multilinear::MultilinearMap::zero(&space, &space, 2, 0))
            .unwrap();
        let s = compute_splitting(&a);
        assert!(s.harmonic().is_empty());
        assert_eq!(s.complement(), &[Vector::basis(0)]);
        assert!(verify_splitting(&s).is_empty());
    }

    #[test]
    fn rejects_non_complements() {
        let a = corpus::nocontraction().algebra;
        let sp = a.space();
        let v = |t: &str| sp.parse_vector(t).unwrap();
        let err = Splitting::from_subspaces(&a, vec![v("a"), v("x"), v("db"), v("z")], vec![v("b"), v("p")]);
        assert!(err.is_err());
    }
}
