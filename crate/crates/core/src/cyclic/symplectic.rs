//! Graded Lie algebras `g ⊕ V[-1] ⊕ g^∨[-2]` built from a representation of
//! `g` on a space with a skew form.

use num_traits::Zero;

use super::{CyclicPairing, QuasiCyclicDgla};
use crate::dgla::DgLieAlgebra;
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linalg::Matrix;
use crate::linear_map::LinearMap;
use crate::multilinear::MultilinearMap;
use crate::report::Violation;
use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, Debug)]
pub struct SymplecticRepresentation {
    /// Lie algebra concentrated in degree 0 with zero differential.
    pub lie: DgLieAlgebra,
    /// Labels for a basis of `V`.
    pub vector_labels: Vec<String>,
    /// `action[a]` is the matrix of the `a`-th basis element of `g` on `V`
    /// (columns are images of basis vectors).
    pub action: Vec<Matrix>,
    /// Gram matrix of the skew form on `V`.
    pub form: Matrix,
}

impl SymplecticRepresentation {
    pub fn dim_v(&self) -> usize {
        self.vector_labels.len()
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.dim_v();
        let g = self.lie.space();
        if g.degrees().iter().any(|&d| d != 0) || !self.lie.has_zero_differential() {
            return Err(Error::InvalidAlgebra(vec![Violation::new(
                "Lie algebra in degree 0",
                vec![],
                "g must be concentrated in degree 0 with d = 0",
            )]));
        }
        if self.action.len() != g.dim() {
            return Err(Error::LengthMismatch { expected: g.dim(), got: self.action.len() });
        }
        for m in self.action.iter().chain(std::iter::once(&self.form)) {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!("expected {n}x{n} matrices")));
            }
        }
        Ok(())
    }

    fn omega(&self, u: &[Scalar], w: &[Scalar]) -> Scalar {
        let fw = self.form.mul_vec(w).expect("square");
        crate::linalg::dot(u, &fw)
    }

    fn act(&self, a: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.action[a].mul_vec(v).expect("square")
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim_v()];
        v[i] = num_traits::One::one();
        v
    }

    /// `ω(gv,w) + ω(v,gw) = 0` on basis elements.
    pub fn symplectic_violations(&self) -> Vec<Violation> {
        let n = self.dim_v();
        let mut out = Vec::new();
        for a in 0..self.action.len() {
            for i in 0..n {
                for j in 0..n {
                    let (vi, vj) = (self.unit(i), self.unit(j));
                    let s = self.omega(&self.act(a, &vi), &vj) + self.omega(&vi, &self.act(a, &vj));
                    if !s.is_zero() {
                        out.push(Violation::new(
                            "symplectic condition",
                            vec![
                                self.lie.space().label(a).into(),
                                self.vector_labels[i].clone(),
                                self.vector_labels[j].clone(),
                            ],
                            format!("ω(gv,w) + ω(v,gw) = {}", format_scalar(&s)),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Skew form non-degenerate, representation property, symplectic
    /// condition.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if let Err(e) = self.check_shapes() {
            out.push(Violation::new("shape", vec![], e.to_string()));
            return out;
        }
        let n = self.dim_v();
        if self.form.rank() != n {
            out.push(Violation::new("ω non-degenerate", vec![], format!("rank {} < {n}", self.form.rank())));
        }
        if self.form.transpose() != neg(&self.form) {
            out.push(Violation::new("ω skew", vec![], "form is not skew-symmetric"));
        }
        let g = self.lie.space();
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let lhs = self.action[a].mul(&self.action[b]).unwrap();
                let rhs = self.action[b].mul(&self.action[a]).unwrap();
                let comm = sub(&lhs, &rhs);
                let br = self.lie.bracket_basis(a, b);
                let mut target = Matrix::zeros(n, n);
                for (c, coeff) in br.iter() {
                    target = add(&target, &scale(&self.action[*c], coeff));
                }
                if comm != target {
                    out.push(Violation::new(
                        "representation",
                        vec![g.label(a).into(), g.label(b).into()],
                        "ρ([g,h]) ≠ [ρ(g), ρ(h)]",
                    ));
                }
            }
        }
        out.extend(self.symplectic_violations());
        out
    }
}

fn neg(m: &Matrix) -> Matrix {
    scale(m, &-Scalar::from_integer(1.into()))
}

fn scale(m: &Matrix, c: &Scalar) -> Matrix {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for k in 0..m.cols() {
            out.set(r, k, m.get(r, k) * c);
        }
    }
    out
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = a.clone();
    for r in 0..a.rows() {
        for k in 0..a.cols() {
            out.set(r, k, a.get(r, k) + b.get(r, k));
        }
    }
    out
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    add(a, &neg(b))
}

/// `L⁰ = g`, `L¹ = V`, `L² = g^∨`, zero differential, with
/// `[g,v] = gv`, `[v,w](h) = ω(hv,w)`, `[g,y](h) = y([h,g])`, and the pairing
/// given by evaluation on `L⁰ × L²` and `ω` on `L¹`. Inputs violating the
/// symplectic condition still build; their cyclicity check fails.
pub fn from_symplectic_representation(r: &SymplecticRepresentation) -> Result<QuasiCyclicDgla> {
    r.check_shapes()?;
    let g = r.lie.space();
    let (m, n) = (g.dim(), r.dim_v());
    let mut basis: Vec<(String, i32)> = Vec::with_capacity(2 * m + n);
    basis.extend(g.labels().iter().map(|l| (l.clone(), 0)));
    basis.extend(r.vector_labels.iter().map(|l| (l.clone(), 1)));
    basis.extend(g.labels().iter().map(|l| (format!("{l}^"), 2)));
    let space = GradedSpace::new(basis)?;
    let gi = |a: usize| a;
    let vi = |i: usize| m + i;
    let di = |a: usize| m + n + a;
    let mut br = MultilinearMap::zero(&space, &space, 2, 0);
    for a in 0..m {
        for b in a + 1..m {
            let v = r.lie.bracket_basis(a, b);
            br.set(&[gi(a), gi(b)], v.reindex(gi))?;
        }
        for i in 0..n {
            let image = r.act(a, &r.unit(i));
            let v = Vector::from_dense(&(0..n).map(vi).collect::<Vec<_>>(), &image);
            br.set(&[gi(a), vi(i)], v)?;
        }
        for c in 0..m {
            let mut v = Vector::zero();
            for b in 0..m {
                let coeff = r.lie.bracket_basis(b, a).get(c);
                v.add_term(di(b), &coeff);
            }
            br.set(&[gi(a), di(c)], v)?;
        }
    }
    for i in 0..n {
        for j in i..n {
            let mut v = Vector::zero();
            for a in 0..m {
                let coeff = r.omega(&r.act(a, &r.unit(i)), &r.unit(j));
                v.add_term(di(a), &coeff);
            }
            br.set(&[vi(i), vi(j)], v)?;
        }
    }
    let d = LinearMap::zero(&space, &space, 1);
    let algebra = DgLieAlgebra::new(space.clone(), d, br)?;
    let mut entries = Vec::new();
    for a in 0..m {
        entries.push(((gi(a), di(a)), Scalar::from_integer(1.into())));
        entries.push(((di(a), gi(a)), Scalar::from_integer(1.into())));
    }
    for i in 0..n {
        for j in 0..n {
            entries.push(((vi(i), vi(j)), r.form.get(i, j).clone()));
        }
    }
    let pairing = CyclicPairing::from_table(&space, 2, entries)?;
    QuasiCyclicDgla::classify(algebra, pairing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::int;

    fn diag(a: i64, b: i64) -> SymplecticRepresentation {
        corpus::torus_representation(&[Matrix::from_rows(vec![vec![int(a), int(0)], vec![int(0), int(b)]]).unwrap()])
    }

    #[test]
    fn trace_free_diagonal_is_cyclic() {
        let r = diag(1, -1);
        assert!(r.violations().is_empty());
        let q = from_symplectic_representation(&r).unwrap();
        assert!(q.report.violations.is_empty(), "{:?}", q.report.violations);
        assert!(q.flags().is_cyclic());
    }

    #[test]
    fn non_symplectic_action_breaks_cyclicity() {
        let r = diag(1, 1);
        assert!(!r.symplectic_violations().is_empty());
        let q = from_symplectic_representation(&r).unwrap();
        assert!(q.report.violations.iter().any(|v| v.identity == "cyclicity"));
    }

    #[test]
    fn trivial_lie_algebra_gives_abelian_algebra() {
        let r = corpus::torus_representation(&[]);
        let q = from_symplectic_representation(&r).unwrap();
        assert!(q.algebra.is_abelian());
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.flags().is_cyclic());
    }

    #[test]
    fn moment_map() {
        let q = from_symplectic_representation(&diag(1, -1)).unwrap();
        let s = q.algebra.space();
        let e1 = s.parse_vector("v1").unwrap();
        let mu = super::super::maurer_cartan_functional(&q.algebra, &e1).unwrap();
        // ½ ω(h e1, e1) with h e1 = e1 and ω(e1,e1) = 0
        assert!(mu.is_zero());
        let w = s.parse_vector("v1 + v2").unwrap();
        let mu = super::super::maurer_cartan_functional(&q.algebra, &w).unwrap();
        // h(v1+v2) = v1 - v2, ω(v1 - v2, v1 + v2) = ω12 - ω21 = 2
        assert_eq!(mu, s.parse_vector("g1^").unwrap());
    }
}
