use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use super::{degrees_of, LInftyAlgebra};
use crate::dgla::DgLieAlgebra;
use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::multilinear::MultilinearMap;
use crate::perm::{koszul_sign, Shuffles};
use crate::report::Violation;
use crate::scalar::{half, parity_sign, Scalar, Sign};

/// Taylor coefficients `g_n : V^{∧n} → L` of degree `1 − n`.
#[derive(Clone, Debug)]
pub struct LInftyMorphismToDgla {
    source: LInftyAlgebra,
    target: DgLieAlgebra,
    taylor: BTreeMap<usize, MultilinearMap>,
    arity_bound: usize,
}

impl LInftyMorphismToDgla {
    pub fn new(
        source: LInftyAlgebra,
        target: DgLieAlgebra,
        taylor: BTreeMap<usize, MultilinearMap>,
        arity_bound: usize,
    ) -> Result<Self> {
        for (&n, g) in &taylor {
            if n == 0 || n > arity_bound {
                return Err(Error::ArityOutOfRange { arity: n, bound: arity_bound });
            }
            if g.arity() != n {
                return Err(Error::ArityMismatch { expected: n, got: g.arity() });
            }
            if !g.domain().same_as(source.space()) || !g.codomain().same_as(target.space()) {
                return Err(Error::SpaceMismatch);
            }
            if g.degree() != 1 - n as i32 && !g.is_zero() {
                return Err(Error::DegreeMismatch(format!(
                    "g_{n} has degree {}, expected {}",
                    g.degree(),
                    1 - n as i32
                )));
            }
        }
        Ok(LInftyMorphismToDgla { source, target, taylor, arity_bound })
    }

    /// `g_1 = id`, nothing else.
    pub fn identity(a: &DgLieAlgebra, arity_bound: usize) -> Self {
        let mut taylor = BTreeMap::new();
        taylor.insert(1, MultilinearMap::from_linear(&crate::linear_map::LinearMap::identity(a.space())));
        LInftyMorphismToDgla {
            source: LInftyAlgebra::from_dgla(a, arity_bound),
            target: a.clone(),
            taylor,
            arity_bound,
        }
    }

    pub fn source(&self) -> &LInftyAlgebra {
        &self.source
    }

    pub fn target(&self) -> &DgLieAlgebra {
        &self.target
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn taylor(&self, n: usize) -> Option<&MultilinearMap> {
        self.taylor.get(&n)
    }

    /// Replaces (or removes, when `None`) one coefficient.
    pub fn with_taylor(mut self, n: usize, g: Option<MultilinearMap>) -> Result<Self> {
        match g {
            Some(g) => {
                let mut t = self.taylor.clone();
                t.insert(n, g);
                let m = LInftyMorphismToDgla::new(self.source, self.target, t, self.arity_bound)?;
                Ok(m)
            }
            None => {
                self.taylor.remove(&n);
                Ok(self)
            }
        }
    }

    fn g_basis(&self, n: usize, tuple: &[usize]) -> Vector {
        self.taylor.get(&n).map_or_else(Vector::zero, |g| g.eval_basis(tuple))
    }

    /// Left side minus right side of the morphism relation at a basis tuple.
    pub fn defect(&self, tuple: &[usize]) -> Vector {
        let n = tuple.len();
        let degs = degrees_of(self.source.space(), tuple);
        let mut lhs = Vector::zero();
        for p in 1..n {
            for sigma in Shuffles::new(p, n - p) {
                let head: Vec<usize> = sigma[..p].iter().map(|&i| tuple[i]).collect();
                let a = self.g_basis(p, &head);
                if a.is_zero() {
                    continue;
                }
                let tail: Vec<usize> = sigma[p..].iter().map(|&i| tuple[i]).collect();
                let b = self.g_basis(n - p, &tail);
                if b.is_zero() {
                    continue;
                }
                let chi = koszul_sign(&sigma, &degs).expect("shuffle");
                let head_deg: i64 = head.iter().map(|&i| self.source.space().degree(i) as i64).sum();
                let eps = parity_sign((1 - n as i64 + p as i64) * (head_deg - p as i64));
                let v = self.target.bracket(&a, &b);
                lhs.add_scaled(&v, &(chi * eps).to_scalar());
            }
        }
        lhs = lhs.scaled(&half());
        lhs.add_assign(&self.target.d(&self.g_basis(n, tuple)));

        let mut rhs = Vector::zero();
        for k in 1..=n {
            let outer = n - k + 1;
            let Some(g) = self.taylor.get(&outer) else { continue };
            let Some(br) = self.source.bracket(k) else { continue };
            let sign_k = parity_sign((n - k) as i64);
            for sigma in Shuffles::new(k, n - k) {
                let head: Vec<usize> = sigma[..k].iter().map(|&i| tuple[i]).collect();
                let inner = br.eval_basis(&head);
                if inner.is_zero() {
                    continue;
                }
                let chi = koszul_sign(&sigma, &degs).expect("shuffle");
                let rest: Vec<Vector> = sigma[k..].iter().map(|&i| Vector::basis(tuple[i])).collect();
                let mut args: Vec<&Vector> = vec![&inner];
                args.extend(rest.iter());
                let v = g.evaluate_unchecked(&args);
                let c: Scalar = match chi * sign_k {
                    Sign::Plus => Scalar::one(),
                    Sign::Minus => -Scalar::one(),
                };
                rhs.add_scaled(&v, &c);
            }
        }
        lhs.minus(&rhs)
    }
}

/// Evaluates the morphism relation at every arity up to `up_to` on all
/// canonical basis tuples of the source.
pub fn check_morphism(m: &LInftyMorphismToDgla, up_to: usize) -> Result<Vec<Violation>> {
    let bound = m.arity_bound.min(m.source.arity_bound());
    if up_to > bound {
        return Err(Error::ArityOutOfRange { arity: up_to, bound });
    }
    let space = m.source.space().clone();
    let target = m.target.space().clone();
    let mut out = Vec::new();
    for n in 1..=up_to {
        let tuples = MultilinearMap::zero(&space, &space, n, 0).canonical_domain_tuples();
        let found: Vec<Violation> = tuples
            .par_iter()
            .filter_map(|t| {
                let v = m.defect(t);
                (!v.is_zero()).then(|| {
                    Violation::new(
                        format!("morphism relation n={n}"),
                        t.iter().map(|&i| space.label(i).to_string()).collect(),
                        target.format_vector(&v),
                    )
                })
            })
            .collect();
        out.extend(found);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_is_a_morphism() {
        for inst in corpus::paper_instances() {
            let m = LInftyMorphismToDgla::identity(&inst.algebra, 3);
            assert!(check_morphism(&m, 3).unwrap().is_empty(), "{}", inst.name);
        }
    }
}
