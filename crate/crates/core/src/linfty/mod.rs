//! L∞ algebras, L∞ morphisms into DG-Lie algebras and homotopy transfer.

mod morphism;
mod transfer;

pub use morphism::{check_morphism, LInftyMorphismToDgla};
pub(crate) use transfer::bracket_sum;
pub use transfer::{homotopy_transfer, transferred_bracket_on_classes, TransferResult};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dgla::DgLieAlgebra;
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::multilinear::MultilinearMap;
use crate::perm::{koszul_sign, Shuffles};
use crate::report::Violation;
use crate::scalar::{parity_sign, Sign};

/// Multibrackets `{·}_n` of degree `2 − n` for `n ≤ arity_bound`. Arities
/// beyond the bound are untracked; missing arities within it are zero.
#[derive(Clone, Debug)]
pub struct LInftyAlgebra {
    space: GradedSpace,
    brackets: BTreeMap<usize, MultilinearMap>,
    arity_bound: usize,
}

impl LInftyAlgebra {
    pub fn new(space: GradedSpace, brackets: BTreeMap<usize, MultilinearMap>, arity_bound: usize) -> Result<Self> {
        for (&n, m) in &brackets {
            if n == 0 || n > arity_bound {
                return Err(Error::ArityOutOfRange { arity: n, bound: arity_bound });
            }
            if m.arity() != n {
                return Err(Error::ArityMismatch { expected: n, got: m.arity() });
            }
            if !m.domain().same_as(&space) || !m.codomain().same_as(&space) {
                return Err(Error::SpaceMismatch);
            }
            if m.degree() != 2 - n as i32 && !m.is_zero() {
                return Err(Error::DegreeMismatch(format!("bracket of arity {n} has degree {}", m.degree())));
            }
        }
        Ok(LInftyAlgebra { space, brackets, arity_bound })
    }

    /// `{·}_1 = d`, `{·,·}_2 = [−,−]`, all higher brackets zero.
    pub fn from_dgla(a: &DgLieAlgebra, arity_bound: usize) -> Self {
        let mut brackets = BTreeMap::new();
        brackets.insert(1, MultilinearMap::from_linear(a.differential()));
        if arity_bound >= 2 {
            brackets.insert(2, a.bracket_map().clone());
        }
        LInftyAlgebra { space: a.space().clone(), brackets, arity_bound: arity_bound.max(1) }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn bracket(&self, n: usize) -> Option<&MultilinearMap> {
        self.brackets.get(&n)
    }

    pub fn brackets(&self) -> impl Iterator<Item = (&usize, &MultilinearMap)> {
        self.brackets.iter()
    }

    pub fn is_minimal(&self) -> bool {
        self.brackets.get(&1).is_none_or(MultilinearMap::is_zero)
    }

    pub(crate) fn eval(&self, n: usize, args: &[&Vector]) -> Vector {
        match self.brackets.get(&n) {
            Some(m) => m.evaluate_unchecked(args),
            None => Vector::zero(),
        }
    }

    /// Rescales `{·}_k` by `(−1)^{k(k−1)/2}`, converting between this
    /// convention and the Lada–Markl one. The map is an involution.
    pub fn convert_lada_markl(&self) -> LInftyAlgebra {
        let brackets = self
            .brackets
            .iter()
            .map(|(&k, m)| (k, m.scale(&parity_sign((k * (k.saturating_sub(1)) / 2) as i64).to_scalar())))
            .collect();
        LInftyAlgebra { space: self.space.clone(), brackets, arity_bound: self.arity_bound }
    }
}

pub(crate) fn degrees_of(space: &GradedSpace, tuple: &[usize]) -> Vec<i32> {
    tuple.iter().map(|&i| space.degree(i)).collect()
}

/// `Σ_k (−1)^{n−k} Σ_{σ∈S(k,n−k)} χ(σ) {{v_σ(1..k)}_k, v_σ(k+1..n)}_{n−k+1}`
/// on a tuple of basis indices.
pub fn jacobi_expression(a: &LInftyAlgebra, tuple: &[usize]) -> Vector {
    let n = tuple.len();
    let degs = degrees_of(&a.space, tuple);
    let mut total = Vector::zero();
    for k in 1..=n {
        let outer = n - k + 1;
        if !a.brackets.contains_key(&k) || !a.brackets.contains_key(&outer) {
            continue;
        }
        let sign_k = parity_sign((n - k) as i64);
        for sigma in Shuffles::new(k, n - k) {
            let chi = koszul_sign(&sigma, &degs).expect("shuffle is a permutation");
            let head: Vec<usize> = sigma[..k].iter().map(|&i| tuple[i]).collect();
            let inner = a.brackets[&k].eval_basis(&head);
            if inner.is_zero() {
                continue;
            }
            let rest: Vec<Vector> = sigma[k..].iter().map(|&i| Vector::basis(tuple[i])).collect();
            let mut args: Vec<&Vector> = vec![&inner];
            args.extend(rest.iter());
            let v = a.eval(outer, &args);
            match chi * sign_k {
                Sign::Plus => total.add_assign(&v),
                Sign::Minus => total.add_assign(&v.neg()),
            }
        }
    }
    total
}

/// Evaluates the generalized Jacobi identities for every arity up to
/// `up_to` on all canonical basis tuples.
pub fn check_linfty_axioms(a: &LInftyAlgebra, up_to: usize) -> Result<Vec<Violation>> {
    if up_to > a.arity_bound {
        return Err(Error::ArityOutOfRange { arity: up_to, bound: a.arity_bound });
    }
    let space = a.space.clone();
    let mut out = Vec::new();
    for n in 1..=up_to {
        let tuples = {
            let probe = MultilinearMap::zero(&space, &space, n, 0);
            probe.canonical_domain_tuples()
        };
        let found: Vec<Violation> = tuples
            .par_iter()
            .filter_map(|t| {
                let v = jacobi_expression(a, t);
                (!v.is_zero()).then(|| {
                    Violation::new(
                        format!("L∞ relation n={n}"),
                        t.iter().map(|&i| space.label(i).to_string()).collect(),
                        space.format_vector(&v),
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
    fn dglas_are_linfty() {
        for inst in corpus::paper_instances() {
            let l = LInftyAlgebra::from_dgla(&inst.algebra, 3);
            assert!(check_linfty_axioms(&l, 3).unwrap().is_empty(), "{}", inst.name);
        }
    }

    #[test]
    fn broken_leibniz_shows_at_arity_two() {
        let nc = corpus::nocontraction().algebra;
        let s = nc.space().clone();
        let mut br = nc.bracket_map().clone();
        br.set(&[s.index_of("a").unwrap(), s.index_of("b").unwrap()], s.parse_vector("b").unwrap()).unwrap();
        let bad = DgLieAlgebra::new(s, nc.differential().clone(), br).unwrap();
        let report = check_linfty_axioms(&LInftyAlgebra::from_dgla(&bad, 3), 3).unwrap();
        assert!(report.iter().any(|v| v.identity.ends_with("n=2") || v.identity.ends_with("n=3")));
    }

    #[test]
    fn lada_markl_conversion_is_an_involution() {
        let l = LInftyAlgebra::from_dgla(&corpus::nocontraction().algebra, 2);
        let back = l.convert_lada_markl().convert_lada_markl();
        assert_eq!(back.bracket(2), l.bracket(2));
        assert_eq!(l.convert_lada_markl().bracket(2), Some(&l.bracket(2).unwrap().scale(&crate::scalar::int(-1))));
    }

    #[test]
    fn arity_bound_is_enforced() {
        let l = LInftyAlgebra::from_dgla(&corpus::nocontraction().algebra, 2);
        assert!(check_linfty_axioms(&l, 3).is_err());
    }
}
