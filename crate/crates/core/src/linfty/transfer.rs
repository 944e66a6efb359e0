//! Homotopy transfer of a minimal L∞ structure along a splitting.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::{check_linfty_axioms, check_morphism, degrees_of, LInftyAlgebra, LInftyMorphismToDgla};
use crate::dgla::{DgLieAlgebra, Splitting};
use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::multilinear::MultilinearMap;
use crate::perm::{koszul_sign, Shuffles};
use crate::report::Violation;
use crate::scalar::{half, is_odd, parity_sign, Sign};

#[derive(Clone, Debug)]
pub struct TransferResult {
    /// `(H, 0, {·}_2, …, {·}_N)`.
    pub minimal: LInftyAlgebra,
    /// `ι = (ι_1, …, ι_N) : H → L`.
    pub inclusion: LInftyMorphismToDgla,
    pub arity_bound: usize,
    /// `check_linfty_axioms` on the minimal model, up to the bound.
    pub axiom_report: Vec<Violation>,
    /// `check_morphism` on the inclusion, up to the bound.
    pub morphism_report: Vec<Violation>,
}

impl TransferResult {
    pub fn iota(&self, p: usize) -> Option<&MultilinearMap> {
        self.inclusion.taylor(p)
    }

    pub fn bracket(&self, p: usize) -> Option<&MultilinearMap> {
        self.minimal.bracket(p)
    }

    pub fn is_verified(&self) -> bool {
        self.axiom_report.is_empty() && self.morphism_report.is_empty()
    }
}

/// `½ Σ_{k∈ks} Σ_{σ∈S(k,p−k)} χ(σ)(−1)^{α(σ)} [ι_k(ξ_σ…), ι_{p−k}(…ξ_σ(p))]`
/// on a basis tuple, where `iotas[k-1] = ι_k`. Terms with a vanishing factor
/// are skipped before the bracket is formed.
pub(crate) fn bracket_sum(
    a: &DgLieAlgebra,
    s: &Splitting,
    iotas: &[MultilinearMap],
    tuple: &[usize],
    ks: RangeInclusive<usize>,
) -> Vector {
    let p = tuple.len();
    let hs = s.cohomology_space();
    let degs = degrees_of(hs, tuple);
    let all_odd = degs.iter().all(|&d| is_odd(d));
    let mut acc = Vector::zero();
    for k in ks {
        if k == 0 || k >= p {
            continue;
        }
        for sigma in Shuffles::new(k, p - k) {
            let head: Vec<usize> = sigma[..k].iter().map(|&i| tuple[i]).collect();
            let left = iotas[k - 1].eval_basis(&head);
            if left.is_zero() {
                continue;
            }
            let tail: Vec<usize> = sigma[k..].iter().map(|&i| tuple[i]).collect();
            let right = iotas[p - k - 1].eval_basis(&tail);
            if right.is_zero() {
                continue;
            }
            let chi = koszul_sign(&sigma, &degs).expect("shuffle");
            let head_deg: i64 = head.iter().map(|&i| hs.degree(i) as i64).sum();
            let alpha = (1 - p as i64 + k as i64) * (k as i64 + head_deg);
            let sign = chi * parity_sign(alpha);
            if all_odd {
                assert_eq!(sign, Sign::Plus, "sign of a transfer term on odd inputs must be +1");
            }
            let v = a.bracket(&left, &right);
            match sign {
                Sign::Plus => acc.add_assign(&v),
                Sign::Minus => acc.add_assign(&v.neg()),
            }
        }
    }
    acc.scaled(&half())
}

/// Runs the transfer recursion up to arity `n` (levels in order, tuples of
/// one level in parallel) and re-verifies the L∞ relations of the result.
pub fn homotopy_transfer(a: &DgLieAlgebra, s: &Splitting, n: usize) -> Result<TransferResult> {
    if n < 2 {
        return Err(Error::ArityOutOfRange { arity: n, bound: 2 });
    }
    let hs = s.cohomology_space().clone();
    let l = a.space().clone();
    let mut iotas: Vec<MultilinearMap> = vec![MultilinearMap::from_linear(s.iota())];
    let mut brackets: BTreeMap<usize, MultilinearMap> = BTreeMap::new();
    for p in 2..=n {
        let mut iota_p = MultilinearMap::zero(&hs, &l, p, 1 - p as i32);
        let mut bracket_p = MultilinearMap::zero(&hs, &hs, p, 2 - p as i32);
        let tuples = iota_p.canonical_domain_tuples();
        let values: Vec<(Vec<usize>, Vector, Vector)> = tuples
            .into_par_iter()
            .filter_map(|t| {
                let b = bracket_sum(a, s, &iotas, &t, 1..=p - 1);
                if b.is_zero() {
                    return None;
                }
                Some((t, s.h().apply(&b), s.pi().apply(&b)))
            })
            .collect();
        for (t, i, br) in values {
            iota_p.insert_canonical(t.clone(), i);
            bracket_p.insert_canonical(t, br);
        }
        iotas.push(iota_p);
        brackets.insert(p, bracket_p);
    }
    brackets.insert(1, MultilinearMap::zero(&hs, &hs, 1, 1));
    let minimal = LInftyAlgebra::new(hs, brackets, n)?;
    let taylor: BTreeMap<usize, MultilinearMap> = iotas.into_iter().enumerate().map(|(i, m)| (i + 1, m)).collect();
    let inclusion = LInftyMorphismToDgla::new(minimal.clone(), a.clone(), taylor, n)?;
    let axiom_report = check_linfty_axioms(&minimal, n)?;
    let morphism_report = check_morphism(&inclusion, n)?;
    Ok(TransferResult { minimal, inclusion, arity_bound: n, axiom_report, morphism_report })
}

/// `{ξ_1, …, ξ_p}_p` on arbitrary elements of `H`.
pub fn transferred_bracket_on_classes(t: &TransferResult, classes: &[Vector]) -> Result<Vector> {
    let p = classes.len();
    if p == 0 || p > t.arity_bound {
        return Err(Error::ArityOutOfRange { arity: p, bound: t.arity_bound });
    }
    let args: Vec<&Vector> = classes.iter().collect();
    match t.minimal.bracket(p) {
        Some(m) => m.evaluate(&args),
        None => Ok(Vector::zero()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dgla::compute_splitting;

    #[test]
    fn nocontraction_values() {
        let a = corpus::nocontraction().algebra;
        let s = compute_splitting(&a);
        let t = homotopy_transfer(&a, &s, 4).unwrap();
        assert!(t.is_verified(), "{:?} {:?}", t.axiom_report, t.morphism_report);
        let hs = s.cohomology_space();
        let x = hs.index_of("x").unwrap();
        let p = a.space().parse_vector("p").unwrap();
        assert_eq!(t.iota(2).unwrap().eval_basis(&[x, x]), p.neg());
        let xv = hs.parse_vector("x").unwrap();
        let v = transferred_bracket_on_classes(&t, &[xv.clone(), xv.clone(), xv.clone()]).unwrap();
        assert_eq!(v, hs.parse_vector("-3*z").unwrap());
        let av = hs.parse_vector("a").unwrap();
        let yv = hs.parse_vector("y").unwrap();
        assert!(transferred_bracket_on_classes(&t, &[av, xv.clone()]).unwrap().is_zero());
        assert!(transferred_bracket_on_classes(&t, &[xv, yv]).unwrap().is_zero());
    }

    #[test]
    fn abelian_transfer_is_trivial() {
        let a = crate::dgla::DgLieAlgebra::abelian(corpus::nocontraction().algebra.space().clone());
        let s = compute_splitting(&a);
        let t = homotopy_transfer(&a, &s, 4).unwrap();
        for p in 2..=4 {
            assert!(t.iota(p).unwrap().is_zero());
            assert!(t.bracket(p).unwrap().is_zero());
        }
    }

    #[test]
    fn dropping_iota2_breaks_the_morphism() {
        let a = corpus::nocontraction().algebra;
        let s = compute_splitting(&a);
        let t = homotopy_transfer(&a, &s, 3).unwrap();
        let broken = t.inclusion.clone().with_taylor(2, None).unwrap();
        let report = check_morphism(&broken, 3).unwrap();
        assert!(!report.is_empty());
    }
}
