//! Making `K` orthogonal to `H`.

use num_traits::Zero;

use super::{CyclicPairing, QuasiCyclicDgla};
use crate::dgla::{check_invariance, check_invariance_where, Splitting};
use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::linalg::Matrix;
use crate::linear_map::LinearMap;
use crate::report::Violation;
use crate::scalar::format_scalar;
use crate::subspace;

#[derive(Clone, Debug)]
pub struct NormalizedSplitting {
    /// The algebra the splitting lives on: the input, or a quasi-isomorphic
    /// subalgebra when a restriction was needed.
    pub quasi: QuasiCyclicDgla,
    pub splitting: Splitting,
    /// Inclusion of `quasi.algebra` into the input algebra.
    pub inclusion: LinearMap,
    pub restricted: bool,
    /// `H⁰` in the coordinates of `quasi.algebra`.
    pub h0: Vec<Vector>,
    /// Invariance failures over all degrees (empty means the strong form
    /// holds for every `i`).
    pub invariance: Vec<Violation>,
    /// Invariance failures in degrees `i > 0` only.
    pub invariance_positive: Vec<Violation>,
}

fn needs_restriction(q: &QuasiCyclicDgla, s: &Splitting, h0: &[Vector]) -> bool {
    let sp = q.algebra.space();
    if sp.degrees().iter().any(|&d| d < 0) {
        return true;
    }
    let k0 = s.complement_in_degree(0);
    h0.iter().any(|g| k0.iter().any(|k| !subspace::contains(&k0, &q.algebra.bracket(g, k))))
}

/// Restricts to `H⁰ ⊕ (H¹ ⊕ K¹) ⊕ L^{≥2}` when `L` has negative degrees or
/// `K⁰` is not `H⁰`-invariant, then replaces every `K^i` by
/// `C^i = {x ∈ H^i ⊕ K^i : (x, H^{n−i}) = 0}`.
///
/// `h0` must span the `H⁰` of `s`.
pub fn normalize_splitting(q: &QuasiCyclicDgla, s: &Splitting, h0: &[Vector]) -> Result<NormalizedSplitting> {
    if !q.is_quasi_cyclic() {
        return Err(Error::Normalization("the pairing is not quasi-cyclic".into()));
    }
    let a = &q.algebra;
    let sp = a.space();
    let n = q.degree();
    let (quasi, split, inclusion, restricted, h0) = if needs_restriction(q, s, h0) {
        let mut basis: Vec<(String, Vector)> = Vec::new();
        let named = |v: &Vector| (sp.derived_label(v), v.clone());
        for v in s.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, 0)) {
            basis.push(named(v));
        }
        for v in s.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, 1)) {
            basis.push(named(v));
        }
        for v in s.complement_in_degree(1) {
            basis.push(named(&v));
        }
        for i in (0..sp.dim()).filter(|&i| sp.degree(i) >= 2) {
            basis.push((sp.label(i).to_string(), Vector::basis(i)));
        }
        let (sub, inc) = a.subalgebra(&basis).map_err(|e| Error::Normalization(format!("restriction failed: {e}")))?;
        let vectors: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
        let to_sub = |v: &Vector| -> Result<Vector> {
            let c = subspace::coordinates(&vectors, v)
                .ok_or_else(|| Error::Normalization(format!("{} is outside the restriction", sp.format_vector(v))))?;
            Ok(Vector::from_dense(&(0..vectors.len()).collect::<Vec<_>>(), &c))
        };
        let hs = s
            .harmonic()
            .iter()
            .filter(|v| v.homogeneous_degree(sp).flatten().unwrap_or(-1) >= 0)
            .map(to_sub)
            .collect::<Result<Vec<_>>>()?;
        if hs.len() != s.harmonic().len() {
            return Err(Error::Normalization("H has elements in negative degrees".into()));
        }
        let ks = s
            .complement()
            .iter()
            .filter(|v| v.homogeneous_degree(sp).flatten().unwrap_or(-1) >= 1)
            .map(to_sub)
            .collect::<Result<Vec<_>>>()?;
        let mut entries = Vec::new();
        for i in 0..vectors.len() {
            for j in 0..vectors.len() {
                entries.push(((i, j), q.pairing.eval(&vectors[i], &vectors[j])));
            }
        }
        let pairing = CyclicPairing::from_table(sub.space(), n, entries)?;
        let restricted_q = QuasiCyclicDgla::classify(sub.clone(), pairing)?;
        let split = Splitting::from_subspaces(&sub, hs, ks)?;
        let h0s = h0.iter().map(to_sub).collect::<Result<Vec<_>>>()?;
        (restricted_q, split, inc, true, h0s)
    } else {
        (q.clone(), s.clone(), LinearMap::identity(sp), false, h0.to_vec())
    };

    let a = &quasi.algebra;
    let sp = a.space();
    let mut complement = Vec::new();
    for deg in sp.support() {
        let hs: Vec<Vector> = split.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, deg)).cloned().collect();
        let ks = split.complement_in_degree(deg);
        if ks.is_empty() {
            continue;
        }
        let dual: Vec<Vector> = split.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, n - deg)).cloned().collect();
        let mut cols = hs.clone();
        cols.extend(ks.iter().cloned());
        let c: Vec<Vector> = if dual.is_empty() {
            ks.clone()
        } else {
            let gram = quasi.pairing.gram(&dual, &cols);
            gram.kernel().iter().map(|k| subspace::combine(&cols, k)).collect()
        };
        let mut check = hs.clone();
        check.extend(c.iter().cloned());
        if c.len() != ks.len() || !subspace::is_independent(&check) {
            return Err(Error::Normalization(format!(
                "degree {deg}: H^i ⊕ C^i → H^i ⊕ K^i is not an isomorphism (dim C = {}, dim K = {})",
                c.len(),
                ks.len()
            )));
        }
        complement.extend(c);
    }
    let splitting = Splitting::from_subspaces(a, split.harmonic().to_vec(), complement)
        .map_err(|e| Error::Normalization(e.to_string()))?;
    let splitting = splitting.with_cohomology_labels(s.cohomology_space().labels())?;
    let invariance = check_invariance(&splitting, &h0);
    let invariance_positive = check_invariance_where(&splitting, &h0, |d| d > 0);
    Ok(NormalizedSplitting { quasi, splitting, inclusion, restricted, h0, invariance, invariance_positive })
}

/// The identities that hold for an orthogonal splitting:
/// `(ι₁x, ι₁y) = (x,y)`, `(h l, ι₁x) = 0`, `(π l, x) = (l, ι₁x)`, `H ⊥ K`, and
/// `K ⊕ d(K)` equal to the annihilator of `H`.
pub fn orthogonality_report(p: &CyclicPairing, s: &Splitting) -> Vec<Violation> {
    let sp = p.space();
    let hs = s.cohomology_space();
    let hp = p.pullback(s.iota()).expect("ι₁ lands in L");
    let mut out = Vec::new();
    for x in 0..hs.dim() {
        let ix = s.iota().column(x);
        for y in 0..hs.dim() {
            let l = p.eval(ix, s.iota().column(y));
            if l != hp.basis(x, y) {
                out.push(Violation::new(
                    "(ι₁x, ι₁y) = (x,y)",
                    vec![hs.label(x).into(), hs.label(y).into()],
                    format_scalar(&l),
                ));
            }
        }
        for l in 0..sp.dim() {
            let e = Vector::basis(l);
            let w = vec![sp.label(l).to_string(), hs.label(x).to_string()];
            let v = p.eval(&s.h().apply(&e), ix);
            if !v.is_zero() {
                out.push(Violation::new("(h(l), ι₁x) = 0", w.clone(), format_scalar(&v)));
            }
            let lhs = hp.eval(&s.pi().apply(&e), &Vector::basis(x));
            let rhs = p.eval(&e, ix);
            if lhs != rhs {
                out.push(Violation::new(
                    "(π(l), x) = (l, ι₁x)",
                    w,
                    format!("{} vs {}", format_scalar(&lhs), format_scalar(&rhs)),
                ));
            }
        }
        for k in s.complement() {
            let v = p.eval(k, ix);
            if !v.is_zero() {
                out.push(Violation::new("H ⊥ K", vec![hs.label(x).into(), sp.derived_label(k)], format_scalar(&v)));
            }
        }
    }
    let h_vectors = s.harmonic();
    if !h_vectors.is_empty() && sp.dim() > 0 {
        let all: Vec<Vector> = (0..sp.dim()).map(Vector::basis).collect();
        let gram: Matrix = p.gram(h_vectors, &all);
        let annihilator = gram.kernel().len();
        let mut kdk = s.complement().to_vec();
        kdk.extend(s.boundaries());
        if annihilator != kdk.len() {
            out.push(Violation::new(
                "x ∈ K ⊕ d(K) ⟺ (x,H) = 0",
                vec![],
                format!("annihilator of H has dimension {annihilator}, K ⊕ d(K) has {}", kdk.len()),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dgla::{compute_splitting, verify_splitting};

    #[test]
    fn orthogonal_splitting_is_unchanged() {
        let q = corpus::sl2_on_plane().quasi_cyclic().unwrap();
        let s = compute_splitting(&q.algebra);
        let h0: Vec<Vector> =
            s.harmonic().iter().filter(|v| v.is_homogeneous_of(q.algebra.space(), 0)).cloned().collect();
        let nrm = normalize_splitting(&q, &s, &h0).unwrap();
        assert!(!nrm.restricted);
        assert_eq!(nrm.splitting.complement(), s.complement());
    }

    #[test]
    fn tilted_complement_is_straightened() {
        let inst = corpus::sl2_surface();
        let q = inst.quasi_cyclic().unwrap();
        let a = &q.algebra;
        let base = compute_splitting(a);
        let sp = a.space();
        let h1: Vec<Vector> = base.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, 1)).cloned().collect();
        let tilted: Vec<Vector> = base
            .complement()
            .iter()
            .enumerate()
            .map(|(t, k)| if k.is_homogeneous_of(sp, 1) { k.plus(&h1[t % h1.len()]) } else { k.clone() })
            .collect();
        let s = Splitting::from_subspaces(a, base.harmonic().to_vec(), tilted).unwrap();
        assert!(!orthogonality_report(&q.pairing, &s).is_empty());
        let h0: Vec<Vector> = s.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, 0)).cloned().collect();
        let nrm = normalize_splitting(&q, &s, &h0).unwrap();
        assert!(verify_splitting(&nrm.splitting).is_empty());
        assert!(orthogonality_report(&nrm.quasi.pairing, &nrm.splitting).is_empty());
    }

    #[test]
    fn degenerate_cohomology_pairing_is_rejected() {
        let a = corpus::nocontraction().algebra;
        let q = QuasiCyclicDgla::classify(a.clone(), CyclicPairing::zero(a.space(), 2)).unwrap();
        let s = compute_splitting(&a);
        assert!(matches!(normalize_splitting(&q, &s, &[]), Err(Error::Normalization(_))));
    }
}
