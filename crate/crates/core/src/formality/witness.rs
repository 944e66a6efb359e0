//! The explicit `L∞` quasi-isomorphism from the transferred minimal model
//! to cohomology, for quasi-cyclic DG-Lie algebras of degree at most 2.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{orthogonality_report, CyclicPairing, QuasiCyclicDgla};
use crate::dgla::{check_invariance_where, cohomology, validate_dgla, DgLieAlgebra, Splitting};
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linear_map::LinearMap;
use crate::linfty::{bracket_sum, check_morphism, homotopy_transfer, LInftyMorphismToDgla, TransferResult};
use crate::multilinear::MultilinearMap;
use crate::perm::{canonical_tuples, Shuffles};
use crate::report::Violation;
use crate::scalar::{half, Scalar};
use crate::subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FunctionalKind {
    /// `(ι_j(ξ_1..ξ_j), ι_{p−j}(ξ_{j+1}..ξ_p))` in `L`.
    Iota,
    /// `(f_j(ξ_1..ξ_j), f_{p−j}(ξ_{j+1}..ξ_p))` in `H`.
    Witness,
}

/// A scalar `p`-linear form on `H¹` that is symmetric in its first `j`
/// and in its last `p − j` arguments.
#[derive(Clone, Debug)]
pub struct PairingFunctional {
    pub kind: FunctionalKind,
    pub arity: usize,
    pub split: usize,
    table: BTreeMap<(Vec<usize>, Vec<usize>), Scalar>,
}

impl PairingFunctional {
    /// Value on a tuple of `H` basis indices; both blocks are sorted first.
    pub fn eval(&self, tuple: &[usize]) -> Scalar {
        let mut head = tuple[..self.split].to_vec();
        let mut tail = tuple[self.split..].to_vec();
        head.sort_unstable();
        tail.sort_unstable();
        self.table.get(&(head, tail)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &Scalar)> {
        self.table.iter()
    }
}

fn odd_tuples(hs: &GradedSpace, arity: usize) -> Vec<Vec<usize>> {
    canonical_tuples(&hs.indices_in_degree(1), arity, &|i| hs.degree(i))
}

fn tabulate(
    hs: &GradedSpace,
    p: usize,
    j: usize,
    kind: FunctionalKind,
    value: impl Fn(&[usize], &[usize]) -> Scalar + Sync,
) -> PairingFunctional {
    let heads = odd_tuples(hs, j);
    let tails = odd_tuples(hs, p - j);
    let table = heads
        .par_iter()
        .flat_map_iter(|u| {
            tails.iter().filter_map(|w| {
                let v = value(u, w);
                (!v.is_zero()).then(|| ((u.clone(), w.clone()), v))
            })
        })
        .collect();
    PairingFunctional { kind, arity: p, split: j, table }
}

fn check_split(p: usize, j: usize, bound: usize) -> Result<()> {
    if j == 0 || j >= p {
        return Err(Error::ArityOutOfRange { arity: j, bound: p - 1 });
    }
    let top = j.max(p - j);
    if top > bound {
        return Err(Error::ArityOutOfRange { arity: top, bound });
    }
    Ok(())
}

/// `I^p_j` on `H¹`, read off the transferred inclusion.
pub fn compute_i(t: &TransferResult, pairing: &CyclicPairing, p: usize, j: usize) -> Result<PairingFunctional> {
    check_split(p, j, t.arity_bound)?;
    let (left, right) = (t.iota(j).expect("computed"), t.iota(p - j).expect("computed"));
    let hs = t.minimal.space();
    Ok(tabulate(hs, p, j, FunctionalKind::Iota, |u, w| {
        let x = left.eval_basis(u);
        if x.is_zero() {
            return Scalar::zero();
        }
        pairing.eval(&x, &right.eval_basis(w))
    }))
}

/// `F^p_j` on `H¹`, from the Taylor coefficients computed so far.
pub fn compute_f(
    taylor: &BTreeMap<usize, MultilinearMap>,
    pairing_on_h: &CyclicPairing,
    p: usize,
    j: usize,
) -> Result<PairingFunctional> {
    let bound = taylor.keys().next_back().copied().unwrap_or(0);
    check_split(p, j, bound)?;
    let (left, right) = (&taylor[&j], &taylor[&(p - j)]);
    Ok(tabulate(pairing_on_h.space(), p, j, FunctionalKind::Witness, |u, w| {
        let x = left.eval_basis(u);
        if x.is_zero() {
            return Scalar::zero();
        }
        pairing_on_h.eval(&x, &right.eval_basis(w))
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub checked: usize,
}

#[derive(Clone, Debug)]
pub struct FormalityWitness {
    pub degree: i32,
    pub arity_bound: usize,
    /// `f_1 = id`, `f_2 = 0`, and the recursively defined `f_p`.
    pub taylor: BTreeMap<usize, MultilinearMap>,
    /// `H*(L)` with zero differential and the induced bracket.
    pub cohomology: DgLieAlgebra,
    pub lemmas: Vec<LemmaCheck>,
    /// Failures of `{f_p(ξ), g} = Σ f_p(…{ξ_i, g}…)`.
    pub equivariance: Vec<Violation>,
    /// Failures of the relation expressing `{·}_{p+1}` through the `f_j`.
    pub bracket_relation: Vec<Violation>,
}

impl FormalityWitness {
    pub fn morphism(&self, t: &TransferResult) -> Result<LInftyMorphismToDgla> {
        LInftyMorphismToDgla::new(t.minimal.clone(), self.cohomology.clone(), self.taylor.clone(), self.arity_bound)
    }
}

/// Hypotheses of the formality theorem, read on a splitting:
/// `H^i = 0` for `i < 0`, `H⁰` closed under the bracket, `H^i` and `K^i`
/// stable under `H⁰` for `i > 0`, and `K ⊕ d(K)` orthogonal to `H`.
pub fn theorem_hypotheses(q: &QuasiCyclicDgla, s: &Splitting) -> Vec<Violation> {
    let a = &q.algebra;
    let sp = a.space();
    let mut out = Vec::new();
    let hs = s.cohomology_space();
    for i in (0..hs.dim()).filter(|&i| hs.degree(i) < 0) {
        out.push(Violation::new(
            "H^i = 0 for i < 0",
            vec![hs.label(i).to_string()],
            format!("degree {}", hs.degree(i)),
        ));
    }
    let h0: Vec<Vector> = s.harmonic_in_degree(0).into_iter().map(|t| s.iota().column(t).clone()).collect();
    for g in &h0 {
        for g2 in &h0 {
            let b = a.bracket(g, g2);
            if !subspace::contains(&h0, &b) {
                out.push(Violation::new(
                    "[H^0, H^0] ⊆ H^0",
                    vec![sp.derived_label(g), sp.derived_label(g2)],
                    format!("bracket = {}", sp.format_vector(&b)),
                ));
            }
        }
    }
    out.extend(check_invariance_where(s, &h0, |d| d > 0));
    out.extend(orthogonality_report(&q.pairing, s).into_iter().filter(|v| v.identity == "H ⊥ K"));
    out
}

struct Ctx<'a> {
    q: &'a QuasiCyclicDgla,
    s: &'a Splitting,
    t: &'a TransferResult,
    hs: GradedSpace,
    h0: Vec<usize>,
    h1: Vec<usize>,
    hbracket: &'a MultilinearMap,
}

impl Ctx<'_> {
    fn fail(&self, lemma: &str, tuple: &[usize]) -> Error {
        let labels: Vec<&str> = tuple.iter().map(|&i| self.hs.label(i)).collect();
        Error::LemmaViolation {
            lemma: lemma.to_string(),
            tuple: format!("({})", labels.join(", ")),
            hypotheses_hold: validate_dgla(&self.q.algebra).is_empty()
                && self.q.is_quasi_cyclic()
                && theorem_hypotheses(self.q, self.s).is_empty(),
        }
    }

    fn first_failure(
        &self,
        lemma: &str,
        tuples: Vec<Vec<usize>>,
        ok: impl Fn(&[usize]) -> bool + Sync,
    ) -> Result<LemmaCheck> {
        let bad = tuples.par_iter().find_first(|t| !ok(t));
        match bad {
            Some(t) => Err(self.fail(lemma, t)),
            None => Ok(LemmaCheck { lemma: lemma.to_string(), checked: tuples.len() }),
        }
    }

    fn iota(&self, p: usize) -> &MultilinearMap {
        self.t.iota(p).expect("transfer computed to the bound")
    }

    /// `{ξ, g}` for basis indices.
    fn act(&self, xi: usize, g: usize) -> Vector {
        self.hbracket.eval_basis(&[xi, g])
    }

    /// `Σ_i m(ξ_1, …, {ξ_i, g}, …, ξ_p)` on basis indices.
    fn derivation_sum(&self, m: &MultilinearMap, tuple: &[usize], g: usize) -> Vector {
        let mut acc = Vector::zero();
        for i in 0..tuple.len() {
            let moved = self.act(tuple[i], g);
            if moved.is_zero() {
                continue;
            }
            let basis: Vec<Vector> = tuple.iter().map(|&k| Vector::basis(k)).collect();
            let mut args: Vec<&Vector> = basis.iter().collect();
            args[i] = &moved;
            acc.add_assign(&m.evaluate_unchecked(&args));
        }
        acc
    }

    fn with_h0(&self, tuples: Vec<Vec<usize>>) -> Vec<(Vec<usize>, usize)> {
        tuples.into_iter().flat_map(|t| self.h0.iter().map(move |&g| (t.clone(), g))).collect()
    }
}

fn all_tuples(hs: &GradedSpace, p: usize) -> Vec<Vec<usize>> {
    MultilinearMap::zero(hs, hs, p, 0).canonical_domain_tuples()
}

/// Builds the witness and checks every lemma it relies on; a failed lemma is
/// fatal.
pub fn build_formality_witness(
    q: &QuasiCyclicDgla,
    s: &Splitting,
    arity: usize,
) -> Result<(FormalityWitness, TransferResult)> {
    let dgla = validate_dgla(&q.algebra);
    if !dgla.is_empty() {
        return Err(Error::InvalidAlgebra(dgla));
    }
    if !q.is_quasi_cyclic() {
        let mut v = q.report.violations.clone();
        if v.is_empty() {
            v.push(Violation::new(
                "non-degenerate on cohomology",
                vec![],
                format!("rank {} < {}", q.report.rank_on_h, q.report.dim_h),
            ));
        }
        return Err(Error::Hypothesis(v));
    }
    let hyp = theorem_hypotheses(q, s);
    if !hyp.is_empty() {
        return Err(Error::Hypothesis(hyp));
    }
    build_formality_witness_unchecked(q, s, arity)
}

/// [`build_formality_witness`] without the up-front hypothesis checks. The
/// lemma assertions still run and report whether the hypotheses hold.
pub fn build_formality_witness_unchecked(
    q: &QuasiCyclicDgla,
    s: &Splitting,
    arity: usize,
) -> Result<(FormalityWitness, TransferResult)> {
    let n = q.degree();
    if n >= 3 {
        return Err(Error::DegreeUnsupported(n));
    }
    let a = &q.algebra;
    let t = homotopy_transfer(a, s, arity)?;
    let coh = cohomology(a, s).algebra;
    let hs = s.cohomology_space().clone();
    let cx = Ctx {
        q,
        s,
        t: &t,
        h0: hs.indices_in_degree(0),
        h1: hs.indices_in_degree(1),
        hs: hs.clone(),
        hbracket: coh.bracket_map(),
    };
    if !t.is_verified() {
        let first = t.axiom_report.iter().chain(&t.morphism_report).next().expect("non-empty");
        return Err(Error::LemmaViolation {
            lemma: first.identity.clone(),
            tuple: format!("({})", first.witness.join(", ")),
            hypotheses_hold: true,
        });
    }
    let iotas: Vec<MultilinearMap> = (1..=arity).map(|p| cx.iota(p).clone()).collect();
    let mut lemmas = Vec::new();

    // Anything touching H⁰ is killed by ι_p (p ≥ 2) and {·}_p (p ≥ 3).
    for p in 2..=arity {
        let tuples: Vec<Vec<usize>> =
            all_tuples(&hs, p).into_iter().filter(|t| t.iter().any(|i| cx.h0.contains(i))).collect();
        let br = t.bracket(p).expect("computed");
        lemmas.push(cx.first_failure(&format!("ι_{p} vanishes on H⁰"), tuples.clone(), |u| {
            cx.iota(p).eval_basis(u).is_zero()
        })?);
        if p >= 3 {
            lemmas
                .push(cx.first_failure(&format!("{{·}}_{p} vanishes on H⁰"), tuples, |u| br.eval_basis(u).is_zero())?);
        }
    }

    if n <= 1 {
        for p in 3..=arity {
            let br = t.bracket(p).expect("computed");
            lemmas
                .push(cx.first_failure(&format!("{{·}}_{p} = 0"), all_tuples(&hs, p), |u| br.eval_basis(u).is_zero())?);
        }
    }

    let mut taylor: BTreeMap<usize, MultilinearMap> = BTreeMap::new();
    taylor.insert(1, MultilinearMap::from_linear(&LinearMap::identity(&hs)));
    for p in 2..=arity {
        taylor.insert(p, MultilinearMap::zero(&hs, &hs, p, 1 - p as i32));
    }

    if n == 2 {
        let pairing_h = q.pairing.pullback(s.iota())?;

        for p in 3..=arity {
            let prev = cx.iota(p - 1);
            let pairs: Vec<Vec<usize>> = odd_tuples(&hs, p - 1)
                .into_iter()
                .flat_map(|u| cx.h1.iter().map(move |&e| [u.clone(), vec![e]].concat()))
                .collect();
            lemmas.push(cx.first_failure(&format!("π[ι_{}(ξ), ι_1(η)] = 0 on H¹", p - 1), pairs, |u| {
                let left = prev.eval_basis(&u[..p - 1]);
                left.is_zero() || s.pi().apply(&a.bracket(&left, s.iota().column(u[p - 1]))).is_zero()
            })?);
            let br = t.bracket(p).expect("computed");
            lemmas.push(cx.first_failure(
                &format!("reduced formula for {{·}}_{p} on H¹"),
                odd_tuples(&hs, p),
                |u| {
                    let reduced =
                        if p >= 4 { s.pi().apply(&bracket_sum(a, s, &iotas, u, 2..=p - 2)) } else { Vector::zero() };
                    br.eval_basis(u) == reduced
                },
            )?);
        }

        for p in 2..=arity {
            let ip = cx.iota(p);
            lemmas.push(cx.first_failure_pairs(
                &format!("ι_{p} is H⁰-equivariant on H¹"),
                cx.with_h0(odd_tuples(&hs, p)),
                |u, g| {
                    let lhs = a.bracket(&ip.eval_basis(u), s.iota().column(g));
                    lhs == cx.derivation_sum(ip, u, g)
                },
            )?);
        }

        let mut functionals: BTreeMap<(usize, usize), PairingFunctional> = BTreeMap::new();
        for q_ in 2..=arity + 1 {
            for j in 1..q_ {
                if j > arity || q_ - j > arity {
                    continue;
                }
                let f = compute_i(&t, &q.pairing, q_, j)?;
                if q_ >= 3 && (j == 1 || j == q_ - 1) {
                    if let Some(((u, w), _)) = f.entries().next() {
                        return Err(cx.fail(&format!("I^{q_}_{j} = 0"), &[u.clone(), w.clone()].concat()));
                    }
                    lemmas.push(LemmaCheck {
                        lemma: format!("I^{q_}_{j} = 0"),
                        checked: odd_tuples(&hs, j).len() * odd_tuples(&hs, q_ - j).len(),
                    });
                }
                let (left, right) = (cx.iota(j), cx.iota(q_ - j));
                let blocks = block_pairs(&hs, j, q_ - j);
                lemmas.push(cx.first_failure_pairs(
                    &format!("Σ_i I^{q_}_{j}(…{{ξ_i,g}}…) = 0"),
                    cx.with_h0(blocks),
                    |u, g| split_derivation_sum(&cx, left, right, &q.pairing, u, j, g).is_zero(),
                )?);
                functionals.insert((q_, j), f);
            }
        }

        let h1_vectors: Vec<Vector> = cx.h1.iter().map(|&i| Vector::basis(i)).collect();
        let gram = pairing_h.gram(&h1_vectors, &h1_vectors);
        let solver = gram.transpose().inverse().map_err(|_| Error::Singular("the pairing on H¹".into()))?;

        for p in 3..=arity {
            for j in 2..p {
                let (left, right) = (&taylor[&j], &taylor[&(p + 1 - j)]);
                lemmas.push(cx.first_failure_pairs(
                    &format!("Σ_i F^{}_{j}(…{{ξ_i,g}}…) = 0", p + 1),
                    cx.with_h0(block_pairs(&hs, j, p + 1 - j)),
                    |u, g| split_derivation_sum(&cx, left, right, &pairing_h, u, j, g).is_zero(),
                )?);
            }
            let fs: BTreeMap<usize, PairingFunctional> =
                (2..p).map(|j| Ok((j, compute_f(&taylor, &pairing_h, p + 1, j)?))).collect::<Result<_>>()?;
            let values: Vec<(Vec<usize>, Vector)> = odd_tuples(&hs, p)
                .into_par_iter()
                .map(|xi| {
                    let rhs: Vec<Scalar> = cx
                        .h1
                        .iter()
                        .map(|&e| {
                            let mut acc = Scalar::zero();
                            for j in 2..p {
                                let i_f = &functionals[&(p + 1, j)];
                                let f_f = &fs[&j];
                                for sigma in Shuffles::new(j, p - j) {
                                    let mut arg: Vec<usize> = sigma.iter().map(|&k| xi[k]).collect();
                                    arg.push(e);
                                    acc += i_f.eval(&arg) - f_f.eval(&arg);
                                }
                            }
                            acc * half()
                        })
                        .collect();
                    let c = solver.mul_vec(&rhs).expect("square");
                    (xi, Vector::from_dense(&cx.h1, &c))
                })
                .collect();
            let fp = taylor.get_mut(&p).expect("allocated");
            for (xi, v) in values {
                if !v.is_zero() {
                    fp.set(&xi, v)?;
                }
            }
        }
    }

    let mut equivariance = Vec::new();
    let mut bracket_relation = Vec::new();
    for p in 2..=arity {
        let fp = &taylor[&p];
        for (u, g) in cx.with_h0(odd_tuples(&hs, p)) {
            let lhs = coh.bracket(&fp.eval_basis(&u), &Vector::basis(g));
            let rhs = cx.derivation_sum(fp, &u, g);
            if lhs != rhs {
                let mut w = fp.tuple_labels(&u);
                w.push(hs.label(g).to_string());
                equivariance.push(Violation::new(
                    format!("{{f_{p}(ξ), g}} = Σ f_{p}(…{{ξ_i,g}}…)"),
                    w,
                    hs.format_vector(&lhs.minus(&rhs)),
                ));
            }
        }
        if p < arity {
            let br = t.bracket(p + 1).expect("computed");
            for u in odd_tuples(&hs, p + 1) {
                let mut rhs = Vector::zero();
                for j in 1..=p {
                    for sigma in Shuffles::new(j, p + 1 - j) {
                        let head: Vec<usize> = sigma[..j].iter().map(|&k| u[k]).collect();
                        let tail: Vec<usize> = sigma[j..].iter().map(|&k| u[k]).collect();
                        let x = taylor[&j].eval_basis(&head);
                        if x.is_zero() {
                            continue;
                        }
                        rhs.add_assign(&coh.bracket(&x, &taylor[&(p + 1 - j)].eval_basis(&tail)));
                    }
                }
                let rhs = rhs.scaled(&half());
                let lhs = br.eval_basis(&u);
                if lhs != rhs {
                    bracket_relation.push(Violation::new(
                        format!("{{·}}_{} = ½ Σ {{f_j, f_{}−j}}", p + 1, p + 1),
                        br.tuple_labels(&u),
                        hs.format_vector(&lhs.minus(&rhs)),
                    ));
                }
            }
        }
    }

    let witness = FormalityWitness {
        degree: n,
        arity_bound: arity,
        taylor,
        cohomology: coh,
        lemmas,
        equivariance,
        bracket_relation,
    };
    Ok((witness, t))
}

impl Ctx<'_> {
    fn first_failure_pairs(
        &self,
        lemma: &str,
        items: Vec<(Vec<usize>, usize)>,
        ok: impl Fn(&[usize], usize) -> bool + Sync,
    ) -> Result<LemmaCheck> {
        match items.par_iter().find_first(|(u, g)| !ok(u, *g)) {
            Some((u, g)) => Err(self.fail(lemma, &[u.as_slice(), &[*g]].concat())),
            None => Ok(LemmaCheck { lemma: lemma.to_string(), checked: items.len() }),
        }
    }
}

/// Concatenations of a canonical `j`-tuple with a canonical `k`-tuple of `H¹`.
fn block_pairs(hs: &GradedSpace, j: usize, k: usize) -> Vec<Vec<usize>> {
    let tails = odd_tuples(hs, k);
    odd_tuples(hs, j).into_iter().flat_map(|u| tails.iter().map(move |w| [u.clone(), w.clone()].concat())).collect()
}

/// `Σ_i (left(η_1..η_j), right(η_{j+1}..))` with `η_i = {ξ_i, g}` and the
/// other entries equal to `ξ`.
fn split_derivation_sum(
    cx: &Ctx<'_>,
    left: &MultilinearMap,
    right: &MultilinearMap,
    pairing: &CyclicPairing,
    tuple: &[usize],
    j: usize,
    g: usize,
) -> Scalar {
    let basis: Vec<Vector> = tuple.iter().map(|&k| Vector::basis(k)).collect();
    let mut acc = Scalar::zero();
    for i in 0..tuple.len() {
        let moved = cx.act(tuple[i], g);
        if moved.is_zero() {
            continue;
        }
        let mut args: Vec<&Vector> = basis.iter().collect();
        args[i] = &moved;
        let x = left.evaluate_unchecked(&args[..j]);
        if x.is_zero() {
            continue;
        }
        acc += pairing.eval(&x, &right.evaluate_unchecked(&args[j..]));
    }
    acc
}

/// Checks `f` against the `L∞` morphism relations into `H*(L)` with all
/// arities up to the witness bound.
pub fn verify_witness(w: &FormalityWitness, t: &TransferResult) -> Result<Vec<Violation>> {
    check_morphism(&w.morphism(t)?, w.arity_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::cyclic::normalize_splitting;
    use crate::dgla::{compute_splitting, find_equivariant_splitting};
    use crate::scalar::int;

    fn prepared(inst: &corpus::Instance) -> (QuasiCyclicDgla, Splitting) {
        let q = inst.quasi_cyclic().unwrap();
        let base = compute_splitting(&q.algebra);
        let sp = q.algebra.space();
        let h0: Vec<Vector> = base.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, 0)).cloned().collect();
        let found = find_equivariant_splitting(&q.algebra, &h0).unwrap();
        let s = found.found().unwrap().splitting.clone();
        let n = normalize_splitting(&q, &s, &h0).unwrap();
        (n.quasi, n.splitting)
    }

    #[test]
    fn minimal_input_gives_identity() {
        let (q, s) = prepared(&corpus::sl2_on_plane());
        let (w, t) = build_formality_witness(&q, &s, 4).unwrap();
        assert!((2..=4).all(|p| w.taylor[&p].is_zero()));
        assert!(verify_witness(&w, &t).unwrap().is_empty());
    }

    #[test]
    fn perturbed_f3_is_caught() {
        let (q, s) = prepared(&corpus::sl2_surface());
        let (mut w, t) = build_formality_witness(&q, &s, 4).unwrap();
        let hs = t.minimal.space().clone();
        let h1 = hs.indices_in_degree(1);
        let f3 = w.taylor.get_mut(&3).unwrap();
        f3.set(&[h1[0], h1[0], h1[1]], Vector::basis(h1[2]).scaled(&int(1))).unwrap();
        let report = verify_witness(&w, &t).unwrap();
        assert!(report.iter().any(|v| v.identity.ends_with("n=3") || v.identity.ends_with("n=4")));
    }

    #[test]
    fn i_functional_on_nocontraction() {
        let inst = corpus::nocontraction();
        let a = inst.algebra.clone();
        let s = compute_splitting(&a);
        let t = homotopy_transfer(&a, &s, 4).unwrap();
        let p = inst.pairing.unwrap();
        let i42 = compute_i(&t, &p, 4, 2).unwrap();
        let x = t.minimal.space().index_of("x").unwrap();
        assert!(i42.eval(&[x, x, x, x]).is_zero());
        assert!(matches!(compute_i(&t, &p, 6, 1), Err(Error::ArityOutOfRange { .. })));
    }

    #[test]
    fn degree_three_is_refused() {
        let q = corpus::noformal_dim3().quasi_cyclic().unwrap();
        let s = compute_splitting(&q.algebra);
        assert!(matches!(build_formality_witness(&q, &s, 3), Err(Error::DegreeUnsupported(3))));
    }

    #[test]
    fn tilted_complement_trips_a_lemma_and_blames_the_input() {
        let (q, s) = prepared(&corpus::sl2_surface());
        let a = &q.algebra;
        let sp = a.space();
        let h1: Vec<Vector> = s.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, 1)).cloned().collect();
        let tilted: Vec<Vector> = s
            .complement()
            .iter()
            .enumerate()
            .map(|(t, k)| if k.is_homogeneous_of(sp, 1) { k.plus(&h1[t % h1.len()]) } else { k.clone() })
            .collect();
        let bad = Splitting::from_subspaces(a, s.harmonic().to_vec(), tilted).unwrap();
        assert!(matches!(build_formality_witness(&q, &bad, 4), Err(Error::Hypothesis(_))));
        match build_formality_witness_unchecked(&q, &bad, 4) {
            Err(Error::LemmaViolation { hypotheses_hold, .. }) => assert!(!hypotheses_hold),
            Ok(_) => panic!("lemma assertions accepted a non-orthogonal complement"),
            Err(e) => panic!("{e}"),
        }
    }
}
