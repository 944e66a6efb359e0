//! One line per acceptance criterion: `PASS` or `FAIL`, the elapsed time
//! and the limit, then the evidence. Run with `--nocapture` to see them.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lformal_cli::commands::bundled;
use lformal_cli::{cmd_validate, Status};
use lformal_core::corpus::{
    self, perturb_structure_constant, random_dgla, random_symplectic_representation, repair_perturbation, Instance,
};
use lformal_core::formality::{FormalityVerdict, NonFormality};
use lformal_core::{
    check_linfty_axioms, check_morphism, compute_splitting, detect_nonformality, find_equivariant_splitting,
    from_symplectic_representation, homotopy_transfer, massey_triple, run_formality_pipeline, validate_dgla,
    verify_witness, EquivariantSearch, Error, MasseyOutcome, PipelineOptions, Vector,
};
use oracle::{sorted_tuples, Oracle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const fn criterion(id: u32, title: &'static str, limit: Option<Duration>, run: fn() -> Outcome) -> Criterion {
    Criterion { id, title, limit, run }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_dglas() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..20).map(|_| random_dgla(&mut rng)).collect()
}

fn corpus_with_printed() -> Vec<Instance> {
    let mut all = corpus::quasi_cyclic_instances();
    all.push(corpus::nocontraction_as_printed());
    all
}

fn criterion_1() -> Outcome {
    let doc = bundled("nocontraction.toml").map_err(|e| e.to_string())?;
    let r = cmd_validate(&doc).map_err(|e| e.to_string())?;
    ensure(r.status == Status::Pass && r.summary == "cyclic degree 2", || format!("{} / {}", r.status, r.summary))?;
    Ok(format!("validate: {}, {}", r.status, r.summary))
}

fn criterion_2() -> Outcome {
    let a = corpus::nocontraction().algebra;
    let s = compute_splitting(&a);
    let NonFormality::Certificate(c) = detect_nonformality(&a, &s) else { return Err("no certificate".into()) };
    let hs = s.cohomology_space();
    let z = hs.index_of("z").map_err(|e| e.to_string())?;
    let p = &c.product;
    ensure(c.triple == ["x", "x", "x"], || format!("triple {:?}", c.triple))?;
    let only_z = p.class_vector.iter().all(|(i, _)| *i == z) && !p.class_vector.is_zero();
    ensure(only_z, || format!("class {}", p.class))?;
    ensure(p.indeterminacy_vectors.is_empty() && p.nonzero, || format!("indeterminacy {:?}", p.indeterminacy))?;
    Ok(format!("<x,x,x> = {} with zero indeterminacy", p.class))
}

fn criterion_3() -> Outcome {
    let a = corpus::nocontraction().algebra;
    let h0 = vec![Vector::basis(a.space().index_of("a").map_err(|e| e.to_string())?)];
    match find_equivariant_splitting(&a, &h0).map_err(|e| e.to_string())? {
        EquivariantSearch::Found(_) => Err("an invariant splitting was found".into()),
        EquivariantSearch::None(cert) => {
            let o = cert.obstruction.as_ref().ok_or("certificate without obstruction")?;
            ensure(!cert.farkas.is_empty(), || "empty Farkas vector".into())?;
            Ok(format!("none in degree {}: [{}, {}] = {}", cert.degree, o.acting, o.element, o.image))
        }
    }
}

fn criterion_4() -> Outcome {
    let doc = bundled("noformal-dim3.toml").map_err(|e| e.to_string())?;
    let r = cmd_validate(&doc).map_err(|e| e.to_string())?;
    ensure(r.status == Status::Pass && r.summary == "cyclic degree 3", || format!("{} / {}", r.status, r.summary))?;
    let a = &doc.instance.algebra;
    let s = compute_splitting(a);
    let v = |l: &str| Vector::basis(a.space().index_of(l).unwrap());
    let aaa = massey_triple(a, &s, &v("a"), &v("a"), &v("a")).map_err(|e| e.to_string())?;
    let MasseyOutcome::Defined(p) = aaa else { return Err("<a,a,a> undefined".into()) };
    ensure(p.nonzero && p.class == "3*x" && p.primitives[0] == "b", || format!("{p:?}"))?;
    let aab = massey_triple(a, &s, &v("a"), &v("a"), &v("b"));
    ensure(matches!(aab, Err(Error::NotCocycle(_))), || format!("<a,a,b>: {aab:?}"))?;
    let q = doc.instance.quasi_cyclic().map_err(|e| e.to_string())?;
    let verdict = run_formality_pipeline(&q, &PipelineOptions { h0: None, arity: 4 }).map_err(|e| e.to_string())?;
    ensure(matches!(verdict, FormalityVerdict::NonFormal { .. }), || format!("{:?}", verdict.kind()))?;
    Ok(format!(
        "cyclic degree 3; <a,a,a> = {} via primitive {}; (a,a,b) refused: b is not a cocycle",
        p.class, p.primitives[0]
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counts = [0usize; 2];
    for symplectic in [true, false] {
        for k in 0..20 {
            let r = random_symplectic_representation(&mut rng, symplectic);
            let in_range = r.lie.dim() <= 2
                && r.vector_labels.len() <= 4
                && r.action.iter().all(|m| {
                    (0..m.rows()).flat_map(|i| m.row(i)).all(|c| (-3..=3).any(|n| *c == lformal_core::scalar::int(n)))
                });
            ensure(in_range, || format!("instance {k} is outside the size bounds"))?;
            ensure(r.symplectic_violations().is_empty() == symplectic, || {
                format!("instance {k}: generator mislabelled")
            })?;
            let q = from_symplectic_representation(&r).map_err(|e| e.to_string())?;
            let cyclic = q.report.violations.is_empty() && q.flags().is_cyclic();
            ensure(cyclic == symplectic, || format!("symplectic = {symplectic}, cyclic = {cyclic} on instance {k}"))?;
            if !symplectic {
                let named =
                    q.report.violations.iter().any(|v| v.identity.contains("cyclic") || v.identity.contains("(["));
                ensure(named, || format!("instance {k}: {:?}", q.report.violations.first()))?;
            }
            counts[usize::from(cyclic)] += 1;
        }
    }
    Ok(format!("{} symplectic all cyclic, {} non-symplectic all non-cyclic", counts[1], counts[0]))
}

fn criterion_6() -> Outcome {
    let mut all = corpus::quasi_cyclic_instances();
    all.extend(corpus_symplectic());
    let randoms = random_dglas();
    ensure(randoms.iter().all(|r| r.algebra.dim() <= 8), || "random DGLA larger than 8".into())?;
    all.extend(randoms);
    for inst in &all {
        let a = &inst.algebra;
        ensure(validate_dgla(a).is_empty(), || format!("{} is not a DGLA", inst.name))?;
        let t = homotopy_transfer(a, &compute_splitting(a), 5).map_err(|e| format!("{}: {e}", inst.name))?;
        let axioms = check_linfty_axioms(&t.minimal, 5).map_err(|e| e.to_string())?;
        let morphism = check_morphism(&t.inclusion, 5).map_err(|e| e.to_string())?;
        ensure(axioms.is_empty(), || format!("{}: {}", inst.name, axioms[0]))?;
        ensure(morphism.is_empty(), || format!("{}: {}", inst.name, morphism[0]))?;
    }
    Ok(format!("{} algebras, axioms and morphism clean to arity 5", all.len()))
}

fn corpus_symplectic() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    (0..4)
        .map(|k| {
            let q = from_symplectic_representation(&random_symplectic_representation(&mut rng, true)).unwrap();
            Instance { name: format!("symplectic-{k}"), algebra: q.algebra, pairing: Some(q.pairing) }
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut all = corpus_with_printed();
    all.extend(corpus_symplectic());
    let mut entries = 0usize;
    for inst in &all {
        let a = &inst.algebra;
        let s = compute_splitting(a);
        let t = homotopy_transfer(a, &s, 4).map_err(|e| e.to_string())?;
        let o = Oracle { algebra: a, splitting: &s };
        for p in 2..=4 {
            for tuple in sorted_tuples(s.cohomology_space().dim(), p) {
                let (iota, bracket) = (t.iota(p).unwrap().eval_basis(&tuple), t.bracket(p).unwrap().eval_basis(&tuple));
                ensure(iota == o.iota(&tuple), || format!("{} ι_{p} at {tuple:?}", inst.name))?;
                ensure(bracket == o.bracket(&tuple), || format!("{} bracket_{p} at {tuple:?}", inst.name))?;
                entries += 2;
            }
        }
    }
    Ok(format!("{} algebras, {entries} table entries agree", all.len()))
}

fn criterion_8() -> Outcome {
    let doc = bundled("nocontraction.toml").map_err(|e| e.to_string())?;
    let a = &doc.instance.algebra;
    let s = doc.splitting.clone().ok_or("the bundled document declares no splitting")?;
    let sp = a.space();
    ensure(s.complement().iter().map(|v| sp.format_vector(v)).collect::<Vec<_>>() == ["b", "p"], || {
        "K is not span(b, p)".into()
    })?;
    let hs = s.cohomology_space();
    let x = hs.index_of("x").map_err(|e| e.to_string())?;
    let o = Oracle { algebra: a, splitting: &s };
    let t = homotopy_transfer(a, &s, 3).map_err(|e| e.to_string())?;
    let (oi, ob) = (sp.format_vector(&o.iota(&[x, x])), hs.format_vector(&o.bracket(&[x, x, x])));
    let (ti, tb) = (
        sp.format_vector(&t.iota(2).unwrap().eval_basis(&[x, x])),
        hs.format_vector(&t.bracket(3).unwrap().eval_basis(&[x, x, x])),
    );
    ensure(oi == ti && ob == tb, || format!("oracle ({oi}, {ob}) vs kernel ({ti}, {tb})"))?;
    ensure(oi == "-p" && ob == "-3*z", || format!("oracle gives ι_2(x,x) = {oi}, {{x,x,x}}_3 = {ob}"))?;
    Ok(format!("ι_2(x,x) = {ti}, {{x,x,x}}_3 = {tb}, oracle agrees"))
}

fn criterion_9() -> Outcome {
    let families = [
        ("second vanishing", "vanishes on H⁰"),
        ("first vanishing", "π[ι_"),
        ("equivariance of ι", "H⁰-equivariant"),
        ("I sums", "Σ_i I^"),
        ("F sums", "Σ_i F^"),
    ];
    let mut totals: BTreeMap<&str, usize> = BTreeMap::new();
    let instances = corpus::formality_instances();
    for inst in &instances {
        let q = inst.quasi_cyclic().map_err(|e| e.to_string())?;
        let v = run_formality_pipeline(&q, &PipelineOptions { h0: None, arity: 5 }).map_err(|e| e.to_string())?;
        let FormalityVerdict::FormalUpTo { witness, transfer, .. } = v else {
            return Err(format!("{}: {:?}", inst.name, v.kind()));
        };
        let violations = verify_witness(&witness, &transfer).map_err(|e| e.to_string())?;
        ensure(violations.is_empty(), || format!("{}: {}", inst.name, violations[0]))?;
        for l in &witness.lemmas {
            if let Some((name, _)) = families.iter().find(|(_, pat)| l.lemma.contains(pat)) {
                *totals.entry(name).or_default() += l.checked;
            }
        }
    }
    let missing: Vec<&str> =
        families.iter().map(|(n, _)| *n).filter(|n| totals.get(n).copied().unwrap_or(0) == 0).collect();
    ensure(missing.is_empty(), || format!("lemma families never exercised: {missing:?}"))?;
    let shown: Vec<String> = totals.iter().map(|(n, c)| format!("{n} {c}")).collect();
    Ok(format!("{} instances verified to arity 5; checks: {}", instances.len(), shown.join(", ")))
}

fn criterion_10() -> Outcome {
    let bases = [
        corpus::sl2_on_plane(),
        corpus::torus_on_plane(),
        corpus::torus_tensor_cell(),
        corpus::sl2_exterior(),
        corpus::sl2_tensor_cell(),
        corpus::sl2_with_trace_form(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    let mut repaired = 0;
    for k in 0..50 {
        let base = &bases[k % bases.len()];
        let pert = repair_perturbation(base, perturb_structure_constant(&mut rng, base));
        repaired += usize::from(pert.repair.is_some());
        let q = pert.instance.quasi_cyclic().map_err(|e| format!("{pert}: {e}"))?;
        let v =
            run_formality_pipeline(&q, &PipelineOptions { h0: None, arity: 4 }).map_err(|e| format!("{pert}: {e}"))?;
        let kind = match v {
            FormalityVerdict::FormalUpTo { witness, transfer, normalized, .. } => {
                ensure(validate_dgla(&pert.instance.algebra).is_empty(), || {
                    format!("{pert}: accepted an invalid DGLA")
                })?;
                ensure(normalized.quasi.is_quasi_cyclic(), || format!("{pert}: accepted a non-quasi-cyclic pairing"))?;
                let bad = verify_witness(&witness, &transfer).map_err(|e| e.to_string())?;
                ensure(bad.is_empty(), || format!("{pert}: accepted a witness failing {}", bad[0]))?;
                "preserved"
            }
            FormalityVerdict::Rejected { reason, violations, splitting } => {
                let localized = violations.iter().all(|v| !v.identity.is_empty());
                ensure(localized && !reason.is_empty(), || format!("{pert}: unnamed rejection"))?;
                ensure(!violations.is_empty() || splitting.is_some() || !reason.is_empty(), || {
                    format!("{pert}: empty rejection")
                })?;
                "rejected"
            }
            FormalityVerdict::NonFormal { .. } => "non-formal",
            FormalityVerdict::Failed { reason, .. } => {
                ensure(!reason.is_empty(), || format!("{pert}: unnamed failure"))?;
                "failed"
            }
            FormalityVerdict::Inconclusive { reason } => return Err(format!("{pert}: inconclusive: {reason}")),
        };
        *tally.entry(kind).or_default() += 1;
    }
    let shown: Vec<String> = tally.iter().map(|(k, n)| format!("{k} {n}")).collect();
    Ok(format!("50 perturbations ({repaired} repaired to valid axioms): {}", shown.join(", ")))
}

#[test]
fn acceptance() {
    let criteria = [
        criterion(1, "nocontraction validates as cyclic of degree 2", Some(Duration::from_secs(1)), criterion_1),
        criterion(2, "Massey cube of x is a nonzero multiple of z", Some(Duration::from_secs(1)), criterion_2),
        criterion(3, "no H0-invariant splitting for H0 = span(a)", Some(Duration::from_secs(1)), criterion_3),
        criterion(4, "degree-3 example is cyclic and non-formal", Some(Duration::from_secs(1)), criterion_4),
        criterion(
            5,
            "symplectic condition iff cyclicity, 20 + 20 instances",
            Some(Duration::from_secs(10)),
            criterion_5,
        ),
        criterion(6, "transfer axioms and morphism to arity 5", Some(Duration::from_secs(60)), criterion_6),
        criterion(7, "brute-force oracle agrees to arity 4", None, criterion_7),
        criterion(8, "ι_2(x,x) = -p and {x,x,x}_3 = -3z", None, criterion_8),
        criterion(9, "formality witnesses with lemma checks to arity 5", Some(Duration::from_secs(120)), criterion_9),
        criterion(10, "50 perturbations, none accepted silently", None, criterion_10),
    ];
    let mut failed = Vec::new();
    for Criterion { id, title, limit, run } in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|m| match limit {
            Some(l) if elapsed > l => Err(format!("{m}; took {:.2} s, limit {} s", elapsed.as_secs_f64(), l.as_secs())),
            _ => Ok(m),
        });
        let budget = limit.map_or("no limit".to_string(), |l| format!("{} s", l.as_secs()));
        let (tag, detail) = match &outcome {
            Ok(m) => ("PASS", m.clone()),
            Err(m) => ("FAIL", m.clone()),
        };
        println!("{tag} {id:>2} {title} [{:.3} s / {budget}]: {detail}", elapsed.as_secs_f64());
        if outcome.is_err() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
