use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lformal_core::corpus::{self, perturb_structure_constant};
use lformal_core::formality::{indeterminacy, FormalityVerdict, VerdictKind};
use lformal_core::subspace;
use lformal_core::{
    compute_splitting, homotopy_transfer, run_formality_pipeline, validate_dgla, verify_witness, PipelineOptions,
    Splitting,
};

#[test]
fn ternary_obstruction_survives_a_change_of_splitting() {
    let a = corpus::nocontraction().algebra;
    let sp = a.space();
    let v = |t: &str| sp.parse_vector(t).unwrap();
    let default = compute_splitting(&a);
    let other = Splitting::from_subspaces(&a, vec![v("a"), v("x + db"), v("y"), v("z")], vec![v("b"), v("p + x")])
        .unwrap()
        .with_cohomology_labels(&["a".into(), "x".into(), "y".into(), "z".into()])
        .unwrap();
    for s in [&default, &other] {
        let t = homotopy_transfer(&a, s, 3).unwrap();
        assert!(t.is_verified());
        let hs = s.cohomology_space();
        let x = hs.index_of("x").unwrap();
        let class = t.bracket(3).unwrap().eval_basis(&[x, x, x]);
        let rep = s.iota().column(x).clone();
        let ind = indeterminacy(&a, s, &rep, &rep, &rep).unwrap();
        assert!(!subspace::contains(&ind, &class), "{}", hs.format_vector(&class));
    }
}

#[test]
fn witnesses_verify_to_arity_five() {
    for inst in corpus::formality_instances() {
        let q = inst.quasi_cyclic().unwrap();
        let v = run_formality_pipeline(&q, &PipelineOptions { h0: None, arity: 5 }).unwrap();
        let FormalityVerdict::FormalUpTo { witness, transfer, .. } = v else { panic!("{}: {v:?}", inst.name) };
        assert!(verify_witness(&witness, &transfer).unwrap().is_empty(), "{}", inst.name);
    }
}

#[test]
fn perturbations_never_pass_silently() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bases = [corpus::sl2_on_plane(), corpus::torus_tensor_cell(), corpus::sl2_exterior()];
    for k in 0..12 {
        let base = &bases[k % bases.len()];
        let pert = perturb_structure_constant(&mut rng, base);
        let q = pert.instance.quasi_cyclic().unwrap();
        let v = run_formality_pipeline(&q, &PipelineOptions { h0: None, arity: 4 }).unwrap();
        match v {
            FormalityVerdict::FormalUpTo { witness, transfer, normalized, .. } => {
                assert!(validate_dgla(&pert.instance.algebra).is_empty(), "{pert}");
                assert!(normalized.quasi.is_quasi_cyclic(), "{pert}");
                assert!(verify_witness(&witness, &transfer).unwrap().is_empty(), "{pert}");
            }
            FormalityVerdict::Rejected { reason, violations, splitting } => {
                assert!(
                    !reason.is_empty() && (!violations.is_empty() || splitting.is_some() || reason.contains(' ')),
                    "{pert}"
                )
            }
            other => assert!(matches!(other.kind(), VerdictKind::NonFormal | VerdictKind::Failed), "{pert}"),
        }
    }
}
