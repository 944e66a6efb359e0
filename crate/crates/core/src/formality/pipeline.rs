//! Hypothesis check, invariant splitting, normalization, witness, verification.

use serde::Serialize;

use super::massey::{detect_nonformality, NonFormalityCertificate};
use super::witness::{build_formality_witness, verify_witness, FormalityWitness};
use crate::cyclic::{normalize_splitting, NormalizedSplitting, QuasiCyclicDgla};
use crate::dgla::{
    compute_splitting, find_equivariant_splitting, validate_dgla, EquivariantSearch, NoSplittingCertificate,
};
use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::linfty::TransferResult;
use crate::report::Violation;

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    /// `H⁰` given as vectors of `L`; `None` takes the default splitting's.
    pub h0: Option<Vec<Vector>>,
    pub arity: usize,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum FormalityVerdict {
    FormalUpTo {
        arity: usize,
        witness: Box<FormalityWitness>,
        transfer: Box<TransferResult>,
        normalized: Box<NormalizedSplitting>,
    },
    NonFormal {
        certificate: NonFormalityCertificate,
        splitting: Option<NoSplittingCertificate>,
    },
    Rejected {
        reason: String,
        violations: Vec<Violation>,
        splitting: Option<NoSplittingCertificate>,
    },
    /// The witness was built but the independent re-check disagrees, or a
    /// lemma assertion failed.
    Failed {
        reason: String,
        violations: Vec<Violation>,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    Formal,
    NonFormal,
    Rejected,
    Failed,
    Inconclusive,
}

impl FormalityVerdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            FormalityVerdict::FormalUpTo { .. } => VerdictKind::Formal,
            FormalityVerdict::NonFormal { .. } => VerdictKind::NonFormal,
            FormalityVerdict::Rejected { .. } => VerdictKind::Rejected,
            FormalityVerdict::Failed { .. } => VerdictKind::Failed,
            FormalityVerdict::Inconclusive { .. } => VerdictKind::Inconclusive,
        }
    }
}

fn rejected(reason: impl Into<String>, violations: Vec<Violation>) -> FormalityVerdict {
    FormalityVerdict::Rejected { reason: reason.into(), violations, splitting: None }
}

pub fn run_formality_pipeline(q: &QuasiCyclicDgla, opts: &PipelineOptions) -> Result<FormalityVerdict> {
    let a = &q.algebra;
    let invalid = validate_dgla(a);
    if !invalid.is_empty() {
        return Ok(rejected("not a DG-Lie algebra", invalid));
    }
    if !q.is_quasi_cyclic() {
        return Ok(rejected("the pairing is not quasi-cyclic", q.report.violations.clone()));
    }
    let base = compute_splitting(a);
    let massey = || detect_nonformality(a, &base);
    let n = q.degree();
    if n >= 3 {
        return Ok(match massey().certificate() {
            Some(c) => FormalityVerdict::NonFormal { certificate: c.clone(), splitting: None },
            None => FormalityVerdict::Inconclusive { reason: Error::DegreeUnsupported(n).to_string() },
        });
    }
    let negative: Vec<Violation> = base
        .harmonic()
        .iter()
        .filter(|v| v.homogeneous_degree(a.space()).flatten().is_some_and(|d| d < 0))
        .map(|v| Violation::new("H^i = 0 for i < 0", vec![a.space().derived_label(v)], String::new()))
        .collect();
    if !negative.is_empty() {
        return Ok(rejected("cohomology in negative degree", negative));
    }
    let h0 = match &opts.h0 {
        Some(h) => h.clone(),
        None => base.harmonic().iter().filter(|v| v.is_homogeneous_of(a.space(), 0)).cloned().collect(),
    };
    let found = match find_equivariant_splitting(a, &h0) {
        Ok(EquivariantSearch::Found(f)) => f,
        Ok(EquivariantSearch::None(cert)) => {
            return Ok(match massey().certificate() {
                Some(c) => FormalityVerdict::NonFormal { certificate: c.clone(), splitting: Some(cert) },
                None => FormalityVerdict::Rejected {
                    reason: "no H⁰-invariant splitting".into(),
                    violations: Vec::new(),
                    splitting: Some(cert),
                },
            });
        }
        Err(e @ (Error::NotBracketClosed(..) | Error::NotCocycle(_) | Error::NotCohomologyComplement(_))) => {
            return Ok(rejected(e.to_string(), Vec::new()));
        }
        Err(e) => return Err(e),
    };
    let normalized = match normalize_splitting(q, &found.splitting, &h0) {
        Ok(ns) => ns,
        Err(e @ Error::Normalization(_)) => return Ok(rejected(e.to_string(), Vec::new())),
        Err(e) => return Err(e),
    };
    let built = build_formality_witness(&normalized.quasi, &normalized.splitting, opts.arity);
    let (witness, transfer) = match built {
        Ok(pair) => pair,
        Err(Error::Hypothesis(v)) => return Ok(rejected("hypothesis of the formality theorem fails", v)),
        Err(e @ Error::LemmaViolation { .. }) => {
            return Ok(FormalityVerdict::Failed { reason: e.to_string(), violations: Vec::new() })
        }
        Err(e) => return Err(e),
    };
    let mut violations = verify_witness(&witness, &transfer)?;
    violations.extend(witness.equivariance.iter().cloned());
    violations.extend(witness.bracket_relation.iter().cloned());
    if !violations.is_empty() {
        return Ok(FormalityVerdict::Failed { reason: "the witness is not an L∞ morphism".into(), violations });
    }
    Ok(FormalityVerdict::FormalUpTo {
        arity: opts.arity,
        witness: Box::new(witness),
        transfer: Box::new(transfer),
        normalized: Box::new(normalized),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn run(inst: &corpus::Instance, arity: usize) -> FormalityVerdict {
        let q = inst.quasi_cyclic().unwrap();
        run_formality_pipeline(&q, &PipelineOptions { h0: None, arity }).unwrap()
    }

    #[test]
    fn formality_instances_pass() {
        for inst in corpus::formality_instances() {
            let v = run(&inst, 4);
            match &v {
                FormalityVerdict::FormalUpTo { witness, .. } => {
                    assert!(witness.equivariance.is_empty() && witness.bracket_relation.is_empty(), "{}", inst.name)
                }
                other => panic!("{}: {other:?}", inst.name),
            }
        }
    }

    #[test]
    fn surface_instance_needs_a_nontrivial_witness() {
        let v = run(&corpus::sl2_surface(), 4);
        let FormalityVerdict::FormalUpTo { witness, transfer, .. } = v else { panic!("{v:?}") };
        assert!(!transfer.iota(2).unwrap().is_zero());
        for l in &witness.lemmas {
            eprintln!("{} {}", l.lemma, l.checked);
        }
        for p in 3..=4 {
            eprintln!("f_{p}: {} entries", witness.taylor[&p].len());
        }
        assert!(!witness.taylor[&4].is_zero());
    }

    #[test]
    fn paper_examples_are_non_formal() {
        let v = run(&corpus::nocontraction(), 4);
        let FormalityVerdict::NonFormal { certificate, splitting } = v else { panic!("{v:?}") };
        assert_eq!(certificate.product.class, "3*z");
        assert_eq!(splitting.unwrap().degree, 1);
        let v = run(&corpus::noformal_dim3(), 4);
        assert_eq!(v.kind(), VerdictKind::NonFormal);
    }
}
