//! Formality certificates: explicit witnesses for degree `n ≤ 2` and Massey
//! obstructions otherwise.

mod massey;
mod pipeline;
mod witness;

pub use massey::{
    detect_nonformality, indeterminacy, massey_representative, massey_triple, MasseyOutcome, MasseyTripleProduct,
    NonFormality, NonFormalityCertificate,
};
pub use pipeline::{run_formality_pipeline, FormalityVerdict, PipelineOptions, VerdictKind};
pub use witness::{
    build_formality_witness, build_formality_witness_unchecked, compute_f, compute_i, theorem_hypotheses,
    verify_witness, FormalityWitness, FunctionalKind, LemmaCheck, PairingFunctional,
};
