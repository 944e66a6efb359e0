//! Exact computations with DG-Lie algebras given by structure constants:
//! splittings, homotopy transfer to a minimal `L∞` model, cyclic pairings,
//! Massey products, and explicit formality witnesses in degree at most 2.

pub mod corpus;
pub mod cyclic;
pub mod dgla;
pub mod error;
pub mod formality;
pub mod graded;
pub mod linalg;
pub mod linear_map;
pub mod linfty;
pub mod multilinear;
pub mod perm;
pub mod report;
pub mod scalar;
pub mod subspace;

pub use cyclic::{
    from_symplectic_representation, normalize_splitting, validate_pairing, CyclicPairing, NormalizedSplitting,
    PairingFlags, PairingReport, QuasiCyclicDgla, SymplecticRepresentation,
};
pub use dgla::{
    cohomology, compute_splitting, find_equivariant_splitting, validate_dgla, verify_splitting, CohomologyPresentation,
    DgLieAlgebra, EquivariantSearch, Splitting,
};
pub use error::{Error, Result};
pub use formality::{
    build_formality_witness, detect_nonformality, massey_triple, run_formality_pipeline, verify_witness,
    FormalityVerdict, FormalityWitness, MasseyOutcome, MasseyTripleProduct, NonFormality, NonFormalityCertificate,
    PipelineOptions,
};
pub use graded::{GradedSpace, Vector};
pub use linalg::Matrix;
pub use linear_map::LinearMap;
pub use linfty::{
    check_linfty_axioms, check_morphism, homotopy_transfer, LInftyAlgebra, LInftyMorphismToDgla, TransferResult,
};
pub use multilinear::MultilinearMap;
pub use report::Violation;
pub use scalar::{Scalar, Sign};
