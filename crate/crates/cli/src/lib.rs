//! File format, reports and commands behind the `lformal` binary.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{
    cmd_cohomology, cmd_corpus, cmd_formality, cmd_massey, cmd_transfer, cmd_validate, default_arity, parse_document,
    read_document, CliError,
};
pub use document::{AlgebraDocument, DocumentError, LoadedDocument};
pub use report::{Finding, Report, Row, Status};
