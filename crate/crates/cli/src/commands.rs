use std::path::Path;
use std::time::Instant;

use lformal_core::corpus::{self, Instance};
use lformal_core::{
    cohomology, compute_splitting, detect_nonformality, homotopy_transfer, massey_triple, run_formality_pipeline,
    validate_dgla, validate_pairing, Error, FormalityVerdict, MasseyOutcome, MultilinearMap, NonFormality,
    PipelineOptions, Splitting, Vector,
};
use serde::Deserialize;
use thiserror::Error;

use crate::document::{AlgebraDocument, DocumentError, LoadedDocument};
use crate::report::{Finding, Report, Row, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{file}: {source}")]
    Document { file: String, source: DocumentError },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

pub fn read_document(path: &Path) -> Result<LoadedDocument, CliError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: file.clone(), source })?;
    parse_document(&file, &text)
}

pub fn parse_document(file: &str, text: &str) -> Result<LoadedDocument, CliError> {
    AlgebraDocument::parse(text)
        .and_then(|d| d.load())
        .map_err(|source| CliError::Document { file: file.to_string(), source })
}

fn timed(f: impl FnOnce() -> Result<Report, CliError>) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut r = f()?;
    r.timing = start.elapsed();
    Ok(r)
}

fn table(name: impl Into<String>, m: &MultilinearMap) -> Finding {
    let rows =
        m.entries().map(|(k, v)| Row { args: m.tuple_labels(k), value: m.codomain().format_vector(v) }).collect();
    Finding::Table { name: name.into(), rows }
}

fn splitting_of(doc: &LoadedDocument) -> Splitting {
    doc.splitting.clone().unwrap_or_else(|| compute_splitting(&doc.instance.algebra))
}

/// `dim H + 2`, kept within `2..=6`.
pub fn default_arity(doc: &LoadedDocument) -> usize {
    (splitting_of(doc).harmonic().len() + 2).clamp(2, 6)
}

fn invalid_algebra(command: &str, doc: &LoadedDocument) -> Option<Report> {
    let v = validate_dgla(&doc.instance.algebra);
    (!v.is_empty())
        .then(|| Report::new(command, &doc.instance.name, Status::Rejected, "not a DG-Lie algebra").violations(&v))
}

pub fn cmd_validate(doc: &LoadedDocument) -> Result<Report, CliError> {
    timed(|| {
        let inst = &doc.instance;
        let a = &inst.algebra;
        let dgla = validate_dgla(a);
        let notes = a.warnings().into_iter().map(Finding::note);
        let Some(p) = &inst.pairing else {
            let (status, summary) = if dgla.is_empty() {
                (Status::Pass, "DG-Lie algebra, no pairing declared")
            } else {
                (Status::Fail, "not a DG-Lie algebra")
            };
            return Ok(Report::new("validate", &inst.name, status, summary).with(notes).violations(&dgla));
        };
        let pr = validate_pairing(a, p);
        let flags = pr.flags;
        let (status, summary) = if !dgla.is_empty() {
            (Status::Fail, "not a DG-Lie algebra".to_string())
        } else if flags.is_cyclic() {
            (Status::Pass, format!("cyclic degree {}", pr.degree))
        } else if flags.is_quasi_cyclic() {
            (Status::Pass, format!("quasi-cyclic degree {}", pr.degree))
        } else {
            (Status::Fail, format!("pairing of degree {} is not quasi-cyclic", pr.degree))
        };
        Ok(Report::new("validate", &inst.name, status, summary)
            .with(notes)
            .with([
                Finding::value("cyclic on L", flags.cyclic_on_l),
                Finding::value("nondegenerate on L", flags.nondegenerate_on_l),
                Finding::value("nondegenerate on H", flags.nondegenerate_on_h),
                Finding::value("rank on L", format!("{}/{}", pr.rank_on_l, a.dim())),
                Finding::value("rank on H", format!("{}/{}", pr.rank_on_h, pr.dim_h)),
            ])
            .violations(&dgla)
            .violations(&pr.violations))
    })
}

pub fn cmd_cohomology(doc: &LoadedDocument) -> Result<Report, CliError> {
    timed(|| {
        if let Some(r) = invalid_algebra("cohomology", doc) {
            return Ok(r);
        }
        let a = &doc.instance.algebra;
        let s = splitting_of(doc);
        let c = cohomology(a, &s);
        let dims: Vec<String> = c.dims.iter().map(|(d, n)| format!("H^{d}: {n}")).collect();
        let reps = Finding::Table {
            name: "representatives".into(),
            rows: c
                .representatives
                .iter()
                .enumerate()
                .map(|(i, v)| Row { args: vec![c.space().label(i).to_string()], value: a.space().format_vector(v) })
                .collect(),
        };
        let status = if c.jacobi_violations.is_empty() { Status::Pass } else { Status::Fail };
        Ok(Report::new("cohomology", &doc.instance.name, status, dims.join(", "))
            .with([Finding::value("total dimension", c.total_dim()), reps, table("bracket on H", c.bracket())])
            .violations(&c.jacobi_violations))
    })
}

pub fn cmd_transfer(doc: &LoadedDocument, arity: Option<usize>) -> Result<Report, CliError> {
    timed(|| {
        if let Some(r) = invalid_algebra("transfer", doc) {
            return Ok(r);
        }
        let n = arity.unwrap_or_else(|| default_arity(doc));
        let t = homotopy_transfer(&doc.instance.algebra, &splitting_of(doc), n)?;
        let (status, summary) = if t.is_verified() {
            (Status::Pass, format!("minimal model and inclusion verified up to arity {n}"))
        } else {
            (Status::Fail, format!("re-verification failed up to arity {n}"))
        };
        let mut r = Report::new("transfer", &doc.instance.name, status, summary);
        for p in 2..=n {
            if let Some(m) = t.iota(p) {
                r.findings.push(table(format!("iota_{p}"), m));
            }
        }
        for p in 2..=n {
            if let Some(m) = t.bracket(p) {
                r.findings.push(table(format!("bracket_{p}"), m));
            }
        }
        Ok(r.violations(&t.axiom_report).violations(&t.morphism_report))
    })
}

fn resolve(doc: &LoadedDocument, s: &Splitting, label: &str) -> Result<Vector, CliError> {
    let space = doc.instance.algebra.space();
    if let Ok(i) = space.index_of(label) {
        return Ok(Vector::basis(i));
    }
    let h = s.cohomology_space();
    h.index_of(label)
        .map(|i| s.iota().apply(&Vector::basis(i)))
        .map_err(|_| CliError::Usage(format!("`{label}` is neither a basis label nor a cohomology label")))
}

pub fn cmd_massey(doc: &LoadedDocument, triple: Option<&[String]>) -> Result<Report, CliError> {
    timed(|| {
        if let Some(r) = invalid_algebra("massey", doc) {
            return Ok(r);
        }
        let a = &doc.instance.algebra;
        let s = splitting_of(doc);
        let name = &doc.instance.name;
        let Some(labels) = triple else {
            return Ok(match detect_nonformality(a, &s) {
                NonFormality::Certificate(c) => {
                    let p = &c.product;
                    let summary = format!("<{}> = {} is nonzero", c.triple.join(", "), p.class);
                    Report::new("massey", name, Status::Pass, summary).with([Finding::certificate("certificate", &c)])
                }
                NonFormality::Inconclusive { triples_scanned, defined } => Report::new(
                    "massey",
                    name,
                    Status::Inconclusive,
                    format!("no nonzero triple product among {defined} defined of {triples_scanned} scanned"),
                ),
            });
        };
        let [x, y, z] = labels else {
            return Err(CliError::Usage(format!("--triple takes three labels, got {}", labels.len())));
        };
        let (x, y, z) = (resolve(doc, &s, x)?, resolve(doc, &s, y)?, resolve(doc, &s, z)?);
        let shown = labels.join(", ");
        Ok(match massey_triple(a, &s, &x, &y, &z) {
            Ok(MasseyOutcome::Defined(p)) => {
                let summary = if p.nonzero {
                    format!("<{shown}> = {} is nonzero", p.class)
                } else {
                    format!("<{shown}> vanishes modulo indeterminacy")
                };
                Report::new("massey", name, Status::Pass, summary).with([Finding::certificate("product", &p)])
            }
            Ok(MasseyOutcome::NotDefined { reason }) => {
                Report::new("massey", name, Status::Inconclusive, format!("<{shown}> is not defined: {reason}"))
            }
            Err(e @ (Error::NotCocycle(_) | Error::NotHomogeneous(_))) => {
                Report::new("massey", name, Status::Rejected, e.to_string())
            }
            Err(e) => return Err(e.into()),
        })
    })
}

pub fn cmd_formality(doc: &LoadedDocument, arity: Option<usize>) -> Result<Report, CliError> {
    timed(|| {
        let inst = &doc.instance;
        let name = &inst.name;
        let n = arity.unwrap_or_else(|| default_arity(doc));
        if inst.pairing.is_none() {
            return Ok(Report::new("formality", name, Status::Rejected, "no pairing declared"));
        }
        let q = inst.quasi_cyclic()?;
        let verdict = run_formality_pipeline(&q, &PipelineOptions { h0: doc.h0.clone(), arity: n })?;
        Ok(match verdict {
            FormalityVerdict::FormalUpTo { arity, witness, transfer, normalized } => {
                let nonzero: Vec<String> = witness
                    .taylor
                    .iter()
                    .filter(|(p, f)| **p >= 2 && !f.is_zero())
                    .map(|(p, _)| p.to_string())
                    .collect();
                let summary = if nonzero.is_empty() {
                    format!("f = id up to arity {arity}")
                } else {
                    format!("witness with nonzero f_p for p in {{{}}}", nonzero.join(", "))
                };
                let mut r = Report::new("formality", name, Status::FormalUpTo(arity), summary).with([
                    Finding::value("degree", witness.degree),
                    Finding::value("splitting restricted", normalized.restricted),
                    Finding::Table {
                        name: "lemma checks".into(),
                        rows: witness
                            .lemmas
                            .iter()
                            .map(|l| Row { args: vec![l.lemma.clone()], value: l.checked.to_string() })
                            .collect(),
                    },
                ]);
                for (p, f) in &witness.taylor {
                    if *p >= 2 {
                        r.findings.push(table(format!("f_{p}"), f));
                    }
                }
                if let Some(b) = transfer.bracket(2) {
                    r.findings.push(table("bracket_2", b));
                }
                r
            }
            FormalityVerdict::NonFormal { certificate, splitting } => {
                let summary = format!("<{}> = {} is nonzero", certificate.triple.join(", "), certificate.product.class);
                let mut r = Report::new("formality", name, Status::NonFormal, summary)
                    .with([Finding::certificate("massey", &certificate)]);
                if let Some(c) = splitting {
                    r.findings.push(Finding::certificate("no invariant splitting", &c));
                }
                r
            }
            FormalityVerdict::Rejected { reason, violations, splitting } => {
                let mut r = Report::new("formality", name, Status::Rejected, reason).violations(&violations);
                if let Some(c) = splitting {
                    r.findings.push(Finding::certificate("no invariant splitting", &c));
                }
                r
            }
            FormalityVerdict::Failed { reason, violations } => {
                Report::new("formality", name, Status::Fail, reason).violations(&violations)
            }
            FormalityVerdict::Inconclusive { reason } => Report::new("formality", name, Status::Inconclusive, reason),
        })
    })
}

/// The documents shipped in `corpus/`, by file name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("nocontraction.toml", include_str!("../corpus/nocontraction.toml")),
    ("nocontraction-as-printed.toml", include_str!("../corpus/nocontraction-as-printed.toml")),
    ("noformal-dim3.toml", include_str!("../corpus/noformal-dim3.toml")),
    ("sl2-trace-form.toml", include_str!("../corpus/sl2-trace-form.toml")),
    ("sl2-on-plane.toml", include_str!("../corpus/sl2-on-plane.toml")),
    ("torus-on-plane.toml", include_str!("../corpus/torus-on-plane.toml")),
    ("sl2-tensor-cell.toml", include_str!("../corpus/sl2-tensor-cell.toml")),
    ("sl2-exterior.toml", include_str!("../corpus/sl2-exterior.toml")),
    ("torus-tensor-cell.toml", include_str!("../corpus/torus-tensor-cell.toml")),
    ("sl2-surface.toml", include_str!("../corpus/sl2-surface.toml")),
];

const GOLDEN: &str = include_str!("../corpus/golden.toml");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Golden {
    arity: usize,
    case: Vec<GoldenCase>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GoldenCase {
    file: String,
    validate: String,
    summary: String,
    formality: String,
}

pub fn bundled(file: &str) -> Result<LoadedDocument, CliError> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(f, _)| *f == file)
        .ok_or_else(|| CliError::Usage(format!("no bundled document `{file}`")))?;
    parse_document(file, text)
}

pub fn cmd_corpus() -> Result<Report, CliError> {
    timed(|| {
        let golden: Golden = toml::from_str(GOLDEN).map_err(|e| CliError::Usage(format!("golden.toml: {e}")))?;
        let mut rows = Vec::new();
        let mut mismatches = Vec::new();
        for case in &golden.case {
            let doc = bundled(&case.file)?;
            let v = cmd_validate(&doc)?;
            let f = cmd_formality(&doc, Some(golden.arity))?;
            let got = [
                ("validate", v.status.to_string(), &case.validate),
                ("formality", f.status.to_string(), &case.formality),
            ];
            for (cmd, status, want) in got {
                if status != *want {
                    mismatches.push(format!("{} {cmd}: got {status}, expected {want}", case.file));
                }
                rows.push(Row { args: vec![case.file.clone(), cmd.into()], value: status });
            }
            if v.summary != case.summary {
                mismatches
                    .push(format!("{} validate: summary `{}`, expected `{}`", case.file, v.summary, case.summary));
            }
            rows.push(Row { args: vec![case.file.clone(), "summary".into()], value: v.summary.clone() });
        }
        let status = if mismatches.is_empty() { Status::Pass } else { Status::Fail };
        let summary = format!("{} documents, {} mismatches", golden.case.len(), mismatches.len());
        Ok(Report::new("corpus", "bundled", status, summary)
            .with([Finding::Table { name: "statuses".into(), rows }])
            .with(mismatches.into_iter().map(Finding::note)))
    })
}

/// Library instances available to `export`.
pub fn builtin(name: &str) -> Option<Instance> {
    let inst = match name {
        "nocontraction" => corpus::nocontraction(),
        "nocontraction-as-printed" => corpus::nocontraction_as_printed(),
        "noformal-dim3" => corpus::noformal_dim3(),
        "sl2-trace-form" => corpus::sl2_with_trace_form(),
        "sl2-on-plane" => corpus::sl2_on_plane(),
        "torus-on-plane" => corpus::torus_on_plane(),
        "sl2-tensor-cell" => corpus::sl2_tensor_cell(),
        "sl2-exterior" => corpus::sl2_exterior(),
        "torus-tensor-cell" => corpus::torus_tensor_cell(),
        "sl2-surface" => corpus::sl2_surface(),
        _ => return None,
    };
    Some(inst)
}

pub const BUILTIN_NAMES: &[&str] = &[
    "nocontraction",
    "nocontraction-as-printed",
    "noformal-dim3",
    "sl2-trace-form",
    "sl2-on-plane",
    "torus-on-plane",
    "sl2-tensor-cell",
    "sl2-exterior",
    "torus-tensor-cell",
    "sl2-surface",
];
