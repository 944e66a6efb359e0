//! The `AlgebraDocument` TOML format.
//!
//! ```toml
//! name = "nocontraction"
//! field = "Q"
//!
//! [[basis]]
//! degree = 0
//! labels = ["a", "b"]
//!
//! [differential]
//! b = "db"
//!
//! [brackets]
//! "a,x" = "-db"
//!
//! [pairing]
//! degree = 2
//! entries = { "x,y" = "-1" }
//! ```

use std::collections::BTreeMap;

use lformal_core::corpus::Instance;
use lformal_core::scalar::{format_scalar, parity_sign, parse_scalar};
use lformal_core::{CyclicPairing, DgLieAlgebra, GradedSpace, LinearMap, MultilinearMap, Scalar, Splitting, Vector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    /// Malformed TOML or a field of the wrong shape; the message carries
    /// line and column.
    #[error("{0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

fn schema(path: impl Into<String>, message: impl ToString) -> DocumentError {
    DocumentError::Schema { path: path.into(), message: message.to_string() }
}

/// A rational written either as a bare integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Integer(i64),
    Text(String),
}

impl RationalText {
    fn parse(&self) -> lformal_core::Result<Scalar> {
        match self {
            RationalText::Integer(n) => Ok(lformal_core::scalar::int(*n)),
            RationalText::Text(t) => parse_scalar(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeBlock {
    pub degree: i32,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingSection {
    /// The integer `n`: entries pair degrees adding up to `n`.
    pub degree: i32,
    #[serde(default)]
    pub entries: BTreeMap<String, RationalText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingSection {
    pub harmonic: Vec<String>,
    pub complement: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<Vec<String>>,
    pub basis: Vec<DegreeBlock>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
    #[serde(default)]
    pub brackets: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingSection>,
}

/// A document turned into library objects.
#[derive(Clone, Debug)]
pub struct LoadedDocument {
    pub instance: Instance,
    pub splitting: Option<Splitting>,
    pub h0: Option<Vec<Vector>>,
}

fn pair_key(path: &str, key: &str, space: &GradedSpace) -> Result<(usize, usize), DocumentError> {
    let (x, y) = key.split_once(',').ok_or_else(|| schema(path, "expected a key of the form \"x,y\""))?;
    let x = space.index_of(x.trim()).map_err(|e| schema(path, e))?;
    let y = space.index_of(y.trim()).map_err(|e| schema(path, e))?;
    Ok((x, y))
}

fn vectors(path: &str, texts: &[String], space: &GradedSpace) -> Result<Vec<Vector>, DocumentError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| space.parse_vector(t).map_err(|e| schema(format!("{path}[{i}]"), e)))
        .collect()
}

fn quoted(path: &str, key: &str) -> String {
    format!("{path}.\"{key}\"")
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        toml::from_str(text).map_err(|e| DocumentError::Syntax(e.to_string().trim_end().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("documents always serialize")
    }

    /// Basis labels in load order: blocks sorted by degree, labels in the
    /// order written.
    fn space(&self) -> Result<GradedSpace, DocumentError> {
        let mut blocks: Vec<&DegreeBlock> = self.basis.iter().collect();
        blocks.sort_by_key(|b| b.degree);
        if let Some(w) = blocks.windows(2).find(|w| w[0].degree == w[1].degree) {
            return Err(schema("basis", format!("degree {} is declared twice", w[0].degree)));
        }
        GradedSpace::new(blocks.iter().flat_map(|b| b.labels.iter().map(|l| (l.clone(), b.degree))))
            .map_err(|e| schema("basis", e))
    }

    pub fn load(&self) -> Result<LoadedDocument, DocumentError> {
        if self.field != "Q" {
            return Err(schema("field", format!("only \"Q\" is supported, got \"{}\"", self.field)));
        }
        let space = self.space()?;

        let mut cols = vec![Vector::zero(); space.dim()];
        for (src, image) in &self.differential {
            let path = quoted("differential", src);
            let i = space.index_of(src).map_err(|e| schema(&path, e))?;
            cols[i] = space.parse_vector(image).map_err(|e| schema(&path, e))?;
        }
        let d = LinearMap::from_columns(&space, &space, 1, cols).map_err(|e| schema("differential", e))?;

        let mut entries: BTreeMap<(usize, usize), (String, Vector)> = BTreeMap::new();
        for (key, value) in &self.brackets {
            let path = quoted("brackets", key);
            let pair = pair_key(&path, key, &space)?;
            let v = space.parse_vector(value).map_err(|e| schema(&path, e))?;
            entries.insert(pair, (path, v));
        }
        let mut bracket = MultilinearMap::zero(&space, &space, 2, 0);
        for (&(i, j), (path, v)) in &entries {
            if i > j {
                if let Some((_, w)) = entries.get(&(j, i)) {
                    let sign = parity_sign((space.degree(i) * space.degree(j) + 1) as i64);
                    if sign.apply_vector(w.clone()) != *v {
                        return Err(schema(
                            path,
                            format!("conflicts with the entry on ({}, {})", space.label(j), space.label(i)),
                        ));
                    }
                    continue;
                }
            }
            bracket.set(&[i, j], v.clone()).map_err(|e| schema(path, e))?;
        }
        let algebra = DgLieAlgebra::new(space.clone(), d, bracket).map_err(|e| schema("brackets", e))?;

        let pairing = match &self.pairing {
            Some(p) => {
                let mut table = Vec::new();
                for (key, value) in &p.entries {
                    let path = quoted("pairing.entries", key);
                    let pair = pair_key(&path, key, &space)?;
                    table.push((pair, value.parse().map_err(|e| schema(&path, e))?));
                }
                Some(CyclicPairing::symmetric(&space, p.degree, table).map_err(|e| schema("pairing.entries", e))?)
            }
            None => None,
        };

        let splitting = match &self.splitting {
            Some(s) => {
                let h = vectors("splitting.harmonic", &s.harmonic, &space)?;
                let k = vectors("splitting.complement", &s.complement, &space)?;
                let mut sp = Splitting::from_subspaces(&algebra, h, k).map_err(|e| schema("splitting", e))?;
                if let Some(labels) = &s.labels {
                    sp = sp.with_cohomology_labels(labels).map_err(|e| schema("splitting.labels", e))?;
                }
                Some(sp)
            }
            None => None,
        };
        let h0 = self.h0.as_ref().map(|h| vectors("h0", h, &space)).transpose()?;

        Ok(LoadedDocument { instance: Instance { name: self.name.clone(), algebra, pairing }, splitting, h0 })
    }

    /// The canonical document of loaded data: blocks by increasing degree,
    /// one bracket and pairing entry per unordered pair, zero entries dropped.
    pub fn from_loaded(doc: &LoadedDocument) -> Self {
        let inst = &doc.instance;
        let space = inst.algebra.space();
        let mut basis: Vec<DegreeBlock> = Vec::new();
        let mut order: Vec<usize> = (0..space.dim()).collect();
        order.sort_by_key(|&i| space.degree(i));
        for &i in &order {
            let deg = space.degree(i);
            match basis.last_mut() {
                Some(b) if b.degree == deg => b.labels.push(space.label(i).to_string()),
                _ => basis.push(DegreeBlock { degree: deg, labels: vec![space.label(i).to_string()] }),
            }
        }
        let differential = (0..space.dim())
            .filter_map(|i| {
                let v = inst.algebra.differential().column(i);
                (!v.is_zero()).then(|| (space.label(i).to_string(), space.format_vector(v)))
            })
            .collect();
        let mut pos = vec![0; space.dim()];
        for (rank, &i) in order.iter().enumerate() {
            pos[i] = rank;
        }
        let key = |i: usize, j: usize| format!("{},{}", space.label(i), space.label(j));
        let brackets = inst
            .algebra
            .bracket_map()
            .entries()
            .map(|(k, v)| {
                let (i, j) = (k[0], k[1]);
                if pos[i] <= pos[j] {
                    (key(i, j), space.format_vector(v))
                } else {
                    let sign = parity_sign((space.degree(i) * space.degree(j) + 1) as i64);
                    (key(j, i), space.format_vector(&sign.apply_vector(v.clone())))
                }
            })
            .collect();
        let pairing = inst.pairing.as_ref().map(|p| PairingSection {
            degree: p.degree(),
            entries: p
                .entries()
                .filter(|((i, j), _)| pos[*i] <= pos[*j])
                .map(|((i, j), c)| (key(*i, *j), RationalText::Text(format_scalar(c))))
                .collect(),
        });
        let splitting = doc.splitting.as_ref().map(|s| SplittingSection {
            harmonic: s.harmonic().iter().map(|v| space.format_vector(v)).collect(),
            complement: s.complement().iter().map(|v| space.format_vector(v)).collect(),
            labels: Some(s.cohomology_space().labels().to_vec()),
        });
        let h0 = doc.h0.as_ref().map(|h| h.iter().map(|v| space.format_vector(v)).collect());
        AlgebraDocument {
            name: inst.name.clone(),
            field: "Q".into(),
            h0,
            basis,
            differential,
            brackets,
            pairing,
            splitting,
        }
    }

    pub fn from_instance(inst: &Instance) -> Self {
        Self::from_loaded(&LoadedDocument { instance: inst.clone(), splitting: None, h0: None })
    }

    pub fn normalized(&self) -> Result<Self, DocumentError> {
        Ok(Self::from_loaded(&self.load()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
name = "small"
field = "Q"

[[basis]]
degree = 1
labels = ["x", "y"]

[[basis]]
degree = 0
labels = ["a"]

[brackets]
"a,x" = "x"
"x,a" = "-x"
"a,y" = "-y"
"#;

    #[test]
    fn loads_and_completes_skew_entries() {
        let doc = AlgebraDocument::parse(SMALL).unwrap().load().unwrap();
        let a = &doc.instance.algebra;
        assert_eq!(a.space().labels(), ["a", "x", "y"]);
        let (ia, iy) = (0, 2);
        assert_eq!(a.space().format_vector(&a.bracket_basis(iy, ia)), "y");
    }

    #[test]
    fn conflicting_skew_entry_is_rejected() {
        let text = SMALL.replace("\"x,a\" = \"-x\"", "\"x,a\" = \"x\"");
        let err = AlgebraDocument::parse(&text).unwrap().load().unwrap_err();
        assert!(err.to_string().starts_with("brackets.\"x,a\""), "{err}");
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = AlgebraDocument::parse("name = \"x\"\nfield = \n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn unknown_label_names_its_path() {
        let text = SMALL.replace("\"a,y\" = \"-y\"", "\"a,q\" = \"-y\"");
        let err = AlgebraDocument::parse(&text).unwrap().load().unwrap_err();
        assert!(err.to_string().starts_with("brackets.\"a,q\""), "{err}");
    }

    #[test]
    fn wrong_degree_is_a_schema_error() {
        let text = format!("{SMALL}\n[differential]\nx = \"y\"\n");
        let err = AlgebraDocument::parse(&text).unwrap().load().unwrap_err();
        assert!(err.to_string().starts_with("differential"), "{err}");
    }

    #[test]
    fn field_must_be_rational() {
        let text = SMALL.replace("\"Q\"", "\"F2\"");
        assert!(AlgebraDocument::parse(&text).unwrap().load().is_err());
    }

    #[test]
    fn normalization_is_idempotent() {
        let once = AlgebraDocument::parse(SMALL).unwrap().normalized().unwrap();
        let text = once.to_toml();
        let twice = AlgebraDocument::parse(&text).unwrap().normalized().unwrap();
        assert_eq!(once, twice);
        assert_eq!(text, twice.to_toml());
    }
}
