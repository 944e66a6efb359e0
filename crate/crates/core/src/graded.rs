//! Finite graded vector spaces with a distinguished basis, and sparse vectors.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, is_minus_unit, is_unit, Scalar};

#[derive(Debug)]
struct SpaceInner {
    labels: Vec<String>,
    degrees: Vec<i32>,
    index: HashMap<String, usize>,
}

/// A finite-dimensional graded vector space given by a labelled basis.
///
/// Cloning is cheap; clones compare equal to the original.
#[derive(Clone, Debug)]
pub struct GradedSpace(Arc<SpaceInner>);

impl GradedSpace {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = (S, i32)>) -> Result<Self> {
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        for (label, degree) in basis {
            let label = label.into();
            if index.insert(label.clone(), labels.len()).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
            labels.push(label);
            degrees.push(degree);
        }
        Ok(GradedSpace(Arc::new(SpaceInner { labels, degrees, index })))
    }

    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.0.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.0.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Distinct degrees carrying at least one basis element, ascending.
    pub fn support(&self) -> Vec<i32> {
        self.0.degrees.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn indices_in_degree(&self, degree: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == degree).collect()
    }

    pub fn dim_in_degree(&self, degree: i32) -> usize {
        self.0.degrees.iter().filter(|&&d| d == degree).count()
    }

    /// Span of degrees `max - min`, zero for an empty space.
    pub fn degree_span(&self) -> i32 {
        let s = self.support();
        match (s.first(), s.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn same_as(&self, other: &GradedSpace) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.labels == other.0.labels && self.0.degrees == other.0.degrees)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::basis(i)
    }

    /// Parses a linear combination such as `2*x - 1/2*db + y` (or `0`).
    pub fn parse_vector(&self, text: &str) -> Result<Vector> {
        let mut v = Vector::zero();
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty linear combination".into()));
        }
        if t == "0" {
            return Ok(v);
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut depth = 0i32;
        for ch in t.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch)
                }
                ')' => {
                    depth -= 1;
                    current.push(ch)
                }
                '+' | '-' if depth == 0 && !current.trim().is_empty() && !current.trim_end().ends_with('*') => {
                    terms.push((negative, std::mem::take(&mut current)));
                    negative = ch == '-';
                }
                '-' if depth == 0 && current.trim().is_empty() => negative = !negative,
                '+' if depth == 0 && current.trim().is_empty() => {}
                _ => current.push(ch),
            }
        }
        terms.push((negative, current));
        for (neg, term) in terms {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{t}`")));
            }
            let (coeff, label) = match term.rsplit_once('*') {
                Some((c, l)) => {
                    let c = c.trim().trim_start_matches('(').trim_end_matches(')');
                    (crate::scalar::parse_scalar(c)?, l.trim())
                }
                None => (Scalar::one(), term),
            };
            let idx = self.index_of(label)?;
            let coeff = if neg { -coeff } else { coeff };
            v.add_term(idx, &coeff);
        }
        Ok(v)
    }

    pub fn format_vector(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (i, c)) in v.iter().enumerate() {
            let label = self.label(*i);
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if is_unit(&mag) {
                out.push_str(label);
            } else {
                out.push_str(&format!("{}*{}", format_scalar(&mag), label));
            }
        }
        out
    }

    /// Label for a vector used as a basis element of a derived space: the
    /// original label when the vector is a basis element, otherwise the
    /// bracketed linear combination.
    pub fn derived_label(&self, v: &Vector) -> String {
        if v.len() == 1 {
            let (i, c) = v.iter().next().unwrap();
            if is_unit(c) {
                return self.label(*i).to_string();
            }
            if is_minus_unit(c) {
                return format!("[-{}]", self.label(*i));
            }
        }
        format!("[{}]", self.format_vector(v))
    }
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for GradedSpace {}

/// A sparse vector: basis index to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    coeffs: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, Scalar::one());
        Vector { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Vector::zero();
        for (i, c) in terms {
            v.add_term(i, &c);
        }
        v
    }

    pub fn from_dense(indices: &[usize], coords: &[Scalar]) -> Self {
        Vector::from_terms(indices.iter().copied().zip(coords.iter().cloned()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(i).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.coeffs {
            self.add_term(*i, &(x * c));
        }
    }

    pub fn add_assign(&mut self, other: &Vector) {
        for (i, x) in &other.coeffs {
            self.add_term(*i, x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { coeffs: self.coeffs.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn neg(&self) -> Vector {
        Vector { coeffs: self.coeffs.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    pub fn plus(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_assign(other);
        v
    }

    pub fn minus(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(other, &-Scalar::one());
        v
    }

    pub fn dense(&self, indices: &[usize]) -> Vec<Scalar> {
        indices.iter().map(|&i| self.get(i)).collect()
    }

    /// The common degree of all supporting basis elements. The zero vector is
    /// homogeneous of every degree and reports `Some(None)`.
    pub fn homogeneous_degree(&self, space: &GradedSpace) -> Option<Option<i32>> {
        let mut deg = None;
        for i in self.support() {
            let d = space.degree(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(deg)
    }

    pub fn is_homogeneous_of(&self, space: &GradedSpace, degree: i32) -> bool {
        self.support().all(|i| space.degree(i) == degree)
    }

    pub fn check_in(&self, space: &GradedSpace) -> Result<()> {
        match self.coeffs.keys().next_back() {
            Some(&i) if i >= space.dim() => Err(Error::SpaceMismatch),
            _ => Ok(()),
        }
    }

    /// Remaps basis indices; used when transporting vectors between spaces
    /// that share a sub-basis.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> Vector {
        Vector::from_terms(self.coeffs.iter().map(|(i, c)| (map(*i), c.clone())))
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(i, c)| format!("{}*e{}", format_scalar(c), i)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn space() -> GradedSpace {
        GradedSpace::new([("x", 1), ("y", 1), ("db", 1), ("z", 2)]).unwrap()
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(matches!(GradedSpace::new([("a", 0), ("a", 1)]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn parse_and_format_linear_combinations() {
        let s = space();
        let v = s.parse_vector("2*x - 1/2*db + y").unwrap();
        assert_eq!(v.get(0), int(2));
        assert_eq!(v.get(2), ratio(-1, 2));
        assert_eq!(s.format_vector(&v), "2*x + y - 1/2*db");
        assert_eq!(s.parse_vector(&s.format_vector(&v)).unwrap(), v);
        assert_eq!(s.parse_vector("-x").unwrap(), Vector::basis(0).neg());
        assert!(s.parse_vector("x + q").is_err());
        assert!(s.parse_vector("0").unwrap().is_zero());
        assert_eq!(s.parse_vector("x - x").unwrap(), Vector::zero());
    }

    #[test]
    fn homogeneity() {
        let s = space();
        let v = s.parse_vector("x + db").unwrap();
        assert_eq!(v.homogeneous_degree(&s), Some(Some(1)));
        let w = s.parse_vector("x + z").unwrap();
        assert_eq!(w.homogeneous_degree(&s), None);
        assert_eq!(Vector::zero().homogeneous_degree(&s), Some(None));
    }

    #[test]
    fn derived_labels() {
        let s = space();
        assert_eq!(s.derived_label(&Vector::basis(1)), "y");
        assert_eq!(s.derived_label(&s.parse_vector("x+db").unwrap()), "[x + db]");
    }
}
