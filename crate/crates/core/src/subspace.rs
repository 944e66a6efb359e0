//! Spans of sparse vectors: membership, coordinates, greedy extension.

use std::collections::BTreeSet;

use crate::graded::Vector;
use crate::linalg::{Matrix, Solution};
use crate::scalar::Scalar;

fn support_of<'a>(vs: impl IntoIterator<Item = &'a Vector>) -> Vec<usize> {
    let mut s = BTreeSet::new();
    for v in vs {
        s.extend(v.support());
    }
    s.into_iter().collect()
}

fn columns(vs: &[Vector], rows: &[usize]) -> Matrix {
    let cols: Vec<Vec<Scalar>> = vs.iter().map(|v| v.dense(rows)).collect();
    Matrix::from_columns(rows.len(), &cols)
}

/// Dimension of the span.
pub fn rank(vs: &[Vector]) -> usize {
    let rows = support_of(vs);
    if rows.is_empty() {
        return 0;
    }
    columns(vs, &rows).rank()
}

pub fn is_independent(vs: &[Vector]) -> bool {
    rank(vs) == vs.len()
}

/// Coefficients `c` with `Σ c_i basis_i = v`, or `None` when `v` is outside
/// the span. Free coefficients are set to zero.
pub fn coordinates(basis: &[Vector], v: &Vector) -> Option<Vec<Scalar>> {
    let rows = support_of(basis.iter().chain(std::iter::once(v)));
    if rows.is_empty() {
        return Some(vec![num_traits::Zero::zero(); basis.len()]);
    }
    let m = columns(basis, &rows);
    match m.solve(&v.dense(&rows)).expect("dimensions agree") {
        Solution::Consistent { particular, .. } => Some(particular),
        Solution::Inconsistent { .. } => None,
    }
}

pub fn contains(basis: &[Vector], v: &Vector) -> bool {
    v.is_zero() || coordinates(basis, v).is_some()
}

/// Indices of candidates picked in order, each one independent of `base` and
/// of those picked before it.
pub fn extend_greedy(base: &[Vector], candidates: &[Vector]) -> Vec<usize> {
    let mut current: Vec<Vector> = base.to_vec();
    let mut r = rank(&current);
    let mut picked = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        current.push(c.clone());
        let r2 = rank(&current);
        if r2 > r {
            r = r2;
            picked.push(i);
        } else {
            current.pop();
        }
    }
    picked
}

/// Linear combination `Σ c_i vs_i`.
pub fn combine(vs: &[Vector], coeffs: &[Scalar]) -> Vector {
    let mut out = Vector::zero();
    for (v, c) in vs.iter().zip(coeffs) {
        out.add_scaled(v, c);
    }
    out
}
