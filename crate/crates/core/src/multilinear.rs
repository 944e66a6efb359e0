//! Graded skew-symmetric multilinear maps.
//!
//! Values are stored on canonical tuples only: basis indices in
//! non-decreasing order, where an odd-degree element may repeat (`v ∧ v` is
//! nonzero for `|v|` odd) and an even-degree element may not. Evaluation on
//! any other tuple sorts it and applies the Koszul sign.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linear_map::LinearMap;
use crate::perm::{canonical_tuples, canonicalize};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap {
    domain: GradedSpace,
    codomain: GradedSpace,
    arity: usize,
    degree: i32,
    table: BTreeMap<Vec<usize>, Vector>,
}

impl MultilinearMap {
    pub fn zero(domain: &GradedSpace, codomain: &GradedSpace, arity: usize, degree: i32) -> Self {
        MultilinearMap { domain: domain.clone(), codomain: codomain.clone(), arity, degree, table: BTreeMap::new() }
    }

    pub fn from_linear(map: &LinearMap) -> Self {
        let mut m = MultilinearMap::zero(map.domain(), map.codomain(), 1, map.degree());
        for (i, col) in map.columns().iter().enumerate() {
            if !col.is_zero() {
                m.table.insert(vec![i], col.clone());
            }
        }
        m
    }

    pub fn domain(&self) -> &GradedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedSpace {
        &self.codomain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Stored `(canonical tuple, value)` pairs, all values nonzero.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.table.iter()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    fn expected_degree(&self, tuple: &[usize]) -> i32 {
        tuple.iter().map(|&i| self.domain.degree(i)).sum::<i32>() + self.degree
    }

    /// Sets the value on an arbitrary tuple; the stored canonical entry is
    /// `sign · value`. Setting a nonzero value on a tuple that repeats an
    /// even-degree element is an error.
    pub fn set(&mut self, tuple: &[usize], value: Vector) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: tuple.len() });
        }
        if let Some(&i) = tuple.iter().find(|&&i| i >= self.domain.dim()) {
            return Err(Error::DimensionMismatch(format!("basis index {i} out of range")));
        }
        value.check_in(&self.codomain)?;
        let want = self.expected_degree(tuple);
        if !value.is_homogeneous_of(&self.codomain, want) {
            return Err(Error::DegreeMismatch(format!(
                "value on ({}) must be homogeneous of degree {want}",
                self.tuple_labels(tuple).join(", ")
            )));
        }
        let dom = &self.domain;
        match canonicalize(tuple, |i| dom.degree(i)) {
            None if value.is_zero() => Ok(()),
            None => Err(Error::DegreeMismatch(format!(
                "({}) repeats an even element, skew-symmetry forces zero",
                self.tuple_labels(tuple).join(", ")
            ))),
            Some((sign, key)) => {
                let v = sign.apply_vector(value);
                if v.is_zero() {
                    self.table.remove(&key);
                } else {
                    self.table.insert(key, v);
                }
                Ok(())
            }
        }
    }

    /// Adds `value` to the entry on `tuple` (sign-adjusted).
    pub fn accumulate(&mut self, tuple: &[usize], value: &Vector) -> Result<()> {
        let current = self.eval_basis(tuple);
        self.set(tuple, current.plus(value))
    }

    pub(crate) fn insert_canonical(&mut self, key: Vec<usize>, value: Vector) {
        if !value.is_zero() {
            self.table.insert(key, value);
        }
    }

    pub fn get_canonical(&self, key: &[usize]) -> Option<&Vector> {
        self.table.get(key)
    }

    /// Value on a tuple of basis indices, in any order.
    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        let dom = &self.domain;
        match canonicalize(tuple, |i| dom.degree(i)) {
            None => Vector::zero(),
            Some((sign, key)) => match self.table.get(&key) {
                Some(v) => sign.apply_vector(v.clone()),
                None => Vector::zero(),
            },
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn evaluate(&self, args: &[&Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        for a in args {
            a.check_in(&self.domain)?;
        }
        Ok(self.evaluate_unchecked(args))
    }

    pub(crate) fn evaluate_unchecked(&self, args: &[&Vector]) -> Vector {
        let mut out = Vector::zero();
        if self.table.is_empty() || args.iter().any(|a| a.is_zero()) {
            return out;
        }
        let mut tuple = Vec::with_capacity(args.len());
        self.expand(args, 0, &Scalar::one(), &mut tuple, &mut out);
        out
    }

    fn expand(&self, args: &[&Vector], pos: usize, coeff: &Scalar, tuple: &mut Vec<usize>, out: &mut Vector) {
        if pos == args.len() {
            let v = self.eval_basis(tuple);
            out.add_scaled(&v, coeff);
            return;
        }
        for (i, c) in args[pos].iter() {
            tuple.push(*i);
            self.expand(args, pos + 1, &(coeff * c), tuple, out);
            tuple.pop();
        }
    }

    /// Canonical tuples of the domain of this arity.
    pub fn canonical_domain_tuples(&self) -> Vec<Vec<usize>> {
        let idx: Vec<usize> = (0..self.domain.dim()).collect();
        let dom = self.domain.clone();
        canonical_tuples(&idx, self.arity, &move |i| dom.degree(i))
    }

    pub fn scale(&self, c: &Scalar) -> MultilinearMap {
        if c.is_zero() {
            return MultilinearMap::zero(&self.domain, &self.codomain, self.arity, self.degree);
        }
        MultilinearMap { table: self.table.iter().map(|(k, v)| (k.clone(), v.scaled(c))).collect(), ..self.clone() }
    }

    /// Post-composition with a linear map `codomain -> W`.
    pub fn then(&self, map: &LinearMap) -> Result<MultilinearMap> {
        if !map.domain().same_as(&self.codomain) {
            return Err(Error::SpaceMismatch);
        }
        let mut out = MultilinearMap::zero(&self.domain, map.codomain(), self.arity, self.degree + map.degree());
        for (k, v) in &self.table {
            out.insert_canonical(k.clone(), map.apply(v));
        }
        Ok(out)
    }

    pub fn tuple_labels(&self, tuple: &[usize]) -> Vec<String> {
        tuple.iter().map(|&i| self.domain.label(i).to_string()).collect()
    }
}

impl crate::scalar::Sign {
    pub fn apply_vector(self, v: Vector) -> Vector {
        match self {
            crate::scalar::Sign::Plus => v,
            crate::scalar::Sign::Minus => v.neg(),
        }
    }
}
