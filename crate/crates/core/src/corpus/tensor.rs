//! Tensor products `g ⊗ A` of a DG-Lie algebra with a graded-commutative
//! algebra carrying a trace.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::Instance;
use crate::cyclic::CyclicPairing;
use crate::dgla::DgLieAlgebra;
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linear_map::LinearMap;
use crate::multilinear::MultilinearMap;
use crate::scalar::{int, is_odd, parity_sign, Scalar};

/// A finite-dimensional graded-commutative DG algebra with a linear trace
/// `τ` of fixed degree.
#[derive(Clone, Debug)]
pub struct Cdga {
    space: GradedSpace,
    differential: LinearMap,
    product: BTreeMap<(usize, usize), Vector>,
    trace_degree: i32,
    trace: Vec<Scalar>,
}

impl Cdga {
    /// Products are given on ordered pairs and completed by graded
    /// commutativity; `unit` multiplies as the identity.
    pub fn new(
        basis: &[(&str, i32)],
        differential: &[(&str, &str)],
        products: &[(&str, &str, &str)],
        unit: Option<&str>,
        trace: (i32, &[(&str, i64)]),
    ) -> Result<Cdga> {
        let space = GradedSpace::new(basis.iter().map(|&(l, d)| (l, d)))?;
        let mut cols = vec![Vector::zero(); space.dim()];
        for &(x, y) in differential {
            cols[space.index_of(x)?] = space.parse_vector(y)?;
        }
        let differential = LinearMap::from_columns(&space, &space, 1, cols)?;
        let mut product = BTreeMap::new();
        let mut put = |i: usize, j: usize, v: Vector| -> Result<()> {
            if v.is_zero() {
                return Ok(());
            }
            let (di, dj) = (space.degree(i), space.degree(j));
            if !v.is_homogeneous_of(&space, di + dj) {
                return Err(Error::DegreeMismatch(format!("{}·{}", space.label(i), space.label(j))));
            }
            if i == j && is_odd(di) {
                return Err(Error::Parse(format!("{}² must vanish", space.label(i))));
            }
            let mirrored = parity_sign((di * dj) as i64).apply_vector(v.clone());
            product.insert((i, j), v);
            product.insert((j, i), mirrored);
            Ok(())
        };
        if let Some(u) = unit {
            let u = space.index_of(u)?;
            for i in 0..space.dim() {
                put(u, i, Vector::basis(i))?;
            }
        }
        for &(x, y, v) in products {
            put(space.index_of(x)?, space.index_of(y)?, space.parse_vector(v)?)?;
        }
        let mut tr = vec![Scalar::zero(); space.dim()];
        for &(x, c) in trace.1 {
            let i = space.index_of(x)?;
            if space.degree(i) != trace.0 {
                return Err(Error::DegreeMismatch(format!("τ({x}) with τ of degree {}", trace.0)));
            }
            tr[i] = int(c);
        }
        Ok(Cdga { space, differential, product, trace_degree: trace.0, trace: tr })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn mul(&self, i: usize, j: usize) -> Vector {
        self.product.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn trace(&self, v: &Vector) -> Scalar {
        v.iter().map(|(&i, c)| c * &self.trace[i]).sum()
    }
}

/// `g ⊗ A` with `[x⊗a, y⊗b] = (−1)^{|a||y|}[x,y]⊗ab`,
/// `d(x⊗a) = dx⊗a + (−1)^{|x|} x⊗da`, and
/// `(x⊗a, y⊗b) = (−1)^{|a||y|}(x,y)τ(ab)`. Basis labels are `x.a`.
pub fn tensor_product(g: &Instance, a: &Cdga) -> Result<Instance> {
    let gs = g.algebra.space();
    let as_ = a.space();
    let m = as_.dim();
    let idx = |x: usize, u: usize| x * m + u;
    let mut basis = Vec::with_capacity(gs.dim() * m);
    for x in 0..gs.dim() {
        for u in 0..m {
            basis.push((format!("{}.{}", gs.label(x), as_.label(u)), gs.degree(x) + as_.degree(u)));
        }
    }
    let space = GradedSpace::new(basis)?;
    let tensor = |v: &Vector, w: &Vector| -> Vector {
        let mut out = Vector::zero();
        for (&x, c) in v.iter() {
            for (&u, c2) in w.iter() {
                out.add_term(idx(x, u), &(c * c2));
            }
        }
        out
    };
    let mut cols = Vec::with_capacity(space.dim());
    for x in 0..gs.dim() {
        for u in 0..m {
            let mut v = tensor(&g.algebra.d(&Vector::basis(x)), &Vector::basis(u));
            let right = tensor(&Vector::basis(x), &a.differential.apply(&Vector::basis(u)));
            v.add_scaled(&right, &parity_sign(gs.degree(x) as i64).to_scalar());
            cols.push(v);
        }
    }
    let d = LinearMap::from_columns(&space, &space, 1, cols)?;
    let mut br = MultilinearMap::zero(&space, &space, 2, 0);
    for x in 0..gs.dim() {
        for y in 0..gs.dim() {
            let xy = g.algebra.bracket_basis(x, y);
            if xy.is_zero() {
                continue;
            }
            for u in 0..m {
                for w in 0..m {
                    let (i, j) = (idx(x, u), idx(y, w));
                    if i > j {
                        continue;
                    }
                    let uw = a.mul(u, w);
                    if uw.is_zero() {
                        continue;
                    }
                    let sign = parity_sign((as_.degree(u) * gs.degree(y)) as i64);
                    br.set(&[i, j], sign.apply_vector(tensor(&xy, &uw)))?;
                }
            }
        }
    }
    let algebra = DgLieAlgebra::new(space.clone(), d, br)?;
    let pairing = match &g.pairing {
        Some(p) => {
            let mut entries = Vec::new();
            for (&(x, y), c) in p.entries() {
                for u in 0..m {
                    for w in 0..m {
                        let t = a.trace(&a.mul(u, w));
                        if t.is_zero() {
                            continue;
                        }
                        let sign = parity_sign((as_.degree(u) * gs.degree(y)) as i64);
                        entries.push(((idx(x, u), idx(y, w)), sign.apply(c * t)));
                    }
                }
            }
            Some(CyclicPairing::from_table(&space, p.degree() + a.trace_degree, entries)?)
        }
        None => None,
    };
    Ok(Instance { name: format!("{}-tensor", g.name), algebra, pairing })
}
