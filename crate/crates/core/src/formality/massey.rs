//! Triple Massey products in the Lie setting.

use rayon::prelude::*;
use serde::Serialize;

use crate::dgla::{DgLieAlgebra, Splitting};
use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::scalar::parity_sign;
use crate::subspace;

/// `⟨a,b,c⟩` represented by
/// `[ξ,c] − (−1)^{|a|}[a,η] + (−1)^{|a||b|+|b|}[b,ζ]` where
/// `dξ = [a,b]`, `dη = [b,c]`, `dζ = [a,c]`.
#[derive(Clone, Debug, Serialize)]
pub struct MasseyTripleProduct {
    pub inputs: [String; 3],
    pub primitives: [String; 3],
    pub representative: String,
    /// Class of the representative in `H`.
    pub class: String,
    /// Basis of the indeterminacy subspace of `H`.
    pub indeterminacy: Vec<String>,
    pub nonzero: bool,
    #[serde(skip)]
    pub class_vector: Vector,
    #[serde(skip)]
    pub indeterminacy_vectors: Vec<Vector>,
    #[serde(skip)]
    pub primitive_vectors: [Vector; 3],
}

#[derive(Clone, Debug, Serialize)]
#[allow(clippy::large_enum_variant)]
pub enum MasseyOutcome {
    Defined(MasseyTripleProduct),
    NotDefined { reason: String },
}

impl MasseyOutcome {
    pub fn product(&self) -> Option<&MasseyTripleProduct> {
        match self {
            MasseyOutcome::Defined(m) => Some(m),
            MasseyOutcome::NotDefined { .. } => None,
        }
    }
}

fn cocycle_degree(a: &DgLieAlgebra, v: &Vector) -> Result<i32> {
    let sp = a.space();
    v.check_in(sp)?;
    let deg = match v.homogeneous_degree(sp) {
        Some(Some(d)) => d,
        _ => return Err(Error::NotHomogeneous(sp.format_vector(v))),
    };
    if !a.d(v).is_zero() {
        return Err(Error::NotCocycle(sp.format_vector(v)));
    }
    Ok(deg)
}

/// Span of `π[ι₁ H^{deg}, c]` (or `π[c, ι₁ H^{deg}]` when `left` is false).
fn shifts(a: &DgLieAlgebra, s: &Splitting, deg: i32, c: &Vector, c_on_right: bool) -> Vec<Vector> {
    s.harmonic_in_degree(deg)
        .into_iter()
        .map(|t| {
            let u = s.iota().column(t);
            let br = if c_on_right { a.bracket(u, c) } else { a.bracket(c, u) };
            s.pi().apply(&br)
        })
        .filter(|v| !v.is_zero())
        .collect()
}

pub fn indeterminacy(a: &DgLieAlgebra, s: &Splitting, x: &Vector, y: &Vector, z: &Vector) -> Result<Vec<Vector>> {
    let (da, db, dc) = (cocycle_degree(a, x)?, cocycle_degree(a, y)?, cocycle_degree(a, z)?);
    let mut gens = shifts(a, s, da + db - 1, z, true);
    gens.extend(shifts(a, s, db + dc - 1, x, false));
    gens.extend(shifts(a, s, da + dc - 1, y, false));
    let keep = subspace::extend_greedy(&[], &gens);
    Ok(keep.into_iter().map(|i| gens[i].clone()).collect())
}

/// The representative for explicitly chosen primitives.
pub fn massey_representative(
    a: &DgLieAlgebra,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    primitives: [&Vector; 3],
) -> Result<Vector> {
    let (da, db) = (cocycle_degree(a, x)? as i64, cocycle_degree(a, y)? as i64);
    cocycle_degree(a, z)?;
    let [xi, eta, zeta] = primitives;
    let mut r = a.bracket(xi, z);
    r.add_scaled(&a.bracket(x, eta), &(-parity_sign(da).to_scalar()));
    r.add_scaled(&a.bracket(y, zeta), &parity_sign(da * db + db).to_scalar());
    Ok(r)
}

pub fn massey_triple(a: &DgLieAlgebra, s: &Splitting, x: &Vector, y: &Vector, z: &Vector) -> Result<MasseyOutcome> {
    let sp = a.space();
    for v in [x, y, z] {
        cocycle_degree(a, v)?;
    }
    let pairs = [(x, y, "[a,b]"), (y, z, "[b,c]"), (x, z, "[a,c]")];
    let mut prims: Vec<Vector> = Vec::with_capacity(3);
    for (u, v, name) in pairs {
        let br = a.bracket(u, v);
        if !s.pi().apply(&br).is_zero() {
            return Ok(MasseyOutcome::NotDefined {
                reason: format!("{name} = {} is not exact", sp.format_vector(&br)),
            });
        }
        prims.push(s.h().apply(&br).neg());
    }
    let rep = massey_representative(a, x, y, z, [&prims[0], &prims[1], &prims[2]])?;
    debug_assert!(a.d(&rep).is_zero());
    let class = s.pi().apply(&rep);
    let ind = indeterminacy(a, s, x, y, z)?;
    let nonzero = !subspace::contains(&ind, &class);
    let hs = s.cohomology_space();
    Ok(MasseyOutcome::Defined(MasseyTripleProduct {
        inputs: [sp.derived_label(x), sp.derived_label(y), sp.derived_label(z)],
        primitives: [sp.format_vector(&prims[0]), sp.format_vector(&prims[1]), sp.format_vector(&prims[2])],
        representative: sp.format_vector(&rep),
        class: hs.format_vector(&class),
        indeterminacy: ind.iter().map(|v| hs.format_vector(v)).collect(),
        nonzero,
        class_vector: class,
        indeterminacy_vectors: ind,
        primitive_vectors: [prims[0].clone(), prims[1].clone(), prims[2].clone()],
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct NonFormalityCertificate {
    /// Labels of the cohomology basis elements used.
    pub triple: [String; 3],
    pub product: MasseyTripleProduct,
}

#[derive(Clone, Debug, Serialize)]
#[allow(clippy::large_enum_variant)]
pub enum NonFormality {
    Certificate(NonFormalityCertificate),
    Inconclusive { triples_scanned: usize, defined: usize },
}

impl NonFormality {
    pub fn certificate(&self) -> Option<&NonFormalityCertificate> {
        match self {
            NonFormality::Certificate(c) => Some(c),
            NonFormality::Inconclusive { .. } => None,
        }
    }
}

/// Scans triples of cohomology basis elements: Massey powers `⟨ξ,ξ,ξ⟩`
/// first, then all ordered triples lexicographically. Returns the first
/// nonzero class.
pub fn detect_nonformality(a: &DgLieAlgebra, s: &Splitting) -> NonFormality {
    let hs = s.cohomology_space();
    let n = hs.dim();
    let mut order: Vec<[usize; 3]> = (0..n).map(|t| [t, t, t]).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !(i == j && j == k) {
                    order.push([i, j, k]);
                }
            }
        }
    }
    let results: Vec<Option<MasseyOutcome>> = order
        .par_iter()
        .map(|t| {
            let v = t.map(|i| s.iota().column(i).clone());
            massey_triple(a, s, &v[0], &v[1], &v[2]).ok()
        })
        .collect();
    let mut defined = 0;
    for (t, r) in order.iter().zip(results) {
        if let Some(MasseyOutcome::Defined(m)) = r {
            defined += 1;
            if m.nonzero {
                return NonFormality::Certificate(NonFormalityCertificate {
                    triple: t.map(|i| hs.label(i).to_string()),
                    product: m,
                });
            }
        }
    }
    NonFormality::Inconclusive { triples_scanned: order.len(), defined }
}
