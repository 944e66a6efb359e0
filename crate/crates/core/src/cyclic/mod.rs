//! Invariant pairings of degree `−n` and (quasi-)cyclic DG-Lie algebras.

mod normalize;
mod pairing;
mod symplectic;

pub use normalize::{normalize_splitting, orthogonality_report, NormalizedSplitting};
pub use pairing::CyclicPairing;
pub use symplectic::{from_symplectic_representation, SymplecticRepresentation};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dgla::{compute_splitting, DgLieAlgebra};
use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::report::Violation;
use crate::scalar::{format_scalar, half, parity_sign};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairingFlags {
    pub cyclic_on_l: bool,
    pub nondegenerate_on_l: bool,
    pub nondegenerate_on_h: bool,
}

impl PairingFlags {
    pub fn is_quasi_cyclic(&self) -> bool {
        self.cyclic_on_l && self.nondegenerate_on_h
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_on_l && self.nondegenerate_on_l
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub degree: i32,
    pub violations: Vec<Violation>,
    pub rank_on_l: usize,
    pub rank_on_h: usize,
    pub dim_h: usize,
    pub flags: PairingFlags,
}

/// Degree constraint, graded symmetry, closedness and cyclicity on basis
/// elements, plus the rank of the form on `L` and on cohomology.
pub fn validate_pairing(a: &DgLieAlgebra, p: &CyclicPairing) -> PairingReport {
    let s = a.space();
    let n = p.degree();
    let dim = s.dim();
    let mut violations = Vec::new();
    let lbl = |t: &[usize]| t.iter().map(|&i| s.label(i).to_string()).collect::<Vec<_>>();
    if !p.space().same_as(s) {
        violations.push(Violation::new("pairing space", vec![], "pairing is defined on a different space"));
    }
    for (&(i, j), c) in p.entries() {
        if s.degree(i) + s.degree(j) != n {
            violations.push(Violation::new(
                "degree constraint",
                lbl(&[i, j]),
                format!("value {} on degrees {} + {} ≠ {n}", format_scalar(c), s.degree(i), s.degree(j)),
            ));
        }
    }
    for i in 0..dim {
        for j in i..dim {
            let sign = parity_sign((s.degree(i) * s.degree(j)) as i64);
            if p.basis(i, j) != sign.apply(p.basis(j, i)) {
                violations.push(Violation::new(
                    "graded symmetry",
                    lbl(&[i, j]),
                    format!("(x,y) = {}, (y,x) = {}", format_scalar(&p.basis(i, j)), format_scalar(&p.basis(j, i))),
                ));
            }
        }
    }
    for i in 0..dim {
        let x = Vector::basis(i);
        let dx = a.d(&x);
        for j in 0..dim {
            let y = Vector::basis(j);
            let l = p.eval(&dx, &y);
            let r = parity_sign(s.degree(i) as i64 + 1).apply(p.eval(&x, &a.d(&y)));
            if l != r {
                violations.push(Violation::new(
                    "closedness",
                    lbl(&[i, j]),
                    format!("(dx,y) = {}, (-1)^(|x|+1)(x,dy) = {}", format_scalar(&l), format_scalar(&r)),
                ));
            }
        }
    }
    let cyc: Vec<Violation> = (0..dim)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in 0..dim {
                let xy = a.bracket_basis(i, j);
                for k in 0..dim {
                    let l = p.eval(&xy, &Vector::basis(k));
                    let r = p.eval(&Vector::basis(i), &a.bracket_basis(j, k));
                    if l != r {
                        out.push(Violation::new(
                            "cyclicity",
                            lbl(&[i, j, k]),
                            format!("([x,y],z) = {}, (x,[y,z]) = {}", format_scalar(&l), format_scalar(&r)),
                        ));
                    }
                }
            }
            out
        })
        .collect();
    violations.extend(cyc);
    let rank_on_l = p.rank();
    let split = compute_splitting(a);
    let hs = split.harmonic();
    let rank_on_h = if hs.is_empty() { 0 } else { p.gram(hs, hs).rank() };
    let flags = PairingFlags {
        cyclic_on_l: violations.is_empty(),
        nondegenerate_on_l: rank_on_l == dim,
        nondegenerate_on_h: rank_on_h == hs.len(),
    };
    PairingReport { degree: n, violations, rank_on_l, rank_on_h, dim_h: hs.len(), flags }
}

/// A DG-Lie algebra with a degree `−n` pairing and its computed flags.
#[derive(Clone, Debug)]
pub struct QuasiCyclicDgla {
    pub algebra: DgLieAlgebra,
    pub pairing: CyclicPairing,
    pub report: PairingReport,
}

impl QuasiCyclicDgla {
    pub fn classify(algebra: DgLieAlgebra, pairing: CyclicPairing) -> Result<Self> {
        if !pairing.space().same_as(algebra.space()) {
            return Err(Error::SpaceMismatch);
        }
        let report = validate_pairing(&algebra, &pairing);
        Ok(QuasiCyclicDgla { algebra, pairing, report })
    }

    pub fn degree(&self) -> i32 {
        self.pairing.degree()
    }

    pub fn flags(&self) -> PairingFlags {
        self.report.flags
    }

    pub fn is_quasi_cyclic(&self) -> bool {
        self.report.flags.is_quasi_cyclic()
    }
}

/// `½[v,v]` for `v` of degree 1.
pub fn maurer_cartan_functional(a: &DgLieAlgebra, v: &Vector) -> Result<Vector> {
    v.check_in(a.space())?;
    if !v.is_zero() && !v.is_homogeneous_of(a.space(), 1) {
        return Err(Error::DegreeMismatch(format!("{} is not of degree 1", a.space().format_vector(v))));
    }
    Ok(a.bracket(v, v).scaled(&half()))
}

/// `(h(l), ι x) = 0`-type identities hold only after normalization; these two
/// hold for every closed pairing: `d(K) ⊥ d(K)` and `H ⊥ d(K)`.
pub fn boundary_orthogonality(p: &CyclicPairing, s: &crate::dgla::Splitting) -> Vec<Violation> {
    let sp = p.space();
    let bs = s.boundaries();
    let mut out = Vec::new();
    for b in &bs {
        for (name, others) in [("d(K) ⊥ d(K)", &bs), ("H ⊥ d(K)", &s.harmonic().to_vec())] {
            for o in others.iter() {
                let v = p.eval(b, o);
                if !v.is_zero() {
                    out.push(Violation::new(
                        name,
                        vec![sp.derived_label(b), sp.derived_label(o)],
                        format!("pairing = {}", format_scalar(&v)),
                    ));
                }
            }
        }
    }
    out
}
