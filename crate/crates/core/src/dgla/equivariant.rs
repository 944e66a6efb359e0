//! Search for splittings whose `H^i` and `K^i` are `H⁰`-submodules.
//!
//! Per degree, with the flag `B ⊆ Z ⊆ L` fixed, an invariant complement of
//! the smaller space is the graph of a matrix `X` intertwining the action:
//! `A_low X − X A_high = rhs`, one block equation per acting element. The
//! problem is linear in the entries of `X`.

use num_traits::Zero;
use serde::Serialize;

use super::{compute_splitting, DgLieAlgebra, Splitting};
use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::linalg::{Matrix, Solution};
use crate::report::Violation;
use crate::scalar::{format_scalar, Scalar};
use crate::subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplittingPart {
    /// complement of `B^i` inside `Z^i`
    Harmonic,
    /// complement of `Z^i` inside `L^i`
    Complement,
}

/// One acting element and one vector whose image can never be corrected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub acting: String,
    pub element: String,
    pub image: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NoSplittingCertificate {
    pub degree: i32,
    pub part: SplittingPart,
    pub unknowns: Vec<String>,
    /// Rows of the coefficient matrix, formatted.
    pub equations: Vec<Vec<String>>,
    pub rhs: Vec<String>,
    /// `y` with `y·M = 0` and `y·rhs ≠ 0`.
    pub farkas: Vec<String>,
    pub obstruction: Option<Obstruction>,
}

#[derive(Clone, Debug)]
pub struct EquivariantSplitting {
    pub splitting: Splitting,
    /// Degrees `i ≤ 0` where no invariant `K^i` exists; the plain complement
    /// was kept there.
    pub complement_fallback: Vec<i32>,
    /// Result of [`check_invariance`] on the returned splitting.
    pub invariance: Vec<Violation>,
}

#[derive(Clone, Debug)]
pub enum EquivariantSearch {
    Found(EquivariantSplitting),
    None(NoSplittingCertificate),
}

impl EquivariantSearch {
    pub fn found(&self) -> Option<&EquivariantSplitting> {
        match self {
            EquivariantSearch::Found(s) => Some(s),
            EquivariantSearch::None(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&NoSplittingCertificate> {
        match self {
            EquivariantSearch::Found(_) => None,
            EquivariantSearch::None(c) => Some(c),
        }
    }
}

/// Matrix of `ad(g)` from `from` into coordinates over `onto`.
fn action(a: &DgLieAlgebra, g: &Vector, from: &[Vector], onto: &[Vector]) -> Result<Matrix> {
    let mut m = Matrix::zeros(onto.len(), from.len());
    for (c, v) in from.iter().enumerate() {
        let image = a.bracket(g, v);
        let coords = subspace::coordinates(onto, &image).ok_or_else(|| {
            Error::NotSubalgebra(format!(
                "[{}, {}] = {} leaves the expected subspace",
                a.space().format_vector(g),
                a.space().format_vector(v),
                a.space().format_vector(&image)
            ))
        })?;
        for (r, x) in coords.into_iter().enumerate() {
            m.set(r, c, x);
        }
    }
    Ok(m)
}

struct Block {
    low_low: Matrix,
    low_high: Matrix,
    high_high: Matrix,
}

struct System {
    matrix: Matrix,
    rhs: Vec<Scalar>,
}

/// Stacks `A_ll X − X A_hh = sign·A_lh` over all blocks; unknown `X[u][t]`
/// sits at column `u*s + t`.
fn intertwiner_system(blocks: &[Block], r: usize, s: usize, negate: bool) -> System {
    let n = r * s;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs = Vec::new();
    for b in blocks {
        for u in 0..r {
            for t in 0..s {
                let mut row = vec![Scalar::zero(); n];
                for v in 0..r {
                    row[v * s + t] += b.low_low.get(u, v);
                }
                for q in 0..s {
                    row[u * s + q] -= b.high_high.get(q, t);
                }
                let c = b.low_high.get(u, t).clone();
                rhs.push(if negate { -c } else { c });
                rows.push(row);
            }
        }
    }
    let matrix = if rows.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(rows).expect("rectangular") };
    System { matrix, rhs }
}

fn find_obstruction(
    a: &DgLieAlgebra,
    acting: &[Vector],
    blocks: &[Block],
    high: &[Vector],
    part: SplittingPart,
) -> Option<Obstruction> {
    let sp = a.space();
    for (g, b) in acting.iter().zip(blocks) {
        for (t, ht) in high.iter().enumerate() {
            if !b.high_high.column(t).iter().all(Zero::is_zero) {
                continue;
            }
            let target = b.low_high.column(t);
            if target.iter().all(Zero::is_zero) {
                continue;
            }
            let consistent = if b.low_low.rows() == 0 {
                false
            } else {
                b.low_low.solve(&target).map(|s| s.is_consistent()).unwrap_or(false)
            };
            if consistent {
                continue;
            }
            let image = a.bracket(g, ht);
            let (gl, el, il) = (sp.derived_label(g), sp.format_vector(ht), sp.format_vector(&image));
            let detail = match part {
                SplittingPart::Harmonic => format!(
                    "every candidate {el} + (boundary) satisfies [{gl}, ·] = {il}, a nonzero boundary, so it cannot lie in an invariant H"
                ),
                SplittingPart::Complement => format!(
                    "every candidate {el} + (cocycle) has [{gl}, ·] with cocycle part {il} that no cocycle correction removes"
                ),
            };
            return Some(Obstruction { acting: gl, element: el, image: il, detail });
        }
    }
    None
}

fn certificate(
    degree: i32,
    part: SplittingPart,
    system: &System,
    farkas: Vec<Scalar>,
    r: usize,
    s: usize,
    obstruction: Option<Obstruction>,
) -> NoSplittingCertificate {
    let letter = match part {
        SplittingPart::Harmonic => "Q",
        SplittingPart::Complement => "P",
    };
    let unknowns = (0..r).flat_map(|u| (0..s).map(move |t| format!("{letter}[{u},{t}]"))).collect();
    let equations =
        (0..system.matrix.rows()).map(|i| system.matrix.row(i).iter().map(format_scalar).collect()).collect();
    NoSplittingCertificate {
        degree,
        part,
        unknowns,
        equations,
        rhs: system.rhs.iter().map(format_scalar).collect(),
        farkas: farkas.iter().map(format_scalar).collect(),
        obstruction,
    }
}

enum Step {
    Solved(Vec<Vector>),
    Failed(NoSplittingCertificate),
}

/// Invariant complement of `low` inside `low ⊕ high`: returns the adjusted
/// `high` vectors `high_t + Σ_u X[u][t] low_u`.
fn invariant_complement(
    a: &DgLieAlgebra,
    acting: &[Vector],
    low: &[Vector],
    high: &[Vector],
    degree: i32,
    part: SplittingPart,
) -> Result<Step> {
    if high.is_empty() || acting.is_empty() {
        return Ok(Step::Solved(high.to_vec()));
    }
    let mut whole: Vec<Vector> = low.to_vec();
    whole.extend(high.iter().cloned());
    let (r, s) = (low.len(), high.len());
    let mut blocks = Vec::with_capacity(acting.len());
    for g in acting {
        let full_low = action(a, g, low, low)?;
        let full_high = action(a, g, high, &whole)?;
        let mut low_high = Matrix::zeros(r, s);
        let mut high_high = Matrix::zeros(s, s);
        for t in 0..s {
            for u in 0..r {
                low_high.set(u, t, full_high.get(u, t).clone());
            }
            for q in 0..s {
                high_high.set(q, t, full_high.get(r + q, t).clone());
            }
        }
        blocks.push(Block { low_low: full_low, low_high, high_high });
    }
    if r == 0 && blocks.iter().all(|b| b.low_high.is_zero()) {
        return Ok(Step::Solved(high.to_vec()));
    }
    // H: A_ll X − X A_hh = −A_lh.  K: the same shape after replacing X by −X.
    let system = intertwiner_system(&blocks, r, s, true);
    match system.matrix.solve(&system.rhs)? {
        Solution::Consistent { particular, .. } => {
            let adjusted = (0..s)
                .map(|t| {
                    let mut v = high[t].clone();
                    for u in 0..r {
                        v.add_scaled(&low[u], &particular[u * s + t]);
                    }
                    v
                })
                .collect();
            Ok(Step::Solved(adjusted))
        }
        Solution::Inconsistent { certificate: y } => {
            let obstruction = find_obstruction(a, acting, &blocks, high, part);
            Ok(Step::Failed(certificate(degree, part, &system, y, r, s, obstruction)))
        }
    }
}

fn check_h0(a: &DgLieAlgebra, h0: &[Vector], cycles0: usize, boundaries0: &[Vector]) -> Result<()> {
    let sp = a.space();
    for g in h0 {
        g.check_in(sp)?;
        if !g.is_homogeneous_of(sp, 0) || g.is_zero() {
            return Err(Error::DegreeMismatch(format!(
                "H0 element {} is not a nonzero degree-0 vector",
                sp.format_vector(g)
            )));
        }
        if !a.d(g).is_zero() {
            return Err(Error::NotCocycle(sp.format_vector(g)));
        }
    }
    for (i, g) in h0.iter().enumerate() {
        for h in &h0[i..] {
            if !subspace::contains(h0, &a.bracket(g, h)) {
                return Err(Error::NotBracketClosed(sp.format_vector(g), sp.format_vector(h)));
            }
        }
    }
    let mut all = boundaries0.to_vec();
    all.extend(h0.iter().cloned());
    if !subspace::is_independent(&all) || all.len() != cycles0 {
        return Err(Error::NotCohomologyComplement(format!(
            "{} vector(s) given, H^0 has dimension {}",
            h0.len(),
            cycles0 - boundaries0.len()
        )));
    }
    Ok(())
}

/// Looks for a splitting with `H⁰ = span(h0)` and every `H^i`, `K^i`
/// invariant under `ad(h0)`. An empty `h0` imposes no constraint and returns
/// [`compute_splitting`].
pub fn find_equivariant_splitting(a: &DgLieAlgebra, h0: &[Vector]) -> Result<EquivariantSearch> {
    let base = compute_splitting(a);
    if h0.is_empty() {
        return Ok(EquivariantSearch::Found(EquivariantSplitting {
            splitting: base,
            complement_fallback: Vec::new(),
            invariance: Vec::new(),
        }));
    }
    let sp = a.space();
    let boundaries = |deg: i32| -> Vec<Vector> { base.complement_in_degree(deg - 1).iter().map(|k| a.d(k)).collect() };
    let harmonic_base = |deg: i32| -> Vec<Vector> {
        base.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, deg)).cloned().collect()
    };
    let b0 = boundaries(0);
    check_h0(a, h0, b0.len() + harmonic_base(0).len(), &b0)?;

    let mut harmonic = Vec::new();
    let mut complement = Vec::new();
    let mut complement_fallback = Vec::new();
    for deg in sp.support() {
        let b = boundaries(deg);
        let h = if deg == 0 {
            h0.to_vec()
        } else {
            match invariant_complement(a, h0, &b, &harmonic_base(deg), deg, SplittingPart::Harmonic)? {
                Step::Solved(h) => h,
                Step::Failed(c) => return Ok(EquivariantSearch::None(c)),
            }
        };
        let mut z = h.clone();
        z.extend(b);
        let k_base = base.complement_in_degree(deg);
        match invariant_complement(a, h0, &z, &k_base, deg, SplittingPart::Complement)? {
            Step::Solved(k) => complement.extend(k),
            Step::Failed(c) if deg > 0 => return Ok(EquivariantSearch::None(c)),
            Step::Failed(_) => {
                complement_fallback.push(deg);
                complement.extend(k_base);
            }
        }
        harmonic.extend(h);
    }
    let splitting = Splitting::from_subspaces(a, harmonic, complement)?;
    let invariance = check_invariance(&splitting, h0);
    Ok(EquivariantSearch::Found(EquivariantSplitting { splitting, complement_fallback, invariance }))
}

/// `[H0, H^i] ⊆ H^i` and `[H0, K^i] ⊆ K^i` on basis elements, every degree.
pub fn check_invariance(s: &Splitting, h0: &[Vector]) -> Vec<Violation> {
    check_invariance_where(s, h0, |_| true)
}

/// [`check_invariance`] restricted to the degrees selected by `keep`.
pub fn check_invariance_where(s: &Splitting, h0: &[Vector], keep: impl Fn(i32) -> bool) -> Vec<Violation> {
    let a = s.algebra();
    let sp = a.space();
    let mut out = Vec::new();
    for deg in sp.support().into_iter().filter(|&d| keep(d)) {
        let hs: Vec<Vector> = s.harmonic().iter().filter(|v| v.is_homogeneous_of(sp, deg)).cloned().collect();
        let ks = s.complement_in_degree(deg);
        for (name, basis) in [("H", &hs), ("K", &ks)] {
            for g in h0 {
                for v in basis.iter() {
                    let image = a.bracket(g, v);
                    if !subspace::contains(basis, &image) {
                        out.push(Violation::new(
                            format!("[H0, {name}^{deg}] ⊆ {name}^{deg}"),
                            vec![sp.derived_label(g), sp.derived_label(v)],
                            format!("bracket = {}", sp.format_vector(&image)),
                        ));
                    }
                }
            }
        }
    }
    out
}
