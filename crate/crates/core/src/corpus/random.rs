//! Seeded generators for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{standard_form, torus_representation, Instance};
use crate::cyclic::{CyclicPairing, SymplecticRepresentation};
use crate::dgla::DgLieAlgebra;
use crate::error::Result;
use crate::graded::{GradedSpace, Vector};
use crate::linalg::Matrix;
use crate::linear_map::LinearMap;
use crate::multilinear::MultilinearMap;
use crate::scalar::{format_scalar, int, Scalar};

fn entry<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

fn is_symmetric(m: &Matrix) -> bool {
    m.transpose() == *m
}

/// An abelian `g` of dimension 1 or 2 acting on `V` of dimension 2 or 4
/// with entries in `[−3, 3]`. With `symplectic` the action preserves the
/// standard form (`ρ = −ΩS`, `S` symmetric); otherwise it does not.
pub fn random_symplectic_representation<R: Rng + ?Sized>(rng: &mut R, symplectic: bool) -> SymplecticRepresentation {
    let dim_v = if rng.gen_bool(0.5) { 2 } else { 4 };
    let omega = standard_form(dim_v);
    let first = loop {
        let m = if symplectic {
            let mut s = Matrix::zeros(dim_v, dim_v);
            for i in 0..dim_v {
                for j in i..dim_v {
                    let c = entry(rng, 3);
                    s.set(i, j, c.clone());
                    s.set(j, i, c);
                }
            }
            let mut neg_omega = Matrix::zeros(dim_v, dim_v);
            for i in 0..dim_v {
                for j in 0..dim_v {
                    neg_omega.set(i, j, -omega.get(i, j));
                }
            }
            neg_omega.mul(&s).expect("square")
        } else {
            let mut m = Matrix::zeros(dim_v, dim_v);
            for i in 0..dim_v {
                for j in 0..dim_v {
                    m.set(i, j, entry(rng, 3));
                }
            }
            m
        };
        let preserves = is_symmetric(&omega.mul(&m).expect("square"));
        if preserves == symplectic {
            break m;
        }
    };
    let mut action = vec![first.clone()];
    if rng.gen_bool(0.5) {
        let c = entry(rng, 1);
        let mut second = Matrix::zeros(dim_v, dim_v);
        for i in 0..dim_v {
            for j in 0..dim_v {
                second.set(i, j, first.get(i, j) * &c);
            }
        }
        action.push(second);
    }
    torus_representation(&action)
}

/// A DG-Lie algebra concentrated in degrees 1 and 2 (`dim ≤ 8`) with a
/// random differential `L¹ → L²` and a random symmetric bracket
/// `L¹ × L¹ → L²`. Every such choice satisfies the axioms.
pub fn random_dgla<R: Rng + ?Sized>(rng: &mut R) -> Instance {
    let m = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=4);
    let basis: Vec<(String, i32)> =
        (1..=m).map(|i| (format!("u{i}"), 1)).chain((1..=k).map(|i| (format!("w{i}"), 2))).collect();
    let space = GradedSpace::new(basis).expect("distinct labels");
    let top: Vec<usize> = (m..m + k).collect();
    let random_top = |rng: &mut R| -> Vector {
        let c: Vec<Scalar> = (0..k).map(|_| if rng.gen_bool(0.5) { entry(rng, 2) } else { int(0) }).collect();
        Vector::from_dense(&top, &c)
    };
    let mut cols: Vec<Vector> = (0..m).map(|_| random_top(rng)).collect();
    cols.extend((0..k).map(|_| Vector::zero()));
    let d = LinearMap::from_columns(&space, &space, 1, cols).expect("degrees");
    let mut br = MultilinearMap::zero(&space, &space, 2, 0);
    for i in 0..m {
        for j in i..m {
            br.set(&[i, j], random_top(rng)).expect("degrees");
        }
    }
    let algebra = DgLieAlgebra::new(space, d, br).expect("shapes");
    Instance { name: format!("random-{m}x{k}"), algebra, pairing: None }
}

/// The same algebra in a random unimodular basis adapted to the grading;
/// the pairing, if any, is carried along.
pub fn random_basis_change<R: Rng + ?Sized>(rng: &mut R, inst: &Instance) -> Result<Instance> {
    let sp = inst.algebra.space();
    let mut basis: Vec<(String, Vector)> = Vec::with_capacity(sp.dim());
    for deg in sp.support() {
        let mut idx = sp.indices_in_degree(deg);
        idx.shuffle(rng);
        for (pos, &i) in idx.iter().enumerate() {
            let mut v = Vector::basis(i);
            for &j in &idx[pos + 1..] {
                if rng.gen_bool(0.4) {
                    v.add_term(j, &entry(rng, 1));
                }
            }
            basis.push((format!("{}'", sp.label(i)), v));
        }
    }
    let (algebra, inclusion) = inst.algebra.subalgebra(&basis)?;
    let pairing = match &inst.pairing {
        Some(p) => Some(p.pullback(&inclusion)?),
        None => None,
    };
    Ok(Instance { name: format!("{}-rebased", inst.name), algebra, pairing })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbedConstant {
    Differential,
    Bracket,
    Pairing,
}

/// One structure constant: the coefficient of `e_k` in `d(e_i)`, in
/// `[e_i,e_j]`, or the pairing value `(e_i,e_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstantSlot {
    pub kind: PerturbedConstant,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct Perturbation {
    pub instance: Instance,
    pub kind: PerturbedConstant,
    /// Human-readable location, e.g. `[x,y] coefficient of z`.
    pub entry: String,
    pub delta: Scalar,
    /// A second constant change that restored the axioms broken by the
    /// first one, when [`repair_perturbation`] found one.
    pub repair: Option<String>,
}

/// Every constant allowed by the degrees, in a fixed order.
pub fn constant_slots(inst: &Instance, kind: PerturbedConstant) -> Vec<ConstantSlot> {
    let sp = inst.algebra.space();
    let n = sp.dim();
    let deg = |i: usize| sp.degree(i);
    let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j)));
    match kind {
        PerturbedConstant::Differential => (0..n)
            .flat_map(|i| (0..n).map(move |k| (i, k)))
            .filter(|&(i, k)| deg(k) == deg(i) + 1)
            .map(|(i, k)| ConstantSlot { kind, i, j: i, k })
            .collect(),
        PerturbedConstant::Bracket => pairs
            .filter(|&(i, j)| i != j || deg(i) % 2 != 0)
            .flat_map(|(i, j)| (0..n).map(move |k| (i, j, k)))
            .filter(|&(i, j, k)| deg(k) == deg(i) + deg(j))
            .map(|(i, j, k)| ConstantSlot { kind, i, j, k })
            .collect(),
        PerturbedConstant::Pairing => match &inst.pairing {
            Some(p) => pairs
                .filter(|&(i, j)| deg(i) + deg(j) == p.degree())
                .filter(|&(i, j)| i != j || deg(i) % 2 == 0)
                .map(|(i, j)| ConstantSlot { kind, i, j, k: j })
                .collect(),
            None => Vec::new(),
        },
    }
}

fn describe(sp: &GradedSpace, slot: ConstantSlot) -> String {
    let l = |i: usize| sp.label(i);
    match slot.kind {
        PerturbedConstant::Differential => format!("d({}) coefficient of {}", l(slot.i), l(slot.k)),
        PerturbedConstant::Bracket => format!("[{},{}] coefficient of {}", l(slot.i), l(slot.j), l(slot.k)),
        PerturbedConstant::Pairing => format!("({},{})", l(slot.i), l(slot.j)),
    }
}

/// `inst` with `delta` added to one constant. Pairings are kept graded
/// symmetric; nothing else is re-established.
pub fn shift_constant(inst: &Instance, slot: ConstantSlot, delta: &Scalar) -> Instance {
    let a = &inst.algebra;
    let sp = a.space();
    let ConstantSlot { kind, i, j, k } = slot;
    match kind {
        PerturbedConstant::Differential => {
            let mut cols = a.differential().columns().to_vec();
            cols[i].add_term(k, delta);
            let d = LinearMap::from_columns(sp, sp, 1, cols).expect("degrees");
            let algebra = DgLieAlgebra::new(sp.clone(), d, a.bracket_map().clone()).expect("shapes");
            Instance { name: format!("{}~d", inst.name), algebra, pairing: inst.pairing.clone() }
        }
        PerturbedConstant::Bracket => {
            let mut br = a.bracket_map().clone();
            br.accumulate(&[i, j], &Vector::basis(k).scaled(delta)).expect("degrees");
            let algebra = DgLieAlgebra::new(sp.clone(), a.differential().clone(), br).expect("shapes");
            Instance { name: format!("{}~br", inst.name), algebra, pairing: inst.pairing.clone() }
        }
        PerturbedConstant::Pairing => {
            let p = inst.pairing.as_ref().expect("pairing slots need a pairing");
            let mut table: std::collections::BTreeMap<(usize, usize), Scalar> =
                p.entries().map(|(&key, v)| (key, v.clone())).collect();
            let mirrored = crate::scalar::parity_sign((sp.degree(i) * sp.degree(j)) as i64).apply(delta.clone());
            table.insert((i, j), p.basis(i, j) + delta);
            if i != j {
                table.insert((j, i), p.basis(j, i) + mirrored);
            }
            let pairing = CyclicPairing::from_table(sp, p.degree(), table).expect("indices");
            Instance { name: format!("{}~pair", inst.name), algebra: a.clone(), pairing: Some(pairing) }
        }
    }
}

/// Adds `±1` to one structure constant allowed by the degrees.
pub fn perturb_structure_constant<R: Rng + ?Sized>(rng: &mut R, inst: &Instance) -> Perturbation {
    let delta = if rng.gen_bool(0.5) { int(1) } else { int(-1) };
    let mut kinds = vec![PerturbedConstant::Bracket, PerturbedConstant::Differential];
    if inst.pairing.is_some() {
        kinds.push(PerturbedConstant::Pairing);
    }
    loop {
        let kind = *kinds.choose(rng).expect("non-empty");
        let Some(&slot) = constant_slots(inst, kind).choose(rng) else { continue };
        return Perturbation {
            instance: shift_constant(inst, slot, &delta),
            kind,
            entry: describe(inst.algebra.space(), slot),
            delta,
            repair: None,
        };
    }
}

fn axioms_hold(inst: &Instance, kind: PerturbedConstant) -> bool {
    match kind {
        PerturbedConstant::Pairing => {
            let p = inst.pairing.as_ref().expect("pairing perturbation");
            crate::cyclic::validate_pairing(&inst.algebra, p).violations.is_empty()
        }
        _ => crate::dgla::validate_dgla(&inst.algebra).is_empty(),
    }
}

/// Tries to undo the damage of a perturbation with one more change of the
/// same kind (`±1` or `±2` on a different constant) so that the DG-Lie
/// axioms hold again, or for pairing changes so that the form is
/// invariant again. The first candidate in slot order wins. Returns the
/// perturbation unchanged when it broke nothing or when no single change
/// repairs it.
pub fn repair_perturbation(original: &Instance, pert: Perturbation) -> Perturbation {
    if axioms_hold(&pert.instance, pert.kind) {
        return pert;
    }
    let sp = original.algebra.space();
    let deltas = [int(1), int(-1), int(2), int(-2)];
    for slot in constant_slots(&pert.instance, pert.kind) {
        if describe(sp, slot) == pert.entry {
            continue;
        }
        for delta in &deltas {
            let candidate = shift_constant(&pert.instance, slot, delta);
            if axioms_hold(&candidate, pert.kind) {
                return Perturbation {
                    instance: Instance { name: format!("{}+", candidate.name), ..candidate },
                    repair: Some(format!("{} changed by {}", describe(sp, slot), format_scalar(delta))),
                    ..pert
                };
            }
        }
    }
    pert
}

impl std::fmt::Display for Perturbation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} changed by {}", self.entry, format_scalar(&self.delta))?;
        if let Some(r) = &self.repair {
            write!(f, ", then {r}")?;
        }
        Ok(())
    }
}
