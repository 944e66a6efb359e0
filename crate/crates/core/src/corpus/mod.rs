//! Small DG-Lie algebras used as examples, fixtures and benchmarks.

mod random;
mod tensor;

pub use random::{
    constant_slots, perturb_structure_constant, random_basis_change, random_dgla, random_symplectic_representation,
    repair_perturbation, shift_constant, ConstantSlot, Perturbation, PerturbedConstant,
};
pub use tensor::{tensor_product, Cdga};

use crate::cyclic::{from_symplectic_representation, CyclicPairing, QuasiCyclicDgla, SymplecticRepresentation};
use crate::dgla::DgLieAlgebra;
use crate::error::Result;
use crate::graded::{GradedSpace, Vector};
use crate::linalg::Matrix;
use crate::linear_map::LinearMap;
use crate::multilinear::MultilinearMap;
use crate::scalar::int;

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub algebra: DgLieAlgebra,
    pub pairing: Option<CyclicPairing>,
}

impl Instance {
    pub fn quasi_cyclic(&self) -> Result<QuasiCyclicDgla> {
        let p = self.pairing.clone().unwrap_or_else(|| CyclicPairing::zero(self.algebra.space(), 0));
        QuasiCyclicDgla::classify(self.algebra.clone(), p)
    }

    fn from_quasi(name: &str, q: QuasiCyclicDgla) -> Instance {
        Instance { name: name.to_string(), algebra: q.algebra, pairing: Some(q.pairing) }
    }
}

/// Structure constants given by labels; brackets on ordered pairs are
/// completed by graded skew-symmetry.
type PairingTable<'a> = (i32, &'a [(&'a str, &'a str, i64)]);

pub(crate) struct Table<'a> {
    pub basis: &'a [(&'a str, i32)],
    pub differential: &'a [(&'a str, &'a str)],
    pub brackets: &'a [(&'a str, &'a str, &'a str)],
    pub pairing: Option<PairingTable<'a>>,
}

impl Table<'_> {
    pub fn build(&self, name: &str) -> Result<Instance> {
        let space = GradedSpace::new(self.basis.iter().map(|&(l, d)| (l, d)))?;
        let mut cols = vec![Vector::zero(); space.dim()];
        for &(src, image) in self.differential {
            cols[space.index_of(src)?] = space.parse_vector(image)?;
        }
        let d = LinearMap::from_columns(&space, &space, 1, cols)?;
        let mut br = MultilinearMap::zero(&space, &space, 2, 0);
        for &(x, y, v) in self.brackets {
            br.set(&[space.index_of(x)?, space.index_of(y)?], space.parse_vector(v)?)?;
        }
        let algebra = DgLieAlgebra::new(space.clone(), d, br)?;
        let pairing = match self.pairing {
            Some((deg, entries)) => {
                let e = entries
                    .iter()
                    .map(|&(x, y, c)| Ok(((space.index_of(x)?, space.index_of(y)?), int(c))))
                    .collect::<Result<Vec<_>>>()?;
                Some(CyclicPairing::symmetric(&space, deg, e)?)
            }
            None => None,
        };
        Ok(Instance { name: name.to_string(), algebra, pairing })
    }
}

const NOCONTRACTION_BASIS: &[(&str, i32)] =
    &[("a", 0), ("b", 0), ("x", 1), ("y", 1), ("p", 1), ("db", 1), ("z", 2), ("dp", 2)];
const NOCONTRACTION_PAIRING: &[(&str, &str, i64)] = &[("x", "y", -1), ("db", "p", -1), ("a", "z", 1), ("b", "dp", 1)];

/// Cyclic of degree 2 with no `H⁰`-invariant splitting. The bracket
/// `[a,x]` is `−db`; with `+db` the invariance `([a,x],p) = (a,[x,p])`
/// fails (see [`nocontraction_as_printed`]).
pub fn nocontraction() -> Instance {
    Table {
        basis: NOCONTRACTION_BASIS,
        differential: &[("b", "db"), ("p", "dp")],
        brackets: &[("a", "x", "-db"), ("a", "p", "y"), ("x", "x", "dp"), ("p", "x", "z"), ("b", "x", "y")],
        pairing: Some((2, NOCONTRACTION_PAIRING)),
    }
    .build("nocontraction")
    .expect("fixture")
}

/// The same data with `[a,x] = db`: a DG-Lie algebra whose form is not
/// invariant.
pub fn nocontraction_as_printed() -> Instance {
    Table {
        basis: NOCONTRACTION_BASIS,
        differential: &[("b", "db"), ("p", "dp")],
        brackets: &[("a", "x", "db"), ("a", "p", "y"), ("x", "x", "dp"), ("p", "x", "z"), ("b", "x", "y")],
        pairing: Some((2, NOCONTRACTION_PAIRING)),
    }
    .build("nocontraction-as-printed")
    .expect("fixture")
}

/// Cyclic of degree 3 with a nonzero Massey power.
pub fn noformal_dim3() -> Instance {
    Table {
        basis: &[("a", 1), ("b", 1), ("x", 2), ("db", 2)],
        differential: &[("b", "db")],
        brackets: &[("a", "a", "db"), ("a", "b", "x")],
        pairing: Some((3, &[("a", "x", 1), ("b", "db", 1)])),
    }
    .build("noformal-dim3")
    .expect("fixture")
}

pub fn paper_instances() -> Vec<Instance> {
    vec![nocontraction(), noformal_dim3()]
}

/// `sl₂` in degree 0 with basis `e, h, f`.
pub fn sl2() -> DgLieAlgebra {
    sl2_with_trace_form().algebra
}

/// `sl₂` with the trace form, quasi-cyclic of degree 0.
pub fn sl2_with_trace_form() -> Instance {
    Table {
        basis: &[("e", 0), ("h", 0), ("f", 0)],
        differential: &[],
        brackets: &[("h", "e", "2*e"), ("h", "f", "-2*f"), ("e", "f", "h")],
        pairing: Some((0, &[("e", "f", 1), ("h", "h", 2)])),
    }
    .build("sl2-trace")
    .expect("fixture")
}

fn matrix(rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect()).expect("rectangular")
}

/// Standard skew form `[[0,1],[−1,0]]` repeated along the diagonal.
pub fn standard_form(dim: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for k in (0..dim).step_by(2) {
        m.set(k, k + 1, int(1));
        m.set(k + 1, k, int(-1));
    }
    m
}

/// An abelian Lie algebra `g1, …` acting on `v1, …` by the given matrices,
/// with the standard skew form. No matrices gives `g = 0` and `dim V = 2`.
pub fn torus_representation(action: &[Matrix]) -> SymplecticRepresentation {
    let dim_v = action.first().map_or(2, Matrix::rows);
    let g = GradedSpace::new((1..=action.len()).map(|i| (format!("g{i}"), 0))).expect("distinct labels");
    SymplecticRepresentation {
        lie: DgLieAlgebra::abelian(g),
        vector_labels: (1..=dim_v).map(|i| format!("v{i}")).collect(),
        action: action.to_vec(),
        form: standard_form(dim_v),
    }
}

/// The standard representation of `sl₂` on the plane.
pub fn sl2_on_plane() -> Instance {
    let r = SymplecticRepresentation {
        lie: sl2(),
        vector_labels: vec!["v1".into(), "v2".into()],
        action: vec![matrix(&[&[0, 1], &[0, 0]]), matrix(&[&[1, 0], &[0, -1]]), matrix(&[&[0, 0], &[1, 0]])],
        form: standard_form(2),
    };
    Instance::from_quasi("sl2-plane", from_symplectic_representation(&r).expect("fixture"))
}

/// A one-dimensional torus acting on the plane with weights `1, −1`.
pub fn torus_on_plane() -> Instance {
    let r = torus_representation(&[matrix(&[&[1, 0], &[0, -1]])]);
    Instance::from_quasi("torus-plane", from_symplectic_representation(&r).expect("fixture"))
}

/// `span(1, u, du)` with `|u| = 1` and `τ(1) = 1`: the unit plus an acyclic cell.
pub fn unit_cell() -> Cdga {
    Cdga::new(&[("1", 0), ("u", 1), ("du", 2)], &[("u", "du")], &[], Some("1"), (0, &[("1", 1)])).expect("fixture")
}

/// `Λ(ε)` with `|ε| = 1` and `τ(ε) = 1`.
pub fn exterior_one() -> Cdga {
    Cdga::new(&[("1", 0), ("eps", 1)], &[], &[], Some("1"), (1, &[("eps", 1)])).expect("fixture")
}

/// A model of the cohomology of a surface with two acyclic cells, whose
/// products mix closed and exact parts: `a·b = w + dk1`, `a·k1 = dk2`,
/// `k1·k2 = w`, `τ(w) = 1`.
pub fn surface_cell() -> Cdga {
    Cdga::new(
        &[("1", 0), ("a", 1), ("b", 1), ("k1", 1), ("k2", 1), ("w", 2), ("dk1", 2), ("dk2", 2)],
        &[("k1", "dk1"), ("k2", "dk2")],
        &[("a", "b", "w + dk1"), ("a", "k1", "dk2"), ("k1", "k2", "w")],
        Some("1"),
        (2, &[("w", 1)]),
    )
    .expect("fixture")
}

fn tensor(name: &str, g: &Instance, a: &Cdga) -> Instance {
    let mut inst = tensor_product(g, a).expect("fixture");
    inst.name = name.to_string();
    inst
}

/// torus-plane ⊗ unit-cell: quasi-cyclic of degree 2, degenerate on `L`.
pub fn torus_tensor_cell() -> Instance {
    tensor("torus-plane-cell", &torus_on_plane(), &unit_cell())
}

/// `sl₂ ⊗ span(1, u, du)` with the trace form: degree 0.
pub fn sl2_tensor_cell() -> Instance {
    tensor("sl2-cell", &sl2_with_trace_form(), &unit_cell())
}

/// `sl₂ ⊗ Λ(ε)`: degree 1.
pub fn sl2_exterior() -> Instance {
    tensor("sl2-exterior", &sl2_with_trace_form(), &exterior_one())
}

/// `sl₂ ⊗ surface-cell`: degree 2 with nonzero `ι₂` and `f₄`.
pub fn sl2_surface() -> Instance {
    tensor("sl2-surface", &sl2_with_trace_form(), &surface_cell())
}

/// Every bundled instance with a pairing.
pub fn quasi_cyclic_instances() -> Vec<Instance> {
    let mut v = paper_instances();
    v.extend(formality_instances());
    v
}

/// Bundled instances of degree at most 2 that satisfy the hypotheses of
/// the formality theorem.
pub fn formality_instances() -> Vec<Instance> {
    vec![
        sl2_with_trace_form(),
        sl2_tensor_cell(),
        sl2_exterior(),
        sl2_on_plane(),
        torus_on_plane(),
        torus_tensor_cell(),
        sl2_surface(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::{cohomology, compute_splitting, validate_dgla};

    #[test]
    fn fixtures_are_valid() {
        for inst in quasi_cyclic_instances() {
            assert!(validate_dgla(&inst.algebra).is_empty(), "{}", inst.name);
            let q = inst.quasi_cyclic().unwrap();
            assert!(q.is_quasi_cyclic(), "{}: {:?}", inst.name, q.report.violations);
        }
    }

    #[test]
    fn printed_sign_breaks_only_invariance() {
        let inst = nocontraction_as_printed();
        assert!(validate_dgla(&inst.algebra).is_empty());
        let q = inst.quasi_cyclic().unwrap();
        assert!(!q.report.violations.is_empty());
        for v in &q.report.violations {
            assert_eq!(v.identity, "cyclicity");
            let mut w = v.witness.clone();
            w.sort();
            assert_eq!(w, ["a", "p", "x"]);
        }
    }

    #[test]
    fn surface_cell_dimensions() {
        let inst = sl2_surface();
        assert_eq!(inst.algebra.dim(), 24);
        let s = compute_splitting(&inst.algebra);
        let c = cohomology(&inst.algebra, &s);
        assert_eq!(c.dims, std::collections::BTreeMap::from([(0, 3), (1, 6), (2, 3)]));
        let q = inst.quasi_cyclic().unwrap();
        assert!(q.is_quasi_cyclic() && !q.flags().is_cyclic());
    }

    #[test]
    fn cell_tensor_is_only_quasi_cyclic() {
        let q = torus_tensor_cell().quasi_cyclic().unwrap();
        assert!(q.is_quasi_cyclic());
        assert!(!q.flags().is_cyclic());
    }
}
