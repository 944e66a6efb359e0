//! Cohomology with its induced bracket `{ξ,η} = π[ι₁ξ, ι₁η]`.

use std::collections::BTreeMap;

use super::{DgLieAlgebra, Splitting};
use crate::graded::{GradedSpace, Vector};
use crate::multilinear::MultilinearMap;
use crate::report::Violation;

#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    /// Dimension of `H^i` for every degree where it is nonzero.
    pub dims: BTreeMap<i32, usize>,
    /// Cocycle representatives in `L`; entry `t` represents basis element `t`
    /// of [`CohomologyPresentation::algebra`].
    pub representatives: Vec<Vector>,
    /// `H*(L)` as a graded Lie algebra with zero differential.
    pub algebra: DgLieAlgebra,
    /// Jacobi failures of the induced bracket; always empty for a valid input.
    pub jacobi_violations: Vec<Violation>,
}

impl CohomologyPresentation {
    pub fn space(&self) -> &GradedSpace {
        self.algebra.space()
    }

    pub fn bracket(&self) -> &MultilinearMap {
        self.algebra.bracket_map()
    }

    pub fn total_dim(&self) -> usize {
        self.representatives.len()
    }
}

pub fn cohomology(a: &DgLieAlgebra, s: &Splitting) -> CohomologyPresentation {
    let hs = s.cohomology_space().clone();
    let mut br = MultilinearMap::zero(&hs, &hs, 2, 0);
    for key in br.canonical_domain_tuples() {
        let x = s.iota().column(key[0]);
        let y = s.iota().column(key[1]);
        let v = s.pi().apply(&a.bracket(x, y));
        br.set(&key, v).expect("π of a bracket of cocycles has the right degree");
    }
    let mut dims = BTreeMap::new();
    for &d in hs.degrees() {
        *dims.entry(d).or_insert(0) += 1;
    }
    let algebra =
        DgLieAlgebra::new(hs.clone(), crate::linear_map::LinearMap::zero(&hs, &hs, 1), br).expect("shapes agree");
    let jacobi_violations = super::validate_dgla(&algebra);
    CohomologyPresentation { dims, representatives: s.harmonic().to_vec(), algebra, jacobi_violations }
}
