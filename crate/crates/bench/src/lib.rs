//! Fixtures shared by the criterion benches.

use lformal_core::corpus::{self, Instance};
use lformal_core::{compute_splitting, QuasiCyclicDgla, Splitting};

pub struct Fixture {
    pub instance: Instance,
    pub splitting: Splitting,
    pub quasi: QuasiCyclicDgla,
}

impl Fixture {
    pub fn new(instance: Instance) -> Self {
        let splitting = compute_splitting(&instance.algebra);
        let quasi = instance.quasi_cyclic().expect("bench fixtures carry a pairing");
        Fixture { instance, splitting, quasi }
    }

    pub fn name(&self) -> &str {
        &self.instance.name
    }
}

/// A small non-formal example, a mid-sized formal one and the largest corpus algebra.
pub fn fixtures() -> Vec<Fixture> {
    [corpus::nocontraction(), corpus::sl2_on_plane(), corpus::sl2_surface()].into_iter().map(Fixture::new).collect()
}
