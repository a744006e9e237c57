//! Combinatorial models of omnioriented toric manifolds.
//!
//! A toric manifold of real dimension `2n` is recorded by its quotient, a
//! simple `n`-polytope, together with a dicharacteristic assigning a
//! primitive integer vector to every facet. This crate builds the standard
//! families, performs connected sums and face truncations, transforms and
//! compares dicharacteristics, and computes the face ring presentation with
//! its graded ranks and total Chern class.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod dichar;
pub mod equiv;
pub mod error;
pub mod face_ring;
pub mod facets;
pub mod families;
pub mod intmat;
pub mod lattice;
pub mod polytope;
pub mod surgery;

pub use dichar::{
    pairs_equivalent, CharacteristicPair, DicharReport, Dicharacteristic, KernelBasis, LatticeMap, PairWitness,
};
pub use equiv::{for_each_equivalence, is_equivalent, FacetBijection};
pub use error::{Error, Result};
pub use face_ring::{betti_check, total_chern, BettiReport, GradedClass, GradedPresentation, Monomial};
pub use facets::{FacetSet, MAX_FACETS};
pub use families::{build, representative, CpVariant, FamilySpec, Summand};
pub use lattice::{Face, FaceLattice};
pub use polytope::{CountVectors, FacetLabel, SimplePolytope, ValidationReport};
pub use surgery::{
    apply_pruning_sequence, connected_sum, dichar_connected_sum, prune, pruning_sequence_for, ConnSumSpec, PruneSpec,
};
