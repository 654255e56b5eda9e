//! Permutations, enumerated permutation groups, subgroup lattices, coset
//! actions and heuristic identification.

mod group;
mod identify;
mod lattice;
mod permutation;

pub use group::{generate, orbits_of, PermGroup, DEFAULT_GROUP_CAP};
pub use identify::{identify, invariant_factors, GroupLabel, Identification};
pub use lattice::{coset_action, subgroups, CosetAction, ElementSet, Subgroup, SubgroupLattice, DEFAULT_LATTICE_CAP};
pub use permutation::Permutation;
