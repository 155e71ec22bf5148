//! The double covers `S̃ₙ^±` and `Ãₙ` as pairs `(ε, σ)` multiplied through a
//! Clifford-lift cocycle, with Sylow 2-subgroups, centers, conjugacy classes
//! and small-group isomorphism tests.

mod cover;
mod iso;
mod perm;
mod presentation;
mod sylow;
mod table;

pub use cover::{CoverElem, CoverGroup, CoverSpec, CoverVariant, MAX_COVER_DEGREE};
pub use iso::{cyclic_group, iso_small, isomorphic, quaternion_group, QuatElem, ISO_SMALL_BOUND};
pub use perm::{factorial_two_valuation, Permutation};
pub use presentation::{
    check_relations, projects_to, relations, verify_presentation, verify_spin_representation,
    GroupModel, Letter, OrderMethod, Relation, RelationCheck, RelationReport, CLOSURE_MAX_N,
    PRESENTATION_MAX_N,
};
pub use sylow::{
    alt_cover_subgroup, full_cover, in_alt_cover, preimage_subgroup, sylow2_alt_cover,
    sylow2_cover, sylow2_sym_generators, DyadicProfile,
};
pub use table::{FiniteGroupTable, DEFAULT_SIZE_BOUND};
