//! Exact arithmetic of finite abelian groups.
//!
//! Groups are kept in canonical primary form, so `==` is isomorphism.
//! Presentations are turned into groups through the Smith normal form of
//! their relation matrix.

mod group;
mod hom;
mod matrix;
mod presentation;
pub mod primes;
mod subgroup;

pub use group::{
    dual_finite, groups_of_order, hom_group, is_isomorphic, p_groups_of_order, power_and_socle,
    CyclicFactor, FiniteAbelianGroup, GroupElement, ELEMENT_LIMIT,
};
pub use hom::Homomorphism;
pub use matrix::{smith_normal_form, IntegerMatrix, SmithDecomposition};
pub use presentation::{from_relations, present, Presentation};
pub use subgroup::{
    quotient, quotient_by_counting, quotient_presentation, structure_from_orders,
    subgroups_isomorphic_to, Subgroup,
};
