//! A finite model of equivariant K-theory: for a finite G-set `X`,
//! `K(X,G) ⊗ Q(ζ_N)` is the space of G-invariant functions on pairs `(x, s)`
//! with `s` in the stabilizer of `x`, stored as one class function per orbit.

mod action;
mod classfn;
mod decomposition;
mod inertia;
mod kclass;
mod vistoli;
pub mod verify;

pub use action::{burnside_action, burnside_action_geometric, h_part_k, part_dims};
pub use classfn::{burnside_character, conj_cf, induce_cf, permutation_character, restrict_cf, ClassFunction};
pub use decomposition::{decomposition_reports, Decomposition, DecompositionReport};
pub use kclass::{induce_k, pullback, pullback_along, pushforward, pushforward_along, restrict_k, KClass, KSpace};
pub use inertia::{
    fixed_locus_orbit_types, inertia_pairs, inertia_summands, isomorphic_classes, isomorphic_classes_to, wild_inertia,
    InertiaReport, InertiaSummand,
};
pub use vistoli::{cyclic_piece_ranks, generator_indicator, verify_vistoli, vistoli_compare, CyclicPiece, VistoliComparison};
