//! Exact computations in the rational Burnside algebra of a finite group and
//! in the finite-G-set model of rational equivariant K-theory.
//!
//! The layers build on each other:
//!
//! * [`group`], [`subgroup`], [`gset`]: permutation groups, subgroup classes,
//!   double cosets and G-sets.
//! * [`burnside`]: the algebra `B(G) ⊗ Q`, its table of marks, induction and
//!   restriction, and Conlon's recursive idempotents.
//! * [`cyclotomic`]: exact arithmetic in `Q(ζ_n)`.
//! * [`equivk`]: class functions, K-classes on finite G-sets, the Burnside
//!   action, H-part decomposition, and wild inertia.

pub mod error;
pub mod families;
pub mod group;
pub mod gset;
pub mod perm;
pub mod rational;
pub mod subgroup;
pub mod cyclotomic;
pub mod burnside;
pub mod report;
pub mod equivk;

pub use error::{Error, Result};
