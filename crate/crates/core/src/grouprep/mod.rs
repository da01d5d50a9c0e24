//! Finite matrix groups, their adjoint modules and cohomology, and the
//! big/adequate decision procedures.

mod adequacy;
mod cohomology;
mod group;
mod module;

pub use adequacy::*;
pub use cohomology::{cocycle_dimension, h1_dimension};
pub use group::{
    gn_multiply, nu, FiniteGroup, GlLaw, GnElement, GnGroup, GnLaw, GroupLaw, GroupOverField, MatrixLaw, Variant,
    DEFAULT_CAP,
};
pub use module::{
    ad_action, element_action, fixed_points, largest_invariant_subspace, lie_basis, spin, ModuleAction, ModuleKind,
};
