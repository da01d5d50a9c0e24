//! Weyl group double cosets, the polynomials `P_j`, and eigenvalues of the
//! Hecke operators `V^j` on parahoric invariants.

mod combinat;
mod hecke;
mod iwahori;
mod pj;

pub use combinat::{
    binomial, compositions, coset_to_refinement, inverse, is_minimal, is_permutation, length,
    minimal_double_coset_reps, partitions, refinement_to_rep, refinements, subsets, Composition, DoubleCosetRep,
    Refinement, TwoPartComposition,
};
pub use hecke::{
    apply_projector, eigenline_table, ramified_block_split, residual_refinement, spherical_projector, BlockSplit,
    EigenLine, EigenLineTable, HeckeScenario, LineOutcome, ProjectionResult, ProjectorFactor, SphericalProjector,
};
pub use iwahori::{build_iwahori_model, IwahoriModel};
pub use pj::{elementary_symmetric, pj_from_roots, pj_integer, pj_polynomial, PjFormula, PjMode};
