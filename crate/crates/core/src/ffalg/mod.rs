//! Exact arithmetic: finite fields, truncated unramified local rings,
//! polynomials, matrices, eigenprojectors and Hensel factorization.

mod eigen;
mod field;
mod hensel;
mod local;
mod matrix;
mod poly;
mod ring;

pub use eigen::{
    char_poly_roots, embed_matrix, ensure_split, factor_degrees, field_embedding, generalized_eigenprojector,
    multiplicity, roots_with_multiplicity, split_degree, FieldEmbedding,
};
pub use field::{FieldElement, FieldSpec, GaloisField, MAX_DEGREE};
pub use hensel::hensel_factor;
pub use local::{LocalElement, LocalRingSpec, TruncatedLocalRing};
pub use matrix::{EchelonForm, Matrix, SubspaceBasis};
pub use poly::Poly;
pub use ring::{Field, LocalRing, Ring};
