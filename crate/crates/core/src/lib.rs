//! Exact computations around adequate and big subgroups of `GL_n(k)`,
//! parahoric Hecke bookkeeping, and level-raising matrix pairs.

pub mod corpus;
pub mod error;
pub mod ffalg;
pub mod grouprep;
pub mod io;
pub mod levelmod;
pub mod weylhecke;

pub use error::{Error, Result};

pub use corpus::{appendix_corpus, builtin, builtin_corpus};
pub use ffalg::{FieldElement, FieldSpec, GaloisField, LocalElement, LocalRingSpec, Matrix, Poly, TruncatedLocalRing};
pub use grouprep::{AdequacyReport, Mode, Variant};
pub use io::{BuiltGroup, CorpusEntry, GroupInput, ScenarioInput};
pub use levelmod::{CommutationPair, NilpotentType};
pub use weylhecke::{Composition, EigenLineTable, HeckeScenario, SphericalProjector, TwoPartComposition};
