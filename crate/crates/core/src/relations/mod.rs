//! Structural identities as executable checks: biorthogonality, polynomial
//! vectors, and nearest neighbour recurrences.

pub mod biorth;
pub mod nnr;
pub mod vector;

pub use biorth::{
    biorth, biorth_matrix, biorth_with, Biorth, BiorthCase, BiorthMatrix, ChainPattern,
};
pub use nnr::{
    expand_type2, nnr_type1, nnr_type2, nnr_vector, Axis, Expansion, NnrReport, Variant,
};
pub use vector::{assemble_type1_vectors, assemble_type2_vector, Mopv, TypeIMopv, ZeroPattern};
