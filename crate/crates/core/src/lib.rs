//! Computations of the Buchstaber invariant of simplicial complexes.

pub mod complex;
pub mod error;
pub mod generators;
pub mod gf2;
pub mod invariant;
pub mod io;
pub mod oracle;
pub mod zlattice;

pub use complex::{SimplicialComplex, VertexSet};
pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector};

/// Integer matrices with arbitrary-precision entries.
pub type IntMatrix = zlattice::ZMatrix<num_bigint::BigInt>;
