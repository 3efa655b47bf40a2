//! Distance spectra of graph complements: graphs, eigensolvers, extremal
//! families, equitable quotients and exhaustive verification.

pub mod families;
pub mod graph;
pub mod quotients;
pub mod real;
pub mod spectra;
pub mod verify;

pub use families::{Family, FamilyError, FamilyId, FamilyParams};
pub use graph::{CanonicalForm, DistanceMatrix, Graph, GraphError};
pub use real::Real;
pub use spectra::{IntMatrix, IntPolynomial, Spectrum, SymMatrix};
