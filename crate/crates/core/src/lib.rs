//! Matching complexes of simple graphs and their Buchsbaum and
//! Cohen–Macaulay properties in dimensions one and two.

pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod io;
pub mod iso;

pub use complex::{matching_complex, Face, SimplicialComplex};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Matching};
pub use iso::{canonical_form, dedup_by_iso, CanonicalForm};
