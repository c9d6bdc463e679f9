//! Lattice catalog, short-vector enumeration and minimal-vector sets.

mod catalog;
mod enumerate;
pub mod files;
mod vectors;

pub use catalog::{catalog, catalog_names, dual, minimal_vectors, CatalogEntry, LatticeSpec, CATALOG};
pub use enumerate::{enumerate_short_vectors, enumerate_with_norms, size_reduce, ShortVectors};
pub use vectors::{halve_antipodal, halve_antipodal_seeded, VectorSet};
