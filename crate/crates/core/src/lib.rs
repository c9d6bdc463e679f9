//! Exact construction and certification of spherical 3-designs obtained by sending
//! the minimal vectors of strongly perfect lattices through the degree-2 Gegenbauer kernel.
//!
//! Everything that is certified is computed in exact rationals at the level of inner
//! products; floating point appears only in [`embed::realize_coordinates`].

#![allow(clippy::needless_range_loop)]

pub mod design;
pub mod embed;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod report;

pub use design::{
    design_strength, even_moment, gegenbauer, gegenbauer_sum, pair_spectrum, venkov_3design, venkov_5design,
    GegenbauerPoly, PairSpectrum,
};
pub use embed::{dim_harm, embed, embedded_gram, realize_coordinates, theorem_check, EmbeddedGram, EmbeddedSpectrum};
pub use error::{Error, Result};
pub use exact::{rat, GramMatrix, Rational};
pub use lattice::{catalog, dual, enumerate_short_vectors, halve_antipodal, minimal_vectors, LatticeSpec, VectorSet};
pub use report::{code_params, reproduce_table, CodeParams, TableRow, Verdict};
