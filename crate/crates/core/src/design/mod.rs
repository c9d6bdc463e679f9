//! Pair spectra and exact spherical-design tests.

mod criteria;
mod gegenbauer;
mod spectrum;

pub use criteria::{
    design_strength, even_moment, gegenbauer_sum, venkov_3design, venkov_5design, EvenMoment, Venkov3, Venkov5,
};
pub use gegenbauer::{gegenbauer, GegenbauerPoly};
pub use spectrum::{fold_antipodal, pair_spectrum, pair_spectrum_direct, PairSpectrum};
