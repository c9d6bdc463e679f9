use super::enumerate::enumerate_with_norms;
use super::files::parse_gram;
use super::vectors::VectorSet;
use crate::error::{Error, Result};
use crate::exact::{rat, GramMatrix, Rational};

/// A lattice given by its Gram matrix, with optional known shell data to cross-check against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub name: String,
    pub gram: GramMatrix,
    pub expected_kissing: Option<usize>,
    pub expected_min_norm: Option<Rational>,
}

impl LatticeSpec {
    /// Certifies positive definiteness before accepting the Gram matrix.
    pub fn new(name: impl Into<String>, gram: GramMatrix) -> Result<Self> {
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(LatticeSpec {
            name: name.into(),
            gram,
            expected_kissing: None,
            expected_min_norm: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.dim()
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub gram_file: Option<&'static str>,
    pub kissing: usize,
    pub min_norm: (i64, i64),
}

macro_rules! data {
    ($file:literal) => {
        Some(include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/lattices/", $file)))
    };
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "A2", description: "hexagonal root lattice", gram_file: data!("a2.gram"), kissing: 6, min_norm: (2, 1) },
    CatalogEntry { name: "D4", description: "root lattice D4", gram_file: data!("d4.gram"), kissing: 24, min_norm: (2, 1) },
    CatalogEntry { name: "E6", description: "root lattice E6", gram_file: data!("e6.gram"), kissing: 72, min_norm: (2, 1) },
    CatalogEntry { name: "E6dual", description: "dual of E6", gram_file: data!("e6dual.gram"), kissing: 54, min_norm: (4, 3) },
    CatalogEntry { name: "E7", description: "root lattice E7", gram_file: data!("e7.gram"), kissing: 126, min_norm: (2, 1) },
    CatalogEntry { name: "E7dual", description: "dual of E7", gram_file: data!("e7dual.gram"), kissing: 56, min_norm: (3, 2) },
    CatalogEntry { name: "E8", description: "root lattice E8", gram_file: data!("e8.gram"), kissing: 240, min_norm: (2, 1) },
    CatalogEntry { name: "K10", description: "Coxeter-Todd sublattice K10", gram_file: data!("k10.gram"), kissing: 270, min_norm: (4, 1) },
    CatalogEntry { name: "K10dual", description: "dual of K10", gram_file: data!("k10dual.gram"), kissing: 240, min_norm: (1, 1) },
    CatalogEntry { name: "CT12", description: "Coxeter-Todd lattice K12", gram_file: data!("ct12.gram"), kissing: 756, min_norm: (4, 1) },
    CatalogEntry { name: "BW16", description: "Barnes-Wall lattice", gram_file: data!("bw16.gram"), kissing: 4320, min_norm: (4, 1) },
    CatalogEntry { name: "Leech", description: "Leech lattice", gram_file: data!("leech.gram"), kissing: 196560, min_norm: (4, 1) },
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

/// Looks up a built-in lattice (case-insensitive; `#` is accepted for `dual`).
pub fn catalog(name: &str) -> Result<LatticeSpec> {
    let key = name.replace('#', "dual").to_ascii_lowercase();
    let entry = CATALOG
        .iter()
        .find(|e| e.name.to_ascii_lowercase() == key)
        .ok_or_else(|| Error::UnknownLattice {
            name: name.to_string(),
            available: catalog_names().join(", "),
        })?;
    let text = entry.gram_file.ok_or_else(|| Error::DataRequired(entry.name.to_string()))?;
    let mut spec = LatticeSpec::new(entry.name, parse_gram(text)?)?;
    spec.expected_kissing = Some(entry.kissing);
    spec.expected_min_norm = Some(rat(entry.min_norm.0, entry.min_norm.1));
    Ok(spec)
}

/// The dual lattice: same name with a `dual` suffix, Gram matrix inverted.
pub fn dual(spec: &LatticeSpec) -> Result<LatticeSpec> {
    let name = match spec.name.strip_suffix("dual") {
        Some(primal) => primal.to_string(),
        None => format!("{}dual", spec.name),
    };
    LatticeSpec::new(name, spec.gram.invert()?)
}

/// All vectors of minimal nonzero norm. Enumerates up to the smallest diagonal entry,
/// which is an upper bound for the minimum, then keeps the shortest shell.
pub fn minimal_vectors(spec: &LatticeSpec) -> Result<VectorSet> {
    let n = spec.rank();
    let bound = (0..n)
        .map(|i| spec.gram.get(i, i))
        .min()
        .cloned()
        .ok_or_else(|| Error::Invalid("empty gram".into()))?;
    let found = enumerate_with_norms(&spec.gram, &bound)?;
    let shortest = *found.scaled_norms.iter().min().ok_or(Error::NotPositiveDefinite)?;
    let mut coords = Vec::new();
    for (v, &q) in found.vectors().zip(&found.scaled_norms) {
        if q == shortest {
            coords.extend_from_slice(v);
        }
    }
    let min_norm = Rational::new(shortest.into(), found.norm_scale.clone());
    let set = VectorSet::from_trusted(spec.gram.clone(), min_norm.clone(), coords);
    if let Some(expected) = spec.expected_kissing {
        if set.len() != expected {
            return Err(Error::KissingMismatch {
                lattice: spec.name.clone(),
                found: set.len(),
                expected,
            });
        }
    }
    if let Some(expected) = &spec.expected_min_norm {
        if &min_norm != expected {
            return Err(Error::Invalid(format!(
                "{}: minimal norm {min_norm}, catalog expects {expected}",
                spec.name
            )));
        }
    }
    Ok(set)
}
