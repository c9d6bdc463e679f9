use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{GramMatrix, Rational};

/// A finite set of lattice vectors of a common norm, in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSet {
    rank: usize,
    gram: GramMatrix,
    min_norm: Rational,
    coords: Vec<i64>,
}

impl VectorSet {
    /// Validates that every vector has norm `min_norm` and that there are no duplicates.
    pub fn new(gram: GramMatrix, min_norm: Rational, vectors: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.dim();
        let mut seen = HashSet::with_capacity(vectors.len());
        let mut coords = Vec::with_capacity(vectors.len() * rank);
        for v in &vectors {
            if v.len() != rank {
                return Err(Error::Invalid(format!("vector {v:?} has {} coordinates, rank is {rank}", v.len())));
            }
            if gram.inner(v, v) != min_norm {
                return Err(Error::Invalid(format!("vector {v:?} does not have norm {min_norm}")));
            }
            if !seen.insert(v.as_slice()) {
                return Err(Error::Invalid(format!("duplicate vector {v:?}")));
            }
            coords.extend_from_slice(v);
        }
        Ok(VectorSet {
            rank,
            gram,
            min_norm,
            coords,
        })
    }

    /// Skips validation; callers guarantee the norm and uniqueness invariants.
    pub(crate) fn from_trusted(gram: GramMatrix, min_norm: Rational, coords: Vec<i64>) -> Self {
        VectorSet {
            rank: gram.dim(),
            gram,
            min_norm,
            coords,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn min_norm(&self) -> &Rational {
        &self.min_norm
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.rank).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> &[i64] {
        &self.coords[i * self.rank..(i + 1) * self.rank]
    }

    pub fn vectors(&self) -> std::slice::ChunksExact<'_, i64> {
        self.coords.chunks_exact(self.rank)
    }

    /// The first vector whose negation is missing, if any.
    pub fn unpaired(&self) -> Option<&[i64]> {
        let set: HashSet<&[i64]> = self.vectors().collect();
        let mut neg = vec![0i64; self.rank];
        self.vectors().find(|v| {
            for (n, x) in neg.iter_mut().zip(v.iter()) {
                *n = -x;
            }
            !set.contains(neg.as_slice())
        })
    }

    pub fn is_antipodal(&self) -> bool {
        self.unpaired().is_none()
    }

    /// Whether the set contains some pair `{v, −v}`.
    pub fn has_antipodal_pair(&self) -> bool {
        let set: HashSet<&[i64]> = self.vectors().collect();
        self.vectors().any(|v| {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            set.contains(neg.as_slice())
        })
    }

    /// `X ∪ −X`, sorted.
    pub fn with_negatives(&self) -> VectorSet {
        let mut all: Vec<Vec<i64>> = self.vectors().map(<[i64]>::to_vec).collect();
        all.extend(self.vectors().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        all.sort_unstable();
        all.dedup();
        VectorSet::from_trusted(self.gram.clone(), self.min_norm.clone(), all.concat())
    }

    /// Copy with vectors in lexicographic order.
    pub fn sorted(&self) -> VectorSet {
        let mut all: Vec<&[i64]> = self.vectors().collect();
        all.sort_unstable();
        VectorSet::from_trusted(self.gram.clone(), self.min_norm.clone(), all.concat())
    }
}

fn leading_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Keeps the member of each `{v, −v}` whose first nonzero coordinate is positive.
pub fn halve_antipodal(x: &VectorSet) -> Result<VectorSet> {
    if let Some(v) = x.unpaired() {
        return Err(Error::NotAntipodal(v.to_vec()));
    }
    let coords: Vec<i64> = x
        .vectors()
        .filter(|v| leading_positive(v))
        .flatten()
        .copied()
        .collect();
    Ok(VectorSet::from_trusted(x.gram.clone(), x.min_norm.clone(), coords))
}

/// Picks a sign for each antipodal pair from a seeded stream. Order follows the canonical halving.
pub fn halve_antipodal_seeded(x: &VectorSet, seed: u64) -> Result<VectorSet> {
    let canonical = halve_antipodal(x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(canonical.coords.len());
    for v in canonical.vectors() {
        if rng.gen::<bool>() {
            coords.extend_from_slice(v);
        } else {
            coords.extend(v.iter().map(|x| -x));
        }
    }
    Ok(VectorSet::from_trusted(x.gram.clone(), x.min_norm.clone(), coords))
}
