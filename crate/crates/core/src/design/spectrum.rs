use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exact::Rational;
use crate::lattice::{halve_antipodal, VectorSet};

/// Multiset of normalized inner products over all ordered pairs of a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpectrum {
    /// Sphere dimension; the points live in `R^(d+1)`.
    pub d: usize,
    /// Number of points `N`; counts sum to `N²`.
    pub size: u64,
    /// Whether the underlying set is closed under negation.
    pub antipodal: bool,
    pub entries: BTreeMap<Rational, u64>,
}

impl PairSpectrum {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn count(&self, s: &Rational) -> u64 {
        self.entries.get(s).copied().unwrap_or(0)
    }

    /// Entries sorted by value, largest first.
    pub fn descending(&self) -> impl Iterator<Item = (&Rational, u64)> {
        self.entries.iter().rev().map(|(s, &c)| (s, c))
    }

    /// `(1/N²) Σ count(s)·s^p`.
    pub fn moment(&self, power: u32) -> Rational {
        let mut acc = Rational::zero();
        for (s, &c) in &self.entries {
            acc += num_traits::pow(s.clone(), power as usize) * Rational::from_integer(c.into());
        }
        let n = Rational::from_integer(self.size.into());
        acc / (&n * &n)
    }

    /// `[numerator, denominator, count]` triples, largest value first.
    pub fn to_json(&self) -> serde_json::Value {
        let big = |x: &num_bigint::BigInt| match x.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(x.to_string()),
        };
        serde_json::Value::Array(
            self.descending()
                .map(|(s, c)| serde_json::json!([big(s.numer()), big(s.denom()), c]))
                .collect(),
        )
    }

    /// Structural checks: total `N²`, at least `N` self-pairs, values in `[-1, 1]`,
    /// and sign symmetry when antipodal.
    pub fn is_consistent(&self) -> bool {
        let one = Rational::one();
        self.total() == self.size * self.size
            && self.count(&one) >= self.size
            && self.entries.keys().all(|s| s.abs() <= one)
            && (!self.antipodal || self.entries.iter().all(|(s, &c)| self.count(&-s) == c))
    }
}

/// Histogram of unnormalized integer dot products, indexed by `dot + offset`.
struct Histogram {
    offset: i64,
    dense: Vec<u64>,
    sparse: HashMap<i64, u64>,
}

const DENSE_LIMIT: i64 = 1 << 20;

impl Histogram {
    fn new(max_abs: i64) -> Self {
        let dense = if max_abs <= DENSE_LIMIT {
            vec![0; (2 * max_abs + 1) as usize]
        } else {
            Vec::new()
        };
        Histogram {
            offset: max_abs,
            dense,
            sparse: HashMap::new(),
        }
    }

    fn add(&mut self, dot: i64, count: u64) {
        if self.dense.is_empty() {
            *self.sparse.entry(dot).or_default() += count;
        } else {
            self.dense[(dot + self.offset) as usize] += count;
        }
    }

    fn merge(mut self, other: Histogram) -> Histogram {
        for (a, b) in self.dense.iter_mut().zip(other.dense) {
            *a += b;
        }
        for (k, v) in other.sparse {
            *self.sparse.entry(k).or_default() += v;
        }
        self
    }

    fn into_counts(self) -> BTreeMap<i64, u64> {
        let offset = self.offset;
        let mut out: BTreeMap<i64, u64> = self.sparse.into_iter().filter(|&(_, c)| c > 0).collect();
        for (i, c) in self.dense.into_iter().enumerate() {
            if c > 0 {
                out.insert(i as i64 - offset, c);
            }
        }
        out
    }
}

/// Integer form of a vector set: `coords[i] · gram_int · coords[j] = scale · (vᵢᵀ G vⱼ)`.
struct IntegerSet {
    rank: usize,
    coords: Vec<i64>,
    images: Vec<i64>,
    norm: i64,
}

impl IntegerSet {
    fn new(x: &VectorSet) -> Option<Self> {
        let (scale, gram) = x.gram().integral_scaling().ok()?;
        let n = x.rank();
        let norm = (x.min_norm() * Rational::from_integer(scale)).to_integer().to_i64()?;
        let mut images = Vec::with_capacity(x.len() * n);
        for v in x.vectors() {
            for i in 0..n {
                let mut acc: i64 = 0;
                for j in 0..n {
                    acc = acc.checked_add(gram[i * n + j].checked_mul(v[j])?)?;
                }
                images.push(acc);
            }
        }
        Some(IntegerSet {
            rank: n,
            coords: x.vectors().flatten().copied().collect(),
            images,
            norm,
        })
    }

    fn len(&self) -> usize {
        self.coords.len() / self.rank
    }

    /// Counts dot products over ordered pairs `(i, j)` with `i, j` in the set.
    fn histogram(&self) -> Histogram {
        let n = self.rank;
        let lanes = n.div_ceil(8) * 8;
        let max_c = self.coords.iter().map(|x| x.abs()).max().unwrap_or(0);
        let max_w = self.images.iter().map(|x| x.abs()).max().unwrap_or(0);
        let fits = max_c <= i16::MAX as i64
            && max_w <= i16::MAX as i64
            && (max_c as i128) * (max_w as i128) * (lanes as i128) < i32::MAX as i128;
        macro_rules! dispatch {
            ($($l:literal)*) => {
                match lanes {
                    $($l if fits => return self.histogram_packed::<$l>(true),)*
                    _ => {}
                }
            };
        }
        dispatch!(8 16 24 32 40 48 56 64);
        self.histogram_wide()
    }

    fn pack<const L: usize>(&self, flat: &[i64]) -> Vec<[i16; L]> {
        flat.chunks_exact(self.rank)
            .map(|v| {
                let mut row = [0i16; L];
                for (r, &x) in row.iter_mut().zip(v) {
                    *r = x as i16;
                }
                row
            })
            .collect()
    }

    /// Column tiles of the images, laid out `[tile][lane][column]` and zero padded.
    fn tiles<const L: usize>(&self) -> Vec<i16> {
        let m = self.len();
        let ntiles = m.div_ceil(TILE);
        let mut out = vec![0i16; ntiles * L * TILE];
        for (j, w) in self.images.chunks_exact(self.rank).enumerate() {
            let (t, jj) = (j / TILE, j % TILE);
            for (l, &x) in w.iter().enumerate() {
                out[t * L * TILE + l * TILE + jj] = x as i16;
            }
        }
        out
    }

    /// Upper-triangle pass: each row against column tiles, `i16` lanes when the partial sums
    /// provably fit, `i32` otherwise. Off-diagonal pairs count twice.
    fn histogram_packed<const L: usize>(&self, allow_narrow: bool) -> Histogram {
        let u = self.pack::<L>(&self.coords);
        let tiles = self.tiles::<L>();
        let m = u.len();
        let max_row = self.coords.chunks_exact(self.rank).map(|v| v.iter().map(|x| x.abs()).sum::<i64>()).max().unwrap_or(0);
        let max_w = self.images.iter().map(|x| x.abs()).max().unwrap_or(0);
        let narrow = allow_narrow && max_row * max_w <= i16::MAX as i64;
        let ctx = TileCtx { u: &u, tiles: &tiles, m, offset: self.norm, narrow };
        let starts: Vec<usize> = (0..m).step_by(ROW_BLOCK).collect();
        let mut hist = starts
            .into_par_iter()
            .fold(|| Histogram::new(self.norm), |mut hist, start| {
                let width = (2 * self.norm + 1) as usize;
                let mut bins = vec![0u64; 4 * width];
                ctx.block(start, &mut bins);
                for lane in 0..4 {
                    for (idx, &c) in bins[lane * width..(lane + 1) * width].iter().enumerate() {
                        if c > 0 {
                            hist.add(idx as i64 - self.norm, 2 * c);
                        }
                    }
                }
                hist
            })
            .reduce(|| Histogram::new(self.norm), Histogram::merge);
        hist.add(self.norm, m as u64);
        hist
    }

    fn histogram_wide(&self) -> Histogram {
        let n = self.rank;
        let m = self.len();
        let max_abs = self.norm;
        let mut hist = (0..m)
            .into_par_iter()
            .fold(
                || Histogram::new(max_abs),
                |mut hist, i| {
                    let a = &self.coords[i * n..(i + 1) * n];
                    for j in i + 1..m {
                        let b = &self.images[j * n..(j + 1) * n];
                        let dot: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
                        hist.add(dot as i64, 2);
                    }
                    hist
                },
            )
            .reduce(|| Histogram::new(max_abs), Histogram::merge);
        hist.add(self.norm, m as u64);
        hist
    }
}

const TILE: usize = 64;
const ROW_BLOCK: usize = 32;

struct TileCtx<'a, const L: usize> {
    u: &'a [[i16; L]],
    tiles: &'a [i16],
    m: usize,
    offset: i64,
    narrow: bool,
}

impl<const L: usize> TileCtx<'_, L> {
    fn block(&self, start: usize, bins: &mut [u64]) {
        #[cfg(target_arch = "x86_64")]
        {
            if std::is_x86_feature_detected!("avx2") {
                // SAFETY: the CPU supports AVX2, checked just above.
                return unsafe { self.block_avx2(start, bins) };
            }
        }
        self.block_generic(start, bins)
    }

    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx2")]
    unsafe fn block_avx2(&self, start: usize, bins: &mut [u64]) {
        self.block_generic(start, bins)
    }

    #[inline(always)]
    fn block_generic(&self, start: usize, bins: &mut [u64]) {
        let end = (start + ROW_BLOCK).min(self.m);
        let width = (2 * self.offset + 1) as usize;
        let first_tile = start / TILE;
        let ntiles = self.m.div_ceil(TILE);
        for t in first_tile..ntiles {
            let tile = &self.tiles[t * L * TILE..(t + 1) * L * TILE];
            let base = t * TILE;
            let hi = TILE.min(self.m - base);
            for i in start..end {
                let lo = (i + 1).saturating_sub(base);
                if lo >= hi {
                    continue;
                }
                let a = &self.u[i];
                if self.narrow {
                    let mut acc16 = [0i16; TILE];
                    for l in 0..L {
                        let x = a[l];
                        let col: &[i16; TILE] = tile[l * TILE..(l + 1) * TILE].try_into().unwrap();
                        for jj in 0..TILE {
                            acc16[jj] = acc16[jj].wrapping_add(x.wrapping_mul(col[jj]));
                        }
                    }
                    for (jj, &dot) in acc16[lo..hi].iter().enumerate() {
                        bins[(jj & 3) * width + (dot as i64 + self.offset) as usize] += 1;
                    }
                } else {
                    let mut acc32 = [0i32; TILE];
                    for l in 0..L {
                        let x = a[l] as i32;
                        let col: &[i16; TILE] = tile[l * TILE..(l + 1) * TILE].try_into().unwrap();
                        for jj in 0..TILE {
                            acc32[jj] += x * col[jj] as i32;
                        }
                    }
                    for (jj, &dot) in acc32[lo..hi].iter().enumerate() {
                        bins[(jj & 3) * width + (dot as i64 + self.offset) as usize] += 1;
                    }
                }
            }
        }
    }
}

fn normalized(counts: BTreeMap<i64, u64>, norm: i64) -> BTreeMap<Rational, u64> {
    counts
        .into_iter()
        .map(|(dot, c)| (Rational::new(dot.into(), norm.into()), c))
        .collect()
}

/// Spectrum of `X' ∪ −X'` from the spectrum of a set `X'` without antipodal pairs:
/// every ordered pair value `t` of `X'` appears twice as `t` and twice as `−t`.
pub fn fold_antipodal(half: &PairSpectrum) -> PairSpectrum {
    let mut entries: BTreeMap<Rational, u64> = BTreeMap::new();
    for (t, &c) in &half.entries {
        *entries.entry(-t).or_default() += 2 * c;
        *entries.entry(t.clone()).or_default() += 2 * c;
    }
    PairSpectrum {
        d: half.d,
        size: 2 * half.size,
        antipodal: true,
        entries,
    }
}

/// Exact pair spectrum of `x`, normalized by the common norm.
///
/// Antipodal sets are folded: only the canonical half is paired, and each half-pair value `t`
/// contributes to both `t` and `−t` of the full set.
pub fn pair_spectrum(x: &VectorSet) -> PairSpectrum {
    let antipodal = !x.is_empty() && x.is_antipodal();
    let d = x.rank().saturating_sub(1);
    let half;
    let source = if antipodal {
        half = halve_antipodal(x).expect("antipodality checked");
        &half
    } else {
        x
    };
    let Some(ints) = IntegerSet::new(source) else {
        return pair_spectrum_direct(x);
    };
    let spectrum = PairSpectrum {
        d,
        size: source.len() as u64,
        antipodal: false,
        entries: normalized(ints.histogram().into_counts(), ints.norm),
    };
    if antipodal {
        fold_antipodal(&spectrum)
    } else {
        spectrum
    }
}

/// Reference computation: every ordered pair evaluated in exact rationals, no folding.
pub fn pair_spectrum_direct(x: &VectorSet) -> PairSpectrum {
    let mut entries: BTreeMap<Rational, u64> = BTreeMap::new();
    for v in x.vectors() {
        for w in x.vectors() {
            *entries.entry(x.gram().inner(v, w) / x.min_norm()).or_default() += 1;
        }
    }
    PairSpectrum {
        d: x.rank().saturating_sub(1),
        size: x.len() as u64,
        antipodal: !x.is_empty() && x.is_antipodal(),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, GramMatrix};

    fn hexagon() -> VectorSet {
        let g = GramMatrix::from_integers(&[[2, 1], [1, 2]]).unwrap();
        let vs = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![1, -1], vec![-1, 1]];
        VectorSet::new(g, rat(2, 1), vs).unwrap()
    }

    #[test]
    fn hexagon_spectrum() {
        let s = pair_spectrum(&hexagon());
        let expect: BTreeMap<Rational, u64> =
            [(rat(1, 1), 6), (rat(-1, 1), 6), (rat(1, 2), 12), (rat(-1, 2), 12)].into();
        assert_eq!(s.entries, expect);
        assert_eq!(s.d, 1);
        assert!(s.antipodal);
        assert!(s.is_consistent());
        assert_eq!(s, pair_spectrum_direct(&hexagon()));
    }

    #[test]
    fn single_vector() {
        let x = VectorSet::new(GramMatrix::identity(3), rat(1, 1), vec![vec![1, 0, 0]]).unwrap();
        let s = pair_spectrum(&x);
        assert_eq!(s.entries, [(rat(1, 1), 1)].into());
        assert!(!s.antipodal);
    }

    #[test]
    fn non_antipodal_matches_direct() {
        let g = GramMatrix::from_integers(&[[2, 1], [1, 2]]).unwrap();
        let x = VectorSet::new(g, rat(2, 1), vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(pair_spectrum(&x), pair_spectrum_direct(&x));
    }

    #[test]
    fn wide_path_matches_packed_path() {
        let g = GramMatrix::from_integers(&[[3, 1, 1], [1, 3, -1], [1, -1, 3]]).unwrap();
        let x = VectorSet::new(g, rat(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, 0, 0]]).unwrap();
        let ints = IntegerSet::new(&x).unwrap();
        let wide = ints.histogram_wide().into_counts();
        assert_eq!(ints.histogram_packed::<8>(true).into_counts(), wide);
        assert_eq!(ints.histogram_packed::<8>(false).into_counts(), wide);
    }

    #[test]
    fn json_triples_descend() {
        let json = pair_spectrum(&hexagon()).to_json();
        assert_eq!(json.to_string(), "[[1,1,6],[1,2,12],[-1,2,12],[-1,1,6]]");
    }
}
