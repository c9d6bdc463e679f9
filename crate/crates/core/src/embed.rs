//! The degree-2 Gegenbauer embedding `x ↦ G_x`, handled at the level of inner products.
//!
//! `⟨G_x, G_y⟩ = g_{2,d}((x, y)) / g_{2,d}(1)`. Since `g_{2,d}` is even, `G_{−x} = G_x`, so the
//! construction starts from a halved set `X'` and mirrors it to `G_{X'} ∪ −G_{X'}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::design::{gegenbauer, venkov_3design, GegenbauerPoly, PairSpectrum};
use crate::error::{Error, Result};
use crate::exact::{GramMatrix, Matrix, PsdRank, Rational};
use crate::lattice::VectorSet;

/// Source points allowed in [`embedded_gram`] before mirroring.
pub const DEFAULT_MATRIX_CAP: usize = 512;

/// `dim Harm_k(S^d) = (2k+d−1)/(k+d−1) · C(d+k−1, k)`.
pub fn dim_harm(k: usize, d: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    let mut binom = BigUint::one();
    for i in 0..k {
        binom = binom * BigUint::from(d + k - 1 - i) / BigUint::from(i + 1);
    }
    let num = binom * BigUint::from(2 * k + d - 1);
    let den = BigUint::from(k + d - 1);
    debug_assert!((&num % &den).is_zero());
    (num / den).to_u64().expect("dimension fits in u64")
}

/// Pair spectrum of `G_{X'} ∪ −G_{X'}` on `S^{D−1}`, `D = dim Harm_2(S^d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedSpectrum {
    pub source_d: usize,
    pub target_dim: u64,
    pub spectrum: PairSpectrum,
}

fn kernel(d: usize) -> Result<(GegenbauerPoly, Rational)> {
    let g = gegenbauer(2, d)?;
    let at_one = g.eval(&Rational::one());
    Ok((g, at_one))
}

/// Maps the spectrum of a halved set through `g_{2,d}` and mirrors it.
///
/// Each source pair value `s` with count `c` yields `+g(s)` and `−g(s)` with count `2c` each.
pub fn embed(spec_halved: &PairSpectrum) -> Result<EmbeddedSpectrum> {
    if spec_halved.antipodal || spec_halved.count(&-Rational::one()) > 0 {
        return Err(Error::AntipodalInput);
    }
    let d = spec_halved.d;
    let (g, at_one) = kernel(d)?;
    let target_dim = dim_harm(2, d);
    let mut entries: BTreeMap<Rational, u64> = BTreeMap::new();
    for (s, &c) in &spec_halved.entries {
        let v = g.eval(s) / &at_one;
        *entries.entry(-&v).or_default() += 2 * c;
        *entries.entry(v).or_default() += 2 * c;
    }
    Ok(EmbeddedSpectrum {
        source_d: d,
        target_dim,
        spectrum: PairSpectrum {
            d: target_dim as usize - 1,
            size: 2 * spec_halved.size,
            antipodal: true,
            entries,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub is_3design: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rhs: Rational,
}

/// Quadratic moment of the embedded set against `2 / (d(d+3))`.
pub fn theorem_check(emb: &EmbeddedSpectrum) -> Result<TheoremCheck> {
    let d = emb.source_d as i64;
    let rhs = Rational::new(2.into(), (d * (d + 3)).into());
    let lhs = emb.spectrum.moment(2);
    let check = TheoremCheck {
        is_3design: lhs == rhs,
        lhs,
        rhs,
    };
    // same statement read as the 3-design moment criterion on S^{D−1}
    let v3 = venkov_3design(&emb.spectrum)?;
    debug_assert_eq!(v3.target, check.rhs);
    debug_assert_eq!(v3.holds, check.is_3design);
    Ok(check)
}

/// Exact Gram matrix of `G_{X'} ∪ −G_{X'}`: rows `0..n` are `G_x`, rows `n..2n` are `−G_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGram {
    pub source_d: usize,
    pub gram: GramMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub is_psd: bool,
    pub rank: usize,
    pub dim_harm2: u64,
    pub unit_diagonal: bool,
}

impl RankCertificate {
    /// PSD, unit diagonal, and rank within `dim Harm_2(S^d)`.
    pub fn holds(&self) -> bool {
        self.is_psd && self.unit_diagonal && self.rank as u64 <= self.dim_harm2
    }
}

impl EmbeddedGram {
    pub fn len(&self) -> usize {
        self.gram.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.gram.dim() == 0
    }

    pub fn certify(&self) -> RankCertificate {
        let PsdRank { is_psd, rank } = self.gram.psd_rank();
        RankCertificate {
            is_psd,
            rank,
            dim_harm2: dim_harm(2, self.source_d),
            unit_diagonal: (0..self.len()).all(|i| self.gram.get(i, i).is_one()),
        }
    }
}

fn check_halved(x: &VectorSet, cap: usize) -> Result<()> {
    if x.len() > cap {
        return Err(Error::OverCap { size: x.len(), cap });
    }
    if x.has_antipodal_pair() {
        return Err(Error::AntipodalInput);
    }
    if x.rank() < 2 {
        return Err(Error::Invalid("embedding needs rank >= 2".into()));
    }
    Ok(())
}

pub fn embedded_gram(x_halved: &VectorSet, cap: usize) -> Result<EmbeddedGram> {
    check_halved(x_halved, cap)?;
    let d = x_halved.rank() - 1;
    let (g, at_one) = kernel(d)?;
    let n = x_halved.len();
    let block: Vec<Vec<Rational>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s = x_halved.gram().inner(x_halved.get(i), x_halved.get(j)) / x_halved.min_norm();
                    g.eval(&s) / &at_one
                })
                .collect()
        })
        .collect();
    let m = 2 * n;
    let mut full = Matrix::zeros(m);
    for i in 0..n {
        for j in 0..n {
            let v = &block[i][j];
            full.set(i, j, v.clone());
            full.set(i + n, j + n, v.clone());
            full.set(i, j + n, -v);
            full.set(i + n, j, -v);
        }
    }
    Ok(EmbeddedGram {
        source_d: d,
        gram: GramMatrix::new(full)?,
    })
}

/// Float unit vectors in `R^D` realizing `G_{X'} ∪ −G_{X'}`.
///
/// Each source point `x` (unit, in an orthonormal frame) maps to the traceless symmetric
/// matrix `x·xᵀ − I/(d+1)`, written in an orthonormal basis of that `D`-dimensional space and
/// rescaled to unit length; its pairwise products are `g_{2,d}((x, y))`. Every product is
/// checked against the exact value to within `10^−precision`.
pub fn realize_coordinates(x_halved: &VectorSet, precision: usize, cap: usize) -> Result<Vec<Vec<f64>>> {
    if !(1..=15).contains(&precision) {
        return Err(Error::Invalid(format!("precision must be 1..=15 digits, got {precision}")));
    }
    check_halved(x_halved, cap)?;
    let n = x_halved.rank();
    let d = n - 1;
    let chol = float_cholesky(x_halved.gram())?;
    let scale = 1.0 / x_halved.min_norm().to_f64().expect("finite norm").sqrt();
    let big_d = dim_harm(2, d) as usize;
    let nf = n as f64;
    let unit = 1.0 / (1.0 - 1.0 / nf).sqrt();

    let mut points: Vec<Vec<f64>> = x_halved
        .vectors()
        .map(|v| {
            // y = Rᵀ v, so |y|² = vᵀ G v
            let y: Vec<f64> = (0..n)
                .map(|k| (k..n).map(|i| chol[i * n + k] * v[i] as f64).sum::<f64>() * scale)
                .collect();
            let mut out = Vec::with_capacity(big_d);
            // diagonal part x_i² − 1/n, projected onto the trace-zero hyperplane (Helmert basis)
            let diag: Vec<f64> = y.iter().map(|t| t * t - 1.0 / nf).collect();
            let mut prefix = 0.0;
            for k in 1..n {
                prefix += diag[k - 1];
                let kf = k as f64;
                out.push((prefix - kf * diag[k]) / (kf * (kf + 1.0)).sqrt());
            }
            for i in 0..n {
                for j in i + 1..n {
                    out.push(std::f64::consts::SQRT_2 * y[i] * y[j]);
                }
            }
            out.iter_mut().for_each(|c| *c *= unit);
            out
        })
        .collect();
    let mirrored: Vec<Vec<f64>> = points.iter().map(|p| p.iter().map(|c| -c).collect()).collect();
    points.extend(mirrored);

    let exact = embedded_values(x_halved)?;
    let h = x_halved.len();
    let tol = 10f64.powi(-(precision as i32));
    let err = (0..points.len())
        .into_par_iter()
        .map(|i| {
            (0..points.len())
                .map(|j| {
                    let sign = if (i < h) == (j < h) { 1.0 } else { -1.0 };
                    let want = sign * exact[(i % h) * h + (j % h)];
                    let got: f64 = points[i].iter().zip(&points[j]).map(|(a, b)| a * b).sum();
                    (got - want).abs()
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    if err > tol {
        return Err(Error::Realization { err, tol });
    }
    Ok(points)
}

fn embedded_values(x: &VectorSet) -> Result<Vec<f64>> {
    let (g, at_one) = kernel(x.rank() - 1)?;
    let h = x.len();
    let mut out = Vec::with_capacity(h * h);
    for i in 0..h {
        for j in 0..h {
            let s = x.gram().inner(x.get(i), x.get(j)) / x.min_norm();
            out.push((g.eval(&s) / &at_one).to_f64().expect("finite"));
        }
    }
    Ok(out)
}

/// Lower-triangular `R` (row-major) with `G = R·Rᵀ`.
fn float_cholesky(gram: &GramMatrix) -> Result<Vec<f64>> {
    let n = gram.dim();
    let g: Vec<f64> = gram.matrix().entries().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let mut r = vec![0.0; n * n];
    for j in 0..n {
        let mut s = g[j * n + j];
        for k in 0..j {
            s -= r[j * n + k] * r[j * n + k];
        }
        // also rejects NaN
        if s.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::NotPositiveDefinite);
        }
        let rjj = s.sqrt();
        r[j * n + j] = rjj;
        for i in j + 1..n {
            let mut s = g[i * n + j];
            for k in 0..j {
                s -= r[i * n + k] * r[j * n + k];
            }
            r[i * n + j] = s / rjj;
        }
    }
    Ok(r)
}

/// Text export: header `D m`, then one point per line.
pub fn write_coordinates(points: &[Vec<f64>], precision: usize) -> String {
    let dim = points.first().map_or(0, Vec::len);
    let mut out = format!("{dim} {}\n", points.len());
    for p in points {
        let row: Vec<String> = p.iter().map(|c| format!("{c:.precision$}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
