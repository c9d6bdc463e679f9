//! Fincke–Pohst enumeration with all pruning done in exact integer arithmetic.
//!
//! With `G = L·diag(D)·Lᵀ`, the form splits as `Q(v) = Σ D_i y_i²` where
//! `y_i = v_i + Σ_{j>i} L_ji v_j`. Each `y_i` is cleared of denominators
//! (`Y_i = den_i · y_i`) and the weights `D_i / den_i²` together with the bound
//! are brought to a common denominator, so every range decision is an integer
//! square root on `i128` values.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{denominator_lcm, to_i128, GramMatrix, Matrix, Rational};

/// Nonzero vectors found by enumeration, in original-basis coordinates, sorted lexicographically.
#[derive(Clone, Debug, Default)]
pub struct ShortVectors {
    pub rank: usize,
    /// Flat `rank`-strided coordinates.
    pub coords: Vec<i64>,
    /// `vᵀGv` for each vector, times `norm_scale`.
    pub scaled_norms: Vec<i128>,
    pub norm_scale: BigInt,
}

impl ShortVectors {
    pub fn len(&self) -> usize {
        self.scaled_norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scaled_norms.is_empty()
    }

    pub fn vectors(&self) -> impl ExactSizeIterator<Item = &[i64]> {
        self.coords.chunks_exact(self.rank.max(1))
    }

    pub fn norm(&self, i: usize) -> Rational {
        Rational::new(self.scaled_norms[i].into(), self.norm_scale.clone())
    }
}

/// Pairwise size reduction. Returns the reduced Gram and the integer change of basis `U`
/// (rows of `U` are the new basis vectors in old coordinates).
pub fn size_reduce(gram: &GramMatrix) -> (GramMatrix, Vec<Vec<i64>>) {
    let n = gram.dim();
    let mut g: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| gram.get(i, j).clone()).collect()).collect();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let two = Rational::from_integer(2.into());
    // Each accepted step strictly shrinks g[i][i]; the cap only guards pathological input.
    for _ in 0..10_000 {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j || !g[j][j].is_positive() || &two * g[i][j].abs() <= g[j][j] {
                    continue;
                }
                let q = (&g[i][j] / &g[j][j]).round();
                if q.is_zero() {
                    continue;
                }
                let Some(qi) = num_traits::ToPrimitive::to_i64(&q.to_integer()) else {
                    continue;
                };
                // b_i <- b_i - q b_j
                let new_ii = &g[i][i] - &two * &q * &g[i][j] + &q * &q * &g[j][j];
                for k in 0..n {
                    if k != i {
                        let v = &g[i][k] - &q * &g[j][k];
                        g[i][k] = v.clone();
                        g[k][i] = v;
                    }
                }
                g[i][i] = new_ii;
                for k in 0..n {
                    u[i][k] -= qi * u[j][k];
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let reduced = GramMatrix::from_rows(g).expect("size reduction preserves symmetry");
    (reduced, u)
}

struct Plan {
    n: usize,
    den: Vec<i128>,
    /// `coef[i][j] = den_i · L_ji` for `j > i`.
    coef: Vec<Vec<i128>>,
    weight: Vec<i128>,
    budget: i128,
    norm_scale: BigInt,
}

impl Plan {
    fn new(gram: &GramMatrix, bound: &Rational) -> Result<Plan> {
        let n = gram.dim();
        let f = gram.ldlt().map_err(|_| Error::NotPositiveDefinite)?;
        if !f.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let l: &Matrix = &f.l;
        let mut den = Vec::with_capacity(n);
        let mut coef = vec![vec![0i128; n]; n];
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let below: Vec<&Rational> = (i + 1..n).map(|j| l.get(j, i)).collect();
            let d = denominator_lcm(below.iter().copied());
            let d_r = Rational::from_integer(d.clone());
            for j in i + 1..n {
                coef[i][j] = to_i128(&(l.get(j, i) * &d_r).to_integer(), "enumeration coefficients")?;
            }
            weights.push(&f.d[i] / (&d_r * &d_r));
            den.push(to_i128(&d, "enumeration denominators")?);
        }
        let scale = denominator_lcm(weights.iter().chain(std::iter::once(bound)));
        let scale_r = Rational::from_integer(scale.clone());
        let weight = weights
            .iter()
            .map(|w| to_i128(&(w * &scale_r).to_integer(), "enumeration weights"))
            .collect::<Result<Vec<_>>>()?;
        let budget = to_i128(&(bound * &scale_r).to_integer(), "enumeration bound")?;
        Ok(Plan {
            n,
            den,
            coef,
            weight,
            budget,
            norm_scale: scale,
        })
    }

    /// Inclusive integer range for `v[level]` given the coordinates above it.
    fn range(&self, level: usize, v: &[i64], rem: i128) -> (i128, i128, i128) {
        let c: i128 = (level + 1..self.n)
            .map(|j| self.coef[level][j] * v[j] as i128)
            .sum();
        let r = (rem / self.weight[level]).sqrt();
        let den = self.den[level];
        let lo = Integer::div_ceil(&(-r - c), &den);
        let hi = Integer::div_floor(&(r - c), &den);
        (lo, hi, c)
    }

    fn search(&self, level: usize, v: &mut [i64], rem: i128, out: &mut Vec<(Vec<i64>, i128)>) {
        let (lo, hi, c) = self.range(level, v, rem);
        let den = self.den[level];
        for x in lo..=hi {
            let y = den * x + c;
            let left = rem - self.weight[level] * y * y;
            if left < 0 {
                continue;
            }
            v[level] = x as i64;
            if level == 0 {
                if v.iter().any(|&t| t != 0) {
                    out.push((v.to_vec(), self.budget - left));
                }
            } else {
                self.search(level - 1, v, left, out);
            }
        }
        v[level] = 0;
    }
}

/// All nonzero `v` with `vᵀ G v ≤ bound`, together with their norms.
pub fn enumerate_with_norms(gram: &GramMatrix, bound: &Rational) -> Result<ShortVectors> {
    let n = gram.dim();
    if !bound.is_positive() {
        return Err(Error::Invalid(format!("enumeration bound must be positive, got {bound}")));
    }
    let (reduced, u) = size_reduce(gram);
    let plan = Plan::new(&reduced, bound)?;
    let top = n - 1;
    let (lo, hi, _) = plan.range(top, &vec![0; n], plan.budget);
    if lo.abs() > i64::MAX as i128 || hi.abs() > i64::MAX as i128 {
        return Err(Error::Overflow("enumeration range"));
    }
    let mut found: Vec<(Vec<i64>, i128)> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut v = vec![0i64; n];
            let mut out = Vec::new();
            let y = plan.den[top] * x;
            let left = plan.budget - plan.weight[top] * y * y;
            if left >= 0 {
                v[top] = x as i64;
                if top == 0 {
                    if x != 0 {
                        out.push((v.clone(), plan.budget - left));
                    }
                } else {
                    plan.search(top - 1, &mut v, left, &mut out);
                }
            }
            out
        })
        .map(|(reduced_coords, norm)| {
            // original coordinates: Uᵀ · c'
            let orig = (0..n)
                .map(|k| (0..n).map(|i| reduced_coords[i] * u[i][k]).sum())
                .collect();
            (orig, norm)
        })
        .collect();
    found.sort_unstable();
    let mut coords = Vec::with_capacity(found.len() * n);
    let mut scaled_norms = Vec::with_capacity(found.len());
    for (v, q) in found {
        coords.extend(v);
        scaled_norms.push(q);
    }
    Ok(ShortVectors {
        rank: n,
        coords,
        scaled_norms,
        norm_scale: plan.norm_scale,
    })
}

/// All nonzero integer vectors `v` with `vᵀ G v ≤ bound`, sorted lexicographically.
pub fn enumerate_short_vectors(gram: &GramMatrix, bound: &Rational) -> Result<Vec<Vec<i64>>> {
    let found = enumerate_with_norms(gram, bound)?;
    Ok(found.vectors().map(<[i64]>::to_vec).collect())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    /// Brute force over a coordinate box; independent of the LDLᵀ pruning.
    fn brute(gram: &GramMatrix, bound: &Rational, radius: i64) -> Vec<Vec<i64>> {
        let n = gram.dim();
        let mut out = Vec::new();
        let mut v = vec![-radius; n];
        loop {
            if v.iter().any(|&x| x != 0) && &gram.inner(&v, &v) <= bound {
                out.push(v.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return out;
                }
                v[k] += 1;
                if v[k] <= radius {
                    break;
                }
                v[k] = -radius;
                k += 1;
            }
        }
    }

    #[test]
    fn identity_unit_ball() {
        let vs = enumerate_short_vectors(&GramMatrix::identity(2), &rat(1, 1)).unwrap();
        assert_eq!(vs, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn a2_and_d4_shells() {
        let a2 = GramMatrix::from_integers(&[[2, 1], [1, 2]]).unwrap();
        assert_eq!(enumerate_short_vectors(&a2, &rat(2, 1)).unwrap().len(), 6);
        let d4 = GramMatrix::from_integers(&[[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]).unwrap();
        assert_eq!(enumerate_short_vectors(&d4, &rat(2, 1)).unwrap().len(), 24);
    }

    #[test]
    fn matches_brute_force_on_skewed_forms() {
        let cases = [
            (GramMatrix::from_integers(&[[5, 4], [4, 5]]).unwrap(), rat(11, 1)),
            (GramMatrix::from_integers(&[[3, 1, 1], [1, 3, -1], [1, -1, 3]]).unwrap(), rat(8, 1)),
            (
                GramMatrix::from_rows(vec![
                    vec![rat(4, 3), rat(-2, 3), rat(1, 3)],
                    vec![rat(-2, 3), rat(4, 3), rat(-1, 2)],
                    vec![rat(1, 3), rat(-1, 2), rat(7, 5)],
                ])
                .unwrap(),
                rat(5, 2),
            ),
            (GramMatrix::from_integers(&[[10, 7], [7, 5]]).unwrap(), rat(3, 1)),
        ];
        for (g, b) in cases {
            assert_eq!(enumerate_short_vectors(&g, &b).unwrap(), brute(&g, &b, 8), "{g:?}");
        }
    }

    #[test]
    fn norms_are_exact() {
        let g = GramMatrix::from_integers(&[[3, 1, 1], [1, 3, -1], [1, -1, 3]]).unwrap();
        let sv = enumerate_with_norms(&g, &rat(6, 1)).unwrap();
        for (i, v) in sv.vectors().enumerate() {
            assert_eq!(sv.norm(i), g.inner(v, v));
        }
    }

    #[test]
    fn rejects_indefinite_and_bad_bound() {
        let g = GramMatrix::from_integers(&[[1, 2], [2, 1]]).unwrap();
        assert!(matches!(enumerate_short_vectors(&g, &rat(1, 1)), Err(Error::NotPositiveDefinite)));
        assert!(enumerate_short_vectors(&GramMatrix::identity(2), &rat(0, 1)).is_err());
    }

    #[test]
    fn size_reduction_is_unimodular_change_of_basis() {
        let g = GramMatrix::from_integers(&[[10, 7], [7, 5]]).unwrap();
        let (r, u) = size_reduce(&g);
        let um = Matrix::from_integers(&u).unwrap();
        assert_eq!(&um.mul(g.matrix()).unwrap().mul(&um.transpose()).unwrap(), r.matrix());
        assert!(r.get(0, 0) + r.get(1, 1) < g.get(0, 0) + g.get(1, 1));
    }
}
