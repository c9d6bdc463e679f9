use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{denominator_lcm, Rational};
use crate::error::{Error, Result};

/// Dense square matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut t = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.n, self.n, other.n, other.n)));
        }
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.data[i * n + j] != self.data[j * n + i])
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// A symmetric rational matrix of inner products.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramMatrix(Matrix);

/// `L · diag(D) · Lᵀ` with `L` unit lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldlt {
    pub l: Matrix,
    pub d: Vec<Rational>,
}

impl Ldlt {
    pub fn is_positive_definite(&self) -> bool {
        self.d.iter().all(|x| x.is_positive())
    }

    /// Multiplies the factors back together.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.l.dim();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let mut acc = Rational::zero();
                for k in 0..=j {
                    acc += self.l.get(i, k) * &self.d[k] * self.l.get(j, k);
                }
                out.set(i, j, acc.clone());
                out.set(j, i, acc);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsdRank {
    pub is_psd: bool,
    pub rank: usize,
}

impl GramMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if let Some((row, col)) = m.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(GramMatrix(m))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_integers(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        GramMatrix(Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn scaled(&self, factor: &Rational) -> GramMatrix {
        GramMatrix(Matrix {
            n: self.0.n,
            data: self.0.data.iter().map(|x| x * factor).collect(),
        })
    }

    /// `uᵀ · G · v` for integer coordinate vectors.
    pub fn inner(&self, u: &[i64], v: &[i64]) -> Rational {
        let n = self.dim();
        let mut acc = Rational::zero();
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..n {
                if v[j] != 0 {
                    row += self.get(i, j) * Rational::from_integer(v[j].into());
                }
            }
            acc += row * Rational::from_integer(u[i].into());
        }
        acc
    }

    /// Smallest positive integer `c` with `c·G` integral, together with `c·G` as machine integers.
    pub fn integral_scaling(&self) -> Result<(BigInt, Vec<i64>)> {
        let scale = denominator_lcm(self.0.entries());
        let scale_r = Rational::from_integer(scale.clone());
        let ints = self
            .0
            .entries()
            .iter()
            .map(|x| {
                (x * &scale_r)
                    .to_integer()
                    .to_i64()
                    .ok_or(Error::Overflow("integral gram scaling"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((scale, ints))
    }

    /// Unpivoted LDLᵀ. Zero pivots are accepted only when the column below them is zero.
    pub fn ldlt(&self) -> Result<Ldlt> {
        let n = self.dim();
        let mut l = Matrix::identity(n);
        let mut d: Vec<Rational> = Vec::with_capacity(n);
        for j in 0..n {
            let mut dj = self.get(j, j).clone();
            for k in 0..j {
                let ljk = l.get(j, k);
                if !ljk.is_zero() {
                    dj -= ljk * ljk * &d[k];
                }
            }
            for i in j + 1..n {
                let mut num = self.get(i, j).clone();
                for k in 0..j {
                    let (lik, ljk) = (l.get(i, k), l.get(j, k));
                    if !lik.is_zero() && !ljk.is_zero() {
                        num -= lik * ljk * &d[k];
                    }
                }
                if dj.is_zero() {
                    if !num.is_zero() {
                        return Err(Error::RequiresPivoting(j));
                    }
                } else {
                    l.set(i, j, num / &dj);
                }
            }
            d.push(dj);
        }
        Ok(Ldlt { l, d })
    }

    pub fn is_positive_definite(&self) -> bool {
        self.ldlt().map(|f| f.is_positive_definite()).unwrap_or(false)
    }

    /// Exact PSD test and rank by symmetric pivoting on the largest remaining diagonal.
    pub fn psd_rank(&self) -> PsdRank {
        let n = self.dim();
        let mut s = self.0.data.clone();
        let mut active: Vec<usize> = (0..n).collect();
        let mut rank = 0;
        loop {
            let pivot = active
                .iter()
                .copied()
                .max_by(|&a, &b| s[a * n + a].cmp(&s[b * n + b]));
            let Some(p) = pivot else {
                return PsdRank { is_psd: true, rank };
            };
            if !s[p * n + p].is_positive() {
                let negative_diag = active.iter().any(|&i| s[i * n + i].is_negative());
                let off_diag = active
                    .iter()
                    .any(|&i| active.iter().any(|&j| !s[i * n + j].is_zero()));
                if !negative_diag && !off_diag {
                    return PsdRank { is_psd: true, rank };
                }
                let rest: Vec<Vec<Rational>> = active
                    .iter()
                    .map(|&i| active.iter().map(|&j| s[i * n + j].clone()).collect())
                    .collect();
                return PsdRank {
                    is_psd: false,
                    rank: rank + general_rank(rest),
                };
            }
            rank += 1;
            active.retain(|&i| i != p);
            let pivot_inv = s[p * n + p].recip();
            let col: Vec<(usize, Rational)> = active
                .iter()
                .filter(|&&i| !s[i * n + p].is_zero())
                .map(|&i| (i, &s[i * n + p] * &pivot_inv))
                .collect();
            for (i, factor) in &col {
                for &j in &active {
                    let spj = &s[p * n + j];
                    if !spj.is_zero() {
                        let delta = factor * spj;
                        s[i * n + j] -= delta;
                    }
                }
            }
        }
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn invert(&self) -> Result<GramMatrix> {
        let n = self.dim();
        let mut a = self.0.data.clone();
        let mut inv = Matrix::identity(n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col].recip();
            for k in 0..n {
                a[col * n + k] *= &p;
                inv[col * n + k] *= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for k in 0..n {
                    let da = &f * &a[col * n + k];
                    a[r * n + k] -= da;
                    let di = &f * &inv[col * n + k];
                    inv[r * n + k] -= di;
                }
            }
        }
        Ok(GramMatrix(Matrix { n, data: inv }))
    }
}

fn general_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_inv = rows[rank][col].recip();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] * &pivot_inv;
            for c in col..ncols {
                let delta = &f * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn a2() -> GramMatrix {
        GramMatrix::from_integers(&[[2, 1], [1, 2]]).unwrap()
    }

    #[test]
    fn ldlt_identity() {
        let f = GramMatrix::identity(2).ldlt().unwrap();
        assert_eq!(f.l, Matrix::identity(2));
        assert_eq!(f.d, vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn ldlt_a2() {
        let f = a2().ldlt().unwrap();
        assert_eq!(f.l.get(1, 0), &rat(1, 2));
        assert_eq!(f.l.get(0, 1), &rat(0, 1));
        assert_eq!(f.d, vec![rat(2, 1), rat(3, 2)]);
        assert_eq!(&f.reconstruct(), a2().matrix());
        assert!(f.is_positive_definite());
    }

    #[test]
    fn ldlt_indefinite() {
        let g = GramMatrix::from_integers(&[[1, 2], [2, 1]]).unwrap();
        let f = g.ldlt().unwrap();
        assert_eq!(f.d, vec![rat(1, 1), rat(-3, 1)]);
        assert!(!f.is_positive_definite());
    }

    #[test]
    fn ldlt_zero_pivot_needs_pivoting() {
        let g = GramMatrix::from_integers(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(g.ldlt(), Err(Error::RequiresPivoting(0))));
        let g = GramMatrix::from_integers(&[[0, 0], [0, 3]]).unwrap();
        assert_eq!(g.ldlt().unwrap().d, vec![rat(0, 1), rat(3, 1)]);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = Matrix::from_integers(&[[1, 2], [3, 1]]).unwrap();
        assert!(matches!(GramMatrix::new(m), Err(Error::NotSymmetric { row: 0, col: 1 })));
    }

    #[test]
    fn psd_rank_examples() {
        let id = GramMatrix::identity(3);
        assert_eq!(id.psd_rank(), PsdRank { is_psd: true, rank: 3 });
        let ones = GramMatrix::from_integers(&[[1, 1, 1], [1, 1, 1], [1, 1, 1]]).unwrap();
        assert_eq!(ones.psd_rank(), PsdRank { is_psd: true, rank: 1 });
        let diag = GramMatrix::from_integers(&[[1, 0, 0], [0, 0, 0], [0, 0, -1]]).unwrap();
        assert_eq!(diag.psd_rank(), PsdRank { is_psd: false, rank: 2 });
        let hyperbolic = GramMatrix::from_integers(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(hyperbolic.psd_rank(), PsdRank { is_psd: false, rank: 2 });
    }

    #[test]
    fn invert_examples() {
        assert_eq!(GramMatrix::identity(3).invert().unwrap(), GramMatrix::identity(3));
        let inv = a2().invert().unwrap();
        let expect = GramMatrix::from_rows(vec![
            vec![rat(2, 3), rat(-1, 3)],
            vec![rat(-1, 3), rat(2, 3)],
        ])
        .unwrap();
        assert_eq!(inv, expect);
        assert_eq!(a2().matrix().mul(inv.matrix()).unwrap(), Matrix::identity(2));
        let one = GramMatrix::from_integers(&[[2]]).unwrap();
        assert_eq!(one.invert().unwrap().get(0, 0), &rat(1, 2));
    }

    #[test]
    fn invert_singular() {
        let g = GramMatrix::from_integers(&[[1, 1], [1, 1]]).unwrap();
        assert!(matches!(g.invert(), Err(Error::Singular)));
    }

    #[test]
    fn integral_scaling_of_dual() {
        let (c, ints) = a2().invert().unwrap().integral_scaling().unwrap();
        assert_eq!(c, BigInt::from(3));
        assert_eq!(ints, vec![2, -1, -1, 2]);
    }
}
