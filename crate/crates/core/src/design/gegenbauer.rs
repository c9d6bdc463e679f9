use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// Gegenbauer polynomial for `S^d`, normalized so that `g(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GegenbauerPoly {
    pub k: usize,
    pub d: usize,
    /// Coefficients in increasing degree, `coeffs.len() == k + 1`.
    pub coeffs: Vec<Rational>,
}

impl GegenbauerPoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

fn shift_mul(p: &[Rational], factor: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] = c * factor;
    }
    out
}

/// Degree-`k` zonal polynomial of `S^d` by the three-term recurrence.
///
/// With `n = d + 1`: `g_{k+1} = ((2k + n − 2)·x·g_k − k·g_{k−1}) / (k + n − 2)`.
/// On the circle (`d = 1`) this is the Chebyshev family `T_{k+1} = 2x·T_k − T_{k−1}`.
pub fn gegenbauer(k: usize, d: usize) -> Result<GegenbauerPoly> {
    if d == 0 {
        return Err(Error::Invalid("Gegenbauer polynomials need sphere dimension d >= 1".into()));
    }
    let mut prev = vec![Rational::one()];
    if k == 0 {
        return Ok(GegenbauerPoly { k, d, coeffs: prev });
    }
    let mut cur = vec![Rational::zero(), Rational::one()];
    let n = d as i64 + 1;
    for j in 1..k as i64 {
        let (a, b, c) = if d == 1 {
            (rat(2, 1), Rational::one(), Rational::one())
        } else {
            (rat(2 * j + n - 2, 1), rat(j, 1), rat(j + n - 2, 1))
        };
        let mut next = shift_mul(&cur, &a);
        for (i, p) in prev.iter().enumerate() {
            next[i] -= p * &b;
        }
        for x in &mut next {
            *x /= &c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(GegenbauerPoly { k, d, coeffs: cur })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_closed_form() {
        for d in 1..30 {
            let g = gegenbauer(2, d).unwrap();
            let d_r = rat(d as i64, 1);
            let expect = vec![-Rational::one() / &d_r, Rational::zero(), (&d_r + Rational::one()) / &d_r];
            assert_eq!(g.coeffs, expect, "d = {d}");
        }
    }

    #[test]
    fn table_values() {
        assert_eq!(gegenbauer(2, 7).unwrap().eval(&rat(1, 2)), rat(1, 7));
        assert_eq!(gegenbauer(2, 23).unwrap().eval(&rat(1, 4)), rat(1, 46));
        assert_eq!(gegenbauer(0, 5).unwrap().coeffs, vec![Rational::one()]);
    }

    #[test]
    fn chebyshev_on_circle() {
        // T_4 = 8x^4 - 8x^2 + 1
        let t4 = gegenbauer(4, 1).unwrap();
        assert_eq!(t4.coeffs, vec![rat(1, 1), rat(0, 1), rat(-8, 1), rat(0, 1), rat(8, 1)]);
    }

    #[test]
    fn legendre_on_two_sphere() {
        // P_3 = (5x^3 - 3x)/2
        let p3 = gegenbauer(3, 2).unwrap();
        assert_eq!(p3.coeffs, vec![rat(0, 1), rat(-3, 2), rat(0, 1), rat(5, 2)]);
    }

    #[test]
    fn normalized_and_parity() {
        for d in 1..8 {
            for k in 0..12 {
                let g = gegenbauer(k, d).unwrap();
                assert_eq!(g.eval(&Rational::one()), Rational::one());
                assert!(g.coeffs.iter().enumerate().all(|(i, c)| (i + k) % 2 == 0 || c.is_zero()));
            }
        }
        assert!(gegenbauer(2, 0).is_err());
    }
}
