use num_traits::{One, Zero};
use serde::Serialize;

use super::gegenbauer::gegenbauer;
use super::spectrum::PairSpectrum;
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// `Σ_s count(s) · g_{k,d}(s)`; zero for `k = 1..t` exactly when the set is a `t`-design.
pub fn gegenbauer_sum(spec: &PairSpectrum, k: usize) -> Result<Rational> {
    let g = gegenbauer(k, spec.d)?;
    Ok(spec
        .entries
        .iter()
        .map(|(s, &c)| g.eval(s) * Rational::from_integer(c.into()))
        .sum())
}

/// Largest `t <= t_max` such that the Gegenbauer sums of degrees `1..=t` all vanish.
pub fn design_strength(spec: &PairSpectrum, t_max: usize) -> Result<usize> {
    for k in 1..=t_max {
        if !gegenbauer_sum(spec, k)?.is_zero() {
            return Ok(k - 1);
        }
    }
    Ok(t_max)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Venkov3 {
    pub holds: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub target: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Venkov5 {
    pub holds: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs2: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs4: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub target2: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub target4: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenMoment {
    pub lhs: Rational,
    pub target: Rational,
}

impl EvenMoment {
    pub fn holds(&self) -> bool {
        self.lhs == self.target
    }
}

/// `(1/N²) Σ count(s)·s^{2k}` and the value it takes on a design of strength `≥ 2k`:
/// `(2k−1)!! / ((d+1)(d+3)···(d+2k−1))`.
pub fn even_moment(spec: &PairSpectrum, two_k: usize) -> Result<EvenMoment> {
    if two_k < 2 || !two_k.is_multiple_of(2) {
        return Err(Error::Invalid(format!("even moment order must be even and >= 2, got {two_k}")));
    }
    let d = spec.d as i64;
    let mut target = Rational::one();
    for i in 1..=(two_k as i64 / 2) {
        target *= rat(2 * i - 1, d + 2 * i - 1);
    }
    Ok(EvenMoment {
        lhs: spec.moment(two_k as u32),
        target,
    })
}

fn require_antipodal(spec: &PairSpectrum) -> Result<()> {
    if spec.antipodal {
        Ok(())
    } else {
        Err(Error::SpectrumNotAntipodal)
    }
}

/// Quadratic moment criterion for antipodal 3-designs.
pub fn venkov_3design(spec: &PairSpectrum) -> Result<Venkov3> {
    require_antipodal(spec)?;
    let m = even_moment(spec, 2)?;
    Ok(Venkov3 {
        holds: m.holds(),
        lhs: m.lhs,
        target: m.target,
    })
}

/// Quadratic and quartic moment criterion for antipodal 5-designs.
pub fn venkov_5design(spec: &PairSpectrum) -> Result<Venkov5> {
    require_antipodal(spec)?;
    let m2 = even_moment(spec, 2)?;
    let m4 = even_moment(spec, 4)?;
    Ok(Venkov5 {
        holds: m2.holds() && m4.holds(),
        lhs2: m2.lhs,
        lhs4: m4.lhs,
        target2: m2.target,
        target4: m4.target,
    })
}
