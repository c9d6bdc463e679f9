//! Exact rational scalars and symmetric linear algebra.
//!
//! Nothing in here touches floating point.

mod matrix;
mod rational;

pub use matrix::{GramMatrix, Ldlt, Matrix, PsdRank};
pub use rational::{denominator_lcm, format_decimal, parse_rational, rat, to_i128, Rational};
