//! Exact rational arithmetic and sparse polynomials in the Chern roots
//! `y_1..y_n`, the formal variable `ζ` and the equivariant parameter `α`.
//!
//! Polynomials ([`MPoly`]) carry the `y` and `ζ` variables; `α` is kept as a
//! separate integer exponent axis in [`AlphaSeries`], so negative powers of
//! `α` are representable without rational functions.

mod poly;
mod render;
mod series;

pub use poly::{DegreeMeasure, MPoly, Monomial};
pub use render::Style;
pub use series::AlphaSeries;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

/// Builds `num/den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `a * b` with `y`-degree truncation at `ydeg_cap`; free-function form of
/// [`AlphaSeries::mul`].
pub fn series_mul(a: &AlphaSeries, b: &AlphaSeries, ydeg_cap: u32) -> crate::Result<AlphaSeries> {
    a.mul(b, ydeg_cap)
}

pub fn poly_add(a: &MPoly, b: &MPoly) -> crate::Result<MPoly> {
    a.add(b)
}

/// Exact product, optionally truncated at total degree `cap`.
pub fn poly_mul(a: &MPoly, b: &MPoly, cap: Option<u32>) -> crate::Result<MPoly> {
    a.mul_capped(b, cap, DegreeMeasure::Total)
}
