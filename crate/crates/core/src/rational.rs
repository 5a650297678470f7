//! Exact rational arithmetic.
//!
//! Every contribution computed by this crate lives in ℚ and is represented
//! by [`Rational`], an arbitrary-precision fraction. Values are always kept
//! in lowest terms with a positive denominator, arithmetic never rounds,
//! and the big-integer backing removes integer overflow as a failure mode.
//! `Display` prints `p/q`, or just `p` when the denominator is one, so CLI
//! output stays decimal-free.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact fraction in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Builds `n / d` as an exact fraction.
///
/// Panics if `d == 0`; callers in this crate only pass denominators that
/// are structurally nonzero (`2r`, `12r` with `r >= 1`).
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a fraction `n/1`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
