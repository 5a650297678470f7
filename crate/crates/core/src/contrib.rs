//! Local Riemann-Roch contributions at terminal cyclic quotient points.
//!
//! A cyclic quotient singularity of type `1/r(1, -1, b)` contributes an
//! exact rational correction to the Euler characteristic of `O(D)` for a
//! divisor `D ~ i*K`. With `ī` the residue of `i` modulo `r`,
//!
//! ```text
//! A(i) = -ī (r² - 1) / (12 r) + Σ_{j=1}^{ī-1} jb̄ (r - jb̄) / (2 r)
//! B(i) =  ī (r - ī) / (2 r)
//! ```
//!
//! where `jb̄` is the residue of `j·b`. The contribution `c(D)` of the
//! singularity equals `A(i)`, and for a basket of fictitious singularities
//! the contributions add up. `A` satisfies the telescoping relation
//!
//! ```text
//! A(i+1) - A(i) = -(r² - 1)/(12 r) + B(i·b)
//! ```
//!
//! which the test suite checks by direct expansion.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Residue of `i` modulo `r` in `[0, r)`, defined through floor division
/// so that negative `i` reduce correctly.
pub fn residue(i: i64, r: i64) -> Result<i64> {
    if r < 1 {
        return Err(Error::InvalidModulus(r));
    }
    Ok(res(i, r))
}

/// Residue for validated `r >= 1`.
#[inline]
pub(crate) fn res(i: i64, r: i64) -> i64 {
    i.rem_euclid(r)
}

/// Residue of a wide intermediate, for products like `i * b` that may not
/// fit in `i64` before reduction.
#[inline]
pub(crate) fn res_wide(x: i128, r: i64) -> i64 {
    x.rem_euclid(r as i128) as i64
}

/// A terminal cyclic quotient singularity of type `1/r(1, -1, b)`.
///
/// Carries the local index `r >= 2` and a weight `b` with `1 <= b < r`
/// coprime to `r`. Construction validates both invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicQuotient {
    r: i64,
    b: i64,
}

impl CyclicQuotient {
    pub fn new(r: i64, b: i64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidLocalIndex(r));
        }
        if !(1..r).contains(&b) {
            return Err(Error::WeightOutOfRange { r, b });
        }
        if b.gcd(&r) != 1 {
            return Err(Error::WeightNotCoprime { r, b });
        }
        Ok(Self { r, b })
    }

    /// Local index `r`.
    pub fn r(&self) -> i64 {
        self.r
    }

    /// Quotient weight `b`.
    pub fn b(&self) -> i64 {
        self.b
    }
}

/// `B(i) = ī (r - ī) / (2r)` for `r >= 2`.
pub fn b_value(r: i64, i: i64) -> Result<Rational> {
    if r < 2 {
        return Err(Error::InvalidLocalIndex(r));
    }
    Ok(b_val(r, i))
}

/// `B` for validated `r`. Depends on `i` only through its residue.
pub(crate) fn b_val(r: i64, i: i64) -> Rational {
    let k = res(i, r);
    Rational::new(BigInt::from(k) * (r - k), BigInt::from(2) * r)
}

/// `A(i)` for the quotient `q`; exact, and periodic in `i` with period `r`.
pub fn a_value(q: &CyclicQuotient, i: i64) -> Rational {
    let (r, b) = (q.r, q.b);
    let ibar = res(i, r);
    // First term; the sum is empty when ī <= 1.
    let mut total = -Rational::new(
        BigInt::from(ibar) * (BigInt::from(r) * r - 1),
        BigInt::from(12) * r,
    );
    for j in 1..ibar {
        total += b_val(r, res_wide(j as i128 * b as i128, r));
    }
    total
}

/// Contribution `c(D)` of the singularity for `D ~ i*K`; coincides with
/// [`a_value`] pointwise.
pub fn c_contribution(q: &CyclicQuotient, i: i64) -> Rational {
    a_value(q, i)
}

/// Summed contribution of a basket of fictitious singularities.
pub fn basket_c_contribution(qs: &[CyclicQuotient], i: i64) -> Rational {
    qs.iter()
        .map(|q| c_contribution(q, i))
        .fold(Rational::from_integer(BigInt::from(0)), |acc, c| acc + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn residue_basics() {
        assert_eq!(residue(0, 5).unwrap(), 0);
        assert_eq!(residue(-1, 6).unwrap(), 5);
        assert_eq!(residue(7, 6).unwrap(), 1);
        assert_eq!(residue(-12, 4).unwrap(), 0);
        assert_eq!(residue(3, 1).unwrap(), 0);
    }

    #[test]
    fn residue_rejects_bad_modulus() {
        assert_eq!(residue(3, 0), Err(Error::InvalidModulus(0)));
        assert_eq!(residue(3, -2), Err(Error::InvalidModulus(-2)));
    }

    #[test]
    fn quotient_validation() {
        assert!(CyclicQuotient::new(2, 1).is_ok());
        assert!(CyclicQuotient::new(6, 5).is_ok());
        assert_eq!(
            CyclicQuotient::new(1, 1),
            Err(Error::InvalidLocalIndex(1))
        );
        assert_eq!(
            CyclicQuotient::new(4, 0),
            Err(Error::WeightOutOfRange { r: 4, b: 0 })
        );
        assert_eq!(
            CyclicQuotient::new(4, 4),
            Err(Error::WeightOutOfRange { r: 4, b: 4 })
        );
        assert_eq!(
            CyclicQuotient::new(4, 2),
            Err(Error::WeightNotCoprime { r: 4, b: 2 })
        );
    }

    #[test]
    fn b_value_examples() {
        assert_eq!(b_value(2, 1).unwrap(), rat(1, 4));
        assert_eq!(b_value(8, 4).unwrap(), rat_int(1));
        assert_eq!(b_value(7, 0).unwrap(), rat_int(0));
        assert_eq!(b_value(6, 1).unwrap(), rat(5, 12));
        assert_eq!(b_value(1, 0), Err(Error::InvalidLocalIndex(1)));
    }

    #[test]
    fn a_value_examples() {
        let q21 = CyclicQuotient::new(2, 1).unwrap();
        assert_eq!(a_value(&q21, 0), rat_int(0));
        assert_eq!(a_value(&q21, 1), rat(-1, 8));

        // ī = 2: -2·8/36 + 2·1/6 = -1/9
        let q32 = CyclicQuotient::new(3, 2).unwrap();
        assert_eq!(a_value(&q32, 2), rat(-1, 9));
    }

    #[test]
    fn c_matches_a() {
        let q21 = CyclicQuotient::new(2, 1).unwrap();
        let q32 = CyclicQuotient::new(3, 2).unwrap();
        assert_eq!(c_contribution(&q21, 1), rat(-1, 8));
        assert_eq!(c_contribution(&q21, 2), rat_int(0));
        assert_eq!(c_contribution(&q32, 2), rat(-1, 9));
    }

    #[test]
    fn basket_sums_contributions() {
        let q21 = CyclicQuotient::new(2, 1).unwrap();
        let q32 = CyclicQuotient::new(3, 2).unwrap();
        assert_eq!(basket_c_contribution(&[], 5), rat_int(0));
        assert_eq!(basket_c_contribution(&[q21, q21], 1), rat(-1, 4));
        assert_eq!(basket_c_contribution(&[q32], 2), rat(-1, 9));
    }

    #[test]
    fn a_depends_only_on_residue() {
        let q = CyclicQuotient::new(6, 5).unwrap();
        for i in -13..13 {
            assert_eq!(a_value(&q, i), a_value(&q, i + 6));
        }
    }

    #[test]
    fn denominators_divide_12r_and_2r() {
        use num_integer::Integer as _;
        for (r, b) in [(2, 1), (5, 2), (7, 3), (12, 5)] {
            let q = CyclicQuotient::new(r, b).unwrap();
            for i in -r..2 * r {
                let a = a_value(&q, i);
                let twelve_r = num_bigint::BigInt::from(12) * r;
                assert!(twelve_r.is_multiple_of(a.denom()));
                let bv = b_value(r, i).unwrap();
                let two_r = num_bigint::BigInt::from(2) * r;
                assert!(two_r.is_multiple_of(bv.denom()));
            }
        }
    }
}
