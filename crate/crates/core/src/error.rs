//! Error type shared across the crate.

use thiserror::Error;

/// Validation and arithmetic failures.
///
/// All arithmetic on values is exact; the only arithmetic failure mode is
/// an index lcm that exceeds the machine word, which is reported rather
/// than wrapped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("residue modulus must be at least 1, got {0}")]
    InvalidModulus(i64),
    #[error("local index r must be at least 2, got {0}")]
    InvalidLocalIndex(i64),
    #[error("b must satisfy 1 <= b < r, got b = {b} with r = {r}")]
    WeightOutOfRange { r: i64, b: i64 },
    #[error("b must be coprime to r, got b = {b} with r = {r}")]
    WeightNotCoprime { r: i64, b: i64 },
    #[error("v must satisfy 0 <= v < r, got v = {v} with r = {r}")]
    ResidueDatumOutOfRange { r: i64, v: i64 },
    #[error("least common multiple of local indices overflows i64")]
    IndexOverflow,
    #[error("maximum index of an empty row list is undefined")]
    EmptyRows,
    #[error("oracle enumeration needs r_max >= 2, got {0}")]
    OracleRange(i64),
    #[error("pair multiset does not satisfy the unit-sum equation")]
    PairSumNotOne,
    #[error("basket fails the consistency check at i = {witness}")]
    InconsistentBasket { witness: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
