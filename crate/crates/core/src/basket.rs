//! Baskets of fictitious singularities and their consistency checks.
//!
//! A basket entry `(r, b, v)` is a terminal cyclic quotient singularity of
//! type `1/r(1, -1, b)` decorated with the residue datum `v` of the divisor
//! under scrutiny, normalized so that `1 <= v <= r/2`. Entries with `v = 0`
//! contribute nothing and are never stored.
//!
//! Writing `δ(i)` for the indicator of `L | i` with `L` the lcm of the
//! entries' local indices, a basket is consistent when the difference
//! equation
//!
//! ```text
//! δ(i+1) - δ(i) = Σ over entries of B(i·b) - B(i·b - v)
//! ```
//!
//! holds for every integer `i`. Checking `i` in `[0, L)` decides all `i`:
//! `δ` is `L`-periodic and each summand is `r`-periodic in `i` with `r`
//! dividing `L`, so both sides are `L`-periodic. The same reasoning shows
//! that a consistent basket admits a unique constant `γ` completing the
//! summed form `δ(i) = γ + Σ (A(i) - A(i - f))`, which [`solve_gamma`]
//! recovers and verifies.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::contrib::{a_value, b_val, res, res_wide, CyclicQuotient};
use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

/// One fictitious singularity `(r, b, v)` with its divisor residue datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasketEntry {
    r: i64,
    b: i64,
    v: i64,
}

impl BasketEntry {
    /// Validates `r >= 2`, `1 <= b < r` coprime to `r`, and `1 <= v <= r/2`.
    pub fn new(r: i64, b: i64, v: i64) -> Result<Self> {
        let q = CyclicQuotient::new(r, b)?;
        if v < 1 || 2 * v > r {
            return Err(Error::ResidueDatumOutOfRange { r, v });
        }
        Ok(Self {
            r: q.r(),
            b: q.b(),
            v,
        })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    /// The underlying cyclic quotient type, without the residue datum.
    pub fn quotient(&self) -> CyclicQuotient {
        CyclicQuotient::new(self.r, self.b).expect("entry invariants imply a valid quotient")
    }
}

impl fmt::Display for BasketEntry {
    /// Prints `(r,v,b)`, the order used in the classification tables.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.v, self.b)
    }
}

/// A finite multiset of basket entries in canonical order.
///
/// Entries are sorted by `(r, v, b)`; multiset equality is plain equality
/// of the sorted sequences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Basket {
    entries: Vec<BasketEntry>,
}

impl Basket {
    pub fn new(mut entries: Vec<BasketEntry>) -> Self {
        entries.sort_by_key(|e| (e.r, e.v, e.b));
        Self { entries }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[BasketEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// The `(r, v)` projection, in canonical order.
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        let mut pairs: Vec<(i64, i64)> = self.entries.iter().map(|e| (e.r, e.v)).collect();
        pairs.sort_unstable();
        pairs
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// The periodic indicator `δ(i) = 1` iff `period | i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaProfile {
    period: i64,
}

impl DeltaProfile {
    pub fn new(period: i64) -> Result<Self> {
        if period < 1 {
            return Err(Error::InvalidModulus(period));
        }
        Ok(Self { period })
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn eval(&self, i: i64) -> i64 {
        i64::from(res(i, self.period) == 0)
    }
}

/// Least common multiple of the entries' local indices; `1` for the empty
/// basket. Overflow is a hard error, never a wrapped value.
pub fn lcm_index(basket: &Basket) -> Result<i64> {
    let mut l: i64 = 1;
    for e in basket.entries() {
        let g = l.gcd(&e.r);
        l = (l / g).checked_mul(e.r).ok_or(Error::IndexOverflow)?;
    }
    Ok(l)
}

/// Smallest `f >= 1` with `residue(f·b, r) = v`; equals `v·b⁻¹ mod r`.
///
/// The modular inverse exists because `b` is coprime to `r`, and the result
/// is nonzero because `1 <= v < r`.
pub fn f_min(entry: &BasketEntry) -> i64 {
    let (r, b, v) = (entry.r, entry.b, entry.v);
    let b_inv = mod_inverse(b, r).expect("entry invariants guarantee gcd(b, r) = 1");
    res_wide(v as i128 * b_inv as i128, r)
}

/// Modular inverse of `a` modulo `m >= 2` via the extended Euclidean
/// algorithm. `None` when `gcd(a, m) != 1`.
fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r.abs() != 1 {
        return None;
    }
    // old_r may be -1 for negative inputs; fold its sign into s.
    let inv = old_s * old_r.signum();
    Some(inv.rem_euclid(m as i128) as i64)
}

/// Right-hand side of the difference equation at `i`:
/// `Σ B(i·b) - B(i·b - v)` over the entries. Empty basket gives `0`.
pub fn delta_diff_rhs(basket: &Basket, i: i64) -> Rational {
    let mut total = rat_int(0);
    for e in basket.entries() {
        let ib = i as i128 * e.b as i128;
        total += b_val(e.r, res_wide(ib, e.r)) - b_val(e.r, res_wide(ib - e.v as i128, e.r));
    }
    total
}

/// Outcome of a consistency check, with the smallest failing `i` on the
/// inconsistent side so that reports are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent {
        witness: i64,
        lhs: Rational,
        rhs: Rational,
    },
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Consistent => write!(f, "consistent"),
            Verdict::Inconsistent { witness, lhs, rhs } => write!(
                f,
                "inconsistent at i = {witness}: delta side {lhs}, contribution side {rhs}"
            ),
        }
    }
}

/// Checks the difference equation over one full period `[0, L)`.
pub fn verify_delta(basket: &Basket) -> Result<Verdict> {
    let l = lcm_index(basket)?;
    let delta = DeltaProfile::new(l)?;
    for i in 0..l {
        let lhs = rat_int(delta.eval(i + 1) - delta.eval(i));
        let rhs = delta_diff_rhs(basket, i);
        if lhs != rhs {
            return Ok(Verdict::Inconsistent {
                witness: i,
                lhs,
                rhs,
            });
        }
    }
    Ok(Verdict::Consistent)
}

/// Result of solving for the constant term of the summed equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaOutcome {
    Consistent(Rational),
    Inconsistent {
        witness: i64,
        lhs: Rational,
        rhs: Rational,
    },
}

impl GammaOutcome {
    pub fn gamma(&self) -> Option<&Rational> {
        match self {
            GammaOutcome::Consistent(g) => Some(g),
            GammaOutcome::Inconsistent { .. } => None,
        }
    }
}

/// Solves `δ(i) = γ + Σ (A(i) - A(i - f))` for the constant `γ` and
/// verifies the equation over one full period.
///
/// `f` is the smallest positive representative with `residue(f·b, r) = v`;
/// since `A` is `r`-periodic the choice of representative does not affect
/// the sum. Fixing `i = 0` (where every `A(0)` vanishes) determines
/// `γ = 1 + Σ A(-f)`, and the remaining period is checked against it.
pub fn solve_gamma(basket: &Basket) -> Result<GammaOutcome> {
    let l = lcm_index(basket)?;
    let delta = DeltaProfile::new(l)?;
    let quotients: Vec<(CyclicQuotient, i64)> = basket
        .entries()
        .iter()
        .map(|e| (e.quotient(), f_min(e)))
        .collect();

    let mut gamma = rat_int(1);
    for (q, f) in &quotients {
        gamma += a_value(q, -f);
    }

    for i in 0..l {
        let mut rhs = gamma.clone();
        for (q, f) in &quotients {
            rhs += a_value(q, i) - a_value(q, i - f);
        }
        let lhs = rat_int(delta.eval(i));
        if lhs != rhs {
            return Ok(GammaOutcome::Inconsistent {
                witness: i,
                lhs,
                rhs,
            });
        }
    }
    Ok(GammaOutcome::Consistent(gamma))
}

/// Wire form of a basket entry. Unknown keys are rejected.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub r: i64,
    pub b: i64,
    pub v: i64,
}

/// Wire form of a basket document: `{"entries": [{"r":…,"b":…,"v":…}, …]}`.
///
/// This is the single interchange format consumed by the verify, index and
/// gamma commands and emitted by the classifier's JSON output.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasketDocument {
    pub entries: Vec<RawEntry>,
}

impl From<&Basket> for BasketDocument {
    fn from(basket: &Basket) -> Self {
        BasketDocument {
            entries: basket
                .entries()
                .iter()
                .map(|e| RawEntry {
                    r: e.r,
                    b: e.b,
                    v: e.v,
                })
                .collect(),
        }
    }
}

/// Adjustment applied while reading un-normalized input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Notice {
    /// `v = 0` entries carry no contribution and are dropped.
    DroppedZeroDatum { r: i64, b: i64 },
    /// `v > r/2` entries are rewritten by `(b, v) -> (r-b, r-v)`.
    Normalized {
        r: i64,
        b: i64,
        v: i64,
        b_new: i64,
        v_new: i64,
    },
}

impl fmt::Display for Notice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Notice::DroppedZeroDatum { r, b } => {
                write!(f, "dropped entry (r={r}, b={b}, v=0): zero datum contributes nothing")
            }
            Notice::Normalized {
                r,
                b,
                v,
                b_new,
                v_new,
            } => write!(
                f,
                "normalized entry (r={r}, b={b}, v={v}) to (r={r}, b={b_new}, v={v_new})"
            ),
        }
    }
}

impl Basket {
    /// Builds a basket from its wire form, normalizing `v > r/2` entries
    /// and dropping `v = 0` entries, with a notice for each adjustment.
    pub fn from_document(doc: &BasketDocument) -> Result<(Self, Vec<Notice>)> {
        let mut entries = Vec::with_capacity(doc.entries.len());
        let mut notices = Vec::new();
        for raw in &doc.entries {
            // Validate the quotient type before any rewriting.
            CyclicQuotient::new(raw.r, raw.b)?;
            if raw.v < 0 || raw.v >= raw.r {
                return Err(Error::ResidueDatumOutOfRange { r: raw.r, v: raw.v });
            }
            if raw.v == 0 {
                notices.push(Notice::DroppedZeroDatum { r: raw.r, b: raw.b });
                continue;
            }
            let (b, v) = if 2 * raw.v > raw.r {
                let (b_new, v_new) = (raw.r - raw.b, raw.r - raw.v);
                notices.push(Notice::Normalized {
                    r: raw.r,
                    b: raw.b,
                    v: raw.v,
                    b_new,
                    v_new,
                });
                (b_new, v_new)
            } else {
                (raw.b, raw.v)
            };
            entries.push(BasketEntry::new(raw.r, b, v)?);
        }
        Ok((Basket::new(entries), notices))
    }
}
