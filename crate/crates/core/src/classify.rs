//! Enumeration of consistent baskets and the classification tables.
//!
//! The pipeline runs in two stages, mirroring the CLI's `--stage` flag:
//!
//! * **Stage J** classifies the `(r, v)` data. The unit-sum equation
//!   `Σ v(r - v) / 2r = 1` together with the elementary estimate
//!   `v/4 <= v(r - v)/2r < v/2` (valid for `r >= 2v`) forces
//!   `2 < Σ v <= 4`, so the `v`-multisets are the integer partitions of 3
//!   and 4. For each of them the equation is solved exactly for the `r`
//!   values by a bounded recursive search ([`solve_r`]).
//!
//! * **Stage Jtilde** refines each stage-J type over all weights `b`
//!   coprime to `r` and keeps the assignments whose basket passes the full
//!   periodic consistency check ([`verify_delta`]).
//!
//! An independent brute-force oracle ([`oracle_enumerate`]) re-derives the
//! stage-Jtilde answer from raw `(r, b, v)` triples and shares nothing with
//! the structured search beyond the contribution formulas.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::basket::{lcm_index, verify_delta, Basket, BasketEntry, Verdict};
use crate::contrib::b_value;
use crate::error::{Error, Result};
use crate::rational::{rat, rat_int, Rational};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A stage-J type: a multiset of `(r, v)` pairs solving the unit-sum
/// equation, in canonical `(r, v)` order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JType {
    pairs: Vec<(i64, i64)>,
    label: Option<u32>,
}

impl JType {
    /// Validates `r >= 2v >= 2` for each pair and the unit-sum equation
    /// `Σ v(r - v)/2r = 1` (empty lists are allowed).
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        let mut pairs = pairs;
        pairs.sort_unstable();
        let mut sum = rat_int(0);
        for &(r, v) in &pairs {
            if r < 2 {
                return Err(Error::InvalidLocalIndex(r));
            }
            if v < 1 || 2 * v > r {
                return Err(Error::ResidueDatumOutOfRange { r, v });
            }
            sum += b_value(r, v)?;
        }
        if !pairs.is_empty() && sum != rat_int(1) {
            return Err(Error::PairSumNotOne);
        }
        Ok(Self { pairs, label: None })
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn label(&self) -> Option<u32> {
        self.label
    }

    /// Attaches a table label.
    pub fn with_label(mut self, label: u32) -> Self {
        self.label = Some(label);
        self
    }
}

/// A stage-Jtilde type: a basket passing the periodic consistency check.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JTildeType {
    basket: Basket,
    label: Option<u32>,
}

impl JTildeType {
    /// Accepts only baskets whose difference equation verifies.
    pub fn new(basket: Basket) -> Result<Self> {
        match verify_delta(&basket)? {
            Verdict::Consistent => Ok(Self {
                basket,
                label: None,
            }),
            Verdict::Inconsistent { witness, .. } => Err(Error::InconsistentBasket { witness }),
        }
    }

    pub fn basket(&self) -> &Basket {
        &self.basket
    }

    pub fn label(&self) -> Option<u32> {
        self.label
    }

    /// Attaches a table label.
    pub fn with_label(mut self, label: u32) -> Self {
        self.label = Some(label);
        self
    }
}

/// Label of an emitted classification row.
///
/// Rows that fail to match the expected classification are labeled
/// [`RowLabel::Unexpected`] and surface loudly in tests and output instead
/// of being dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowLabel {
    Type(u32),
    Unexpected,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Type(n) => write!(f, "{n}"),
            RowLabel::Unexpected => write!(f, "UNEXPECTED"),
        }
    }
}

/// Payload of a classification row: `(r, v)` pairs for stage J, a full
/// basket for stage Jtilde.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowData {
    Pairs(Vec<(i64, i64)>),
    Basket(Basket),
}

impl RowData {
    pub fn basket(&self) -> Option<&Basket> {
        match self {
            RowData::Basket(b) => Some(b),
            RowData::Pairs(_) => None,
        }
    }
}

impl fmt::Display for RowData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowData::Pairs(pairs) if pairs.is_empty() => write!(f, "∅"),
            RowData::Pairs(pairs) => {
                let parts: Vec<String> =
                    pairs.iter().map(|(r, v)| format!("({r},{v})")).collect();
                write!(f, "{}", parts.join(";"))
            }
            RowData::Basket(b) => write!(f, "{b}"),
        }
    }
}

/// One row of a classification table: label, data, index `r_P` (the lcm of
/// the local indices) and the verdict of the check the row passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRow {
    pub label: RowLabel,
    pub data: RowData,
    pub index: i64,
    pub verdict: Verdict,
}

/// Fixture row: label, `(r, v)` pairs, index.
type JFixture = (u32, &'static [(i64, i64)], i64);
/// Fixture row: label, `(r, v, b)` entries, index.
type JTildeFixture = (u32, &'static [(i64, i64, i64)], i64);

/// The expected stage-J classification.
const STAGE_J_TYPES: [JFixture; 13] = [
    (1, &[(2, 1), (2, 1), (2, 1), (2, 1)], 2),
    (2, &[(2, 1), (2, 1), (4, 2)], 4),
    (3, &[(2, 1), (3, 1), (6, 1)], 6),
    (4, &[(2, 1), (4, 1), (4, 1)], 4),
    (5, &[(3, 1), (3, 1), (3, 1)], 3),
    (6, &[(4, 2), (4, 2)], 4),
    (7, &[(2, 1), (6, 3)], 6),
    (8, &[(2, 1), (8, 2)], 8),
    (9, &[(3, 1), (6, 2)], 6),
    (10, &[(5, 1), (5, 2)], 5),
    (11, &[(8, 4)], 8),
    (12, &[(9, 3)], 9),
    (13, &[], 1),
];

/// The expected stage-Jtilde classification, entries as `(r, v, b)`.
const STAGE_J_TILDE_TYPES: [JTildeFixture; 6] = [
    (1, &[(2, 1, 1), (2, 1, 1), (2, 1, 1), (2, 1, 1)], 2),
    (3, &[(2, 1, 1), (3, 1, 2), (6, 1, 5)], 6),
    (4, &[(2, 1, 1), (4, 1, 3), (4, 1, 3)], 4),
    (5, &[(3, 1, 2), (3, 1, 2), (3, 1, 2)], 3),
    (10, &[(5, 1, 4), (5, 2, 3)], 5),
    (13, &[], 1),
];

/// Builds a basket from `(r, v, b)` fixture literals.
fn fixture_basket(entries: &[(i64, i64, i64)]) -> Basket {
    Basket::new(
        entries
            .iter()
            .map(|&(r, v, b)| BasketEntry::new(r, b, v).expect("fixture entries are valid"))
            .collect(),
    )
}

/// All candidate `v`-multisets, in increasing part order.
///
/// Derived, not hard-coded: the estimate `v/4 <= B(v) < v/2` turns the
/// unit-sum equation into `2 < Σ v <= 4`, so the candidates are exactly
/// the integer partitions of 3 and 4.
pub fn candidate_v_multisets() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for total in 3..=4 {
        partitions_into(total, 1, &mut Vec::new(), &mut out);
    }
    out
}

fn partitions_into(remaining: i64, min_part: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if remaining == 0 {
        out.push(acc.clone());
        return;
    }
    for part in min_part..=remaining {
        acc.push(part);
        partitions_into(remaining - part, part, acc, out);
        acc.pop();
    }
}

/// Solves the unit-sum equation for the local indices of a given
/// `v`-multiset, returning every multiset `{(r_i, v_i)}` with
/// `r_i >= 2 v_i` and `Σ v_i (r_i - v_i) / 2 r_i = 1`.
///
/// The search works on the equivalent integer form `Σ v_i²/r_i = Σ v - 2`
/// and descends over the entries in non-increasing `v` order, assigning
/// non-decreasing `r` within runs of equal `v`. Completeness of the `r`
/// range at each node: with `t` the remaining target, `m` the number of
/// unassigned entries sharing the current `v`, and `S` the sum of the
/// strictly smaller unassigned `v_j`, every solution satisfies
/// `t <= m·v²/r + S/2` (the `m` equal-`v` terms are bounded by the current
/// one, the rest by `v_j²/(2v_j)`), hence `r <= m·v²/(t - S/2)`. The
/// divisor is positive at every node that can still reach a solution:
/// `t - S/2 >= (Σv + m·v)/2 - 2`, which is positive for `Σ v ∈ {3, 4}`
/// except when `m = v = 1` — and then `v` is the minimal part, so `S = 0`
/// and `t > 0` directly. Multisets with `Σ v` outside `(2, 4]` have no
/// solutions at all by the estimate above.
pub fn solve_r(vs: &[i64]) -> Vec<JType> {
    if vs.is_empty() || vs.iter().any(|&v| v < 1) {
        return Vec::new();
    }
    let total: i64 = vs.iter().sum();
    if !(3..=4).contains(&total) {
        return Vec::new();
    }

    let mut sorted: Vec<i64> = vs.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let target = rat_int(total - 2);

    let mut solutions = Vec::new();
    let mut acc = Vec::with_capacity(sorted.len());
    descend(&sorted, 0, &target, &mut acc, &mut solutions);

    let mut out: Vec<JType> = solutions
        .into_iter()
        .map(|pairs| JType::new(pairs).expect("search emits only unit-sum solutions"))
        .collect();
    out.sort();
    out
}

fn descend(
    vs: &[i64],
    idx: usize,
    t: &Rational,
    acc: &mut Vec<(i64, i64)>,
    out: &mut Vec<Vec<(i64, i64)>>,
) {
    if idx == vs.len() {
        if t.is_zero() {
            out.push(acc.clone());
        }
        return;
    }
    if !t.is_positive() {
        return;
    }
    let v = vs[idx];
    let group = vs[idx..].iter().take_while(|&&w| w == v).count() as i64;
    let smaller: i64 = vs[idx..].iter().filter(|&&w| w < v).sum();

    let divisor = t - rat(smaller, 2);
    if !divisor.is_positive() {
        return;
    }
    let r_hi = (rat(group * v * v, 1) / divisor)
        .floor()
        .to_integer()
        .to_i64()
        .expect("bounded search range fits in i64");
    let r_lo = match acc.last() {
        Some(&(prev_r, prev_v)) if prev_v == v => prev_r.max(2 * v),
        _ => 2 * v,
    };
    for r in r_lo..=r_hi {
        let remaining = t - rat(v * v, r);
        acc.push((r, v));
        descend(vs, idx + 1, &remaining, acc, out);
        acc.pop();
    }
}

/// Looks up the fixture label for a stage-J pair multiset.
fn stage_j_label(pairs: &[(i64, i64)]) -> RowLabel {
    for (label, fixture, _) in STAGE_J_TYPES {
        let mut expected: Vec<(i64, i64)> = fixture.to_vec();
        expected.sort_unstable();
        if expected == pairs {
            return RowLabel::Type(label);
        }
    }
    RowLabel::Unexpected
}

/// Looks up the fixture label for a stage-Jtilde basket.
fn stage_j_tilde_label(basket: &Basket) -> RowLabel {
    for (label, fixture, _) in STAGE_J_TILDE_TYPES {
        if &fixture_basket(fixture) == basket {
            return RowLabel::Type(label);
        }
    }
    RowLabel::Unexpected
}

fn pairs_lcm(pairs: &[(i64, i64)]) -> i64 {
    pairs.iter().fold(1i64, |l, &(r, _)| l.lcm(&r))
}

fn row_sort_key(row: &ClassificationRow) -> (u32, String) {
    match row.label {
        RowLabel::Type(n) => (n, String::new()),
        RowLabel::Unexpected => (u32::MAX, row.data.to_string()),
    }
}

/// Stage-J classification: all `(r, v)` multisets solving the unit-sum
/// equation, plus the empty type, labeled against the expected table.
pub fn classify_stage_j() -> Vec<ClassificationRow> {
    let mut rows: Vec<ClassificationRow> = Vec::new();
    for vs in candidate_v_multisets() {
        for jtype in solve_r(&vs) {
            let pairs = jtype.pairs().to_vec();
            rows.push(ClassificationRow {
                label: stage_j_label(&pairs),
                index: pairs_lcm(&pairs),
                data: RowData::Pairs(pairs),
                verdict: Verdict::Consistent,
            });
        }
    }
    // The empty type: no entries, index 1.
    rows.push(ClassificationRow {
        label: stage_j_label(&[]),
        data: RowData::Pairs(Vec::new()),
        index: 1,
        verdict: Verdict::Consistent,
    });
    rows.sort_by_key(row_sort_key);
    rows
}

/// Units modulo `r`: all `b` in `[1, r)` coprime to `r`.
fn units(r: i64) -> Vec<i64> {
    (1..r).filter(|b| b.gcd(&r) == 1).collect()
}

/// All weight assignments for a pair multiset, deduplicated by canonical
/// basket form (assignments differing only by a permutation of identical
/// `(r, v)` entries collapse).
fn weight_assignments(pairs: &[(i64, i64)]) -> Vec<Basket> {
    let mut results = BTreeSet::new();
    let mut current: Vec<BasketEntry> = Vec::with_capacity(pairs.len());
    assign_weights(pairs, 0, &mut current, &mut results);
    results.into_iter().collect()
}

fn assign_weights(
    pairs: &[(i64, i64)],
    idx: usize,
    current: &mut Vec<BasketEntry>,
    out: &mut BTreeSet<Basket>,
) {
    if idx == pairs.len() {
        out.insert(Basket::new(current.clone()));
        return;
    }
    let (r, v) = pairs[idx];
    for b in units(r) {
        current.push(BasketEntry::new(r, b, v).expect("enumerated weights are valid"));
        assign_weights(pairs, idx + 1, current, out);
        current.pop();
    }
}

/// Stage-Jtilde classification: refines every stage-J row over all coprime
/// weight assignments and keeps the baskets passing the consistency check.
pub fn classify_stage_j_tilde() -> Vec<ClassificationRow> {
    let mut candidates: Vec<Basket> = Vec::new();
    for row in classify_stage_j() {
        if let RowData::Pairs(pairs) = row.data {
            candidates.extend(weight_assignments(&pairs));
        }
    }

    #[cfg(feature = "parallel")]
    let consistent: Vec<Basket> = candidates
        .into_par_iter()
        .filter(|b| {
            verify_delta(b)
                .expect("stage-J indices are small; lcm cannot overflow")
                .is_consistent()
        })
        .collect();
    #[cfg(not(feature = "parallel"))]
    let consistent: Vec<Basket> = candidates
        .into_iter()
        .filter(|b| {
            verify_delta(b)
                .expect("stage-J indices are small; lcm cannot overflow")
                .is_consistent()
        })
        .collect();

    let unique: BTreeSet<Basket> = consistent.into_iter().collect();
    let mut rows: Vec<ClassificationRow> = unique
        .into_iter()
        .map(|basket| ClassificationRow {
            label: stage_j_tilde_label(&basket),
            index: lcm_index(&basket).expect("stage-J indices are small; lcm cannot overflow"),
            data: RowData::Basket(basket),
            verdict: Verdict::Consistent,
        })
        .collect();
    rows.sort_by_key(row_sort_key);
    rows
}

/// Largest index `r_P` over a non-empty list of rows.
pub fn max_index(rows: &[ClassificationRow]) -> Result<i64> {
    rows.iter()
        .map(|row| row.index)
        .max()
        .ok_or(Error::EmptyRows)
}

/// Brute-force oracle: every canonical basket of at most four entries with
/// local indices up to `r_max` that passes the consistency check,
/// including the empty basket.
///
/// The size cap follows from `B(v) >= 1/4`: a consistent basket satisfies
/// the unit-sum equation (the `i = 0` slice of the difference equation),
/// so it has at most four entries. For the same reason the tree is pruned
/// once the partial `B`-sum exceeds 1 — all extensions would already fail
/// at `i = 0`. Beyond the contribution formulas, no code is shared with
/// [`solve_r`] or the refinement.
pub fn oracle_enumerate(r_max: i64) -> Result<Vec<JTildeType>> {
    let triples = oracle_triples(r_max)?;

    #[cfg(feature = "parallel")]
    let found: Vec<Vec<Basket>> = (0..triples.len())
        .into_par_iter()
        .map(|first| oracle_explore_from(&triples, first))
        .collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let found: Vec<Vec<Basket>> = (0..triples.len())
        .map(|first| oracle_explore_from(&triples, first))
        .collect::<Result<_>>()?;

    finish_oracle(found)
}

/// Sequential twin of [`oracle_enumerate`], kept unconditionally for
/// benchmarking and for cross-checking the parallel path.
pub fn oracle_enumerate_sequential(r_max: i64) -> Result<Vec<JTildeType>> {
    let triples = oracle_triples(r_max)?;
    let found: Vec<Vec<Basket>> = (0..triples.len())
        .map(|first| oracle_explore_from(&triples, first))
        .collect::<Result<_>>()?;
    finish_oracle(found)
}

fn finish_oracle(found: Vec<Vec<Basket>>) -> Result<Vec<JTildeType>> {
    let mut baskets: BTreeSet<Basket> = found.into_iter().flatten().collect();
    baskets.insert(Basket::empty());
    baskets.into_iter().map(JTildeType::new).collect()
}

/// All `(r, b, v)` triples admissible as basket entries, canonically
/// ordered.
fn oracle_triples(r_max: i64) -> Result<Vec<BasketEntry>> {
    if r_max < 2 {
        return Err(Error::OracleRange(r_max));
    }
    let mut triples = Vec::new();
    for r in 2..=r_max {
        for v in 1..=r / 2 {
            for b in units(r) {
                triples.push(BasketEntry::new(r, b, v).expect("generated triples are valid"));
            }
        }
    }
    triples.sort_by_key(|e| (e.r(), e.v(), e.b()));
    Ok(triples)
}

/// Explores all multisets starting with `triples[first]` (entries taken
/// with repetition in non-decreasing index order), collecting those that
/// pass the consistency check.
fn oracle_explore_from(triples: &[BasketEntry], first: usize) -> Result<Vec<Basket>> {
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(4);
    let e = triples[first];
    let b_sum = b_value(e.r(), e.v()).expect("triple has r >= 2");
    stack.push(e);
    oracle_extend(triples, first, &mut stack, &b_sum, &mut out)?;
    Ok(out)
}

fn oracle_extend(
    triples: &[BasketEntry],
    min_idx: usize,
    stack: &mut Vec<BasketEntry>,
    b_sum: &Rational,
    out: &mut Vec<Basket>,
) -> Result<()> {
    if b_sum > &rat_int(1) {
        return Ok(());
    }
    let basket = Basket::new(stack.clone());
    if verify_delta(&basket)?.is_consistent() {
        out.push(basket);
    }
    if stack.len() == 4 {
        return Ok(());
    }
    for idx in min_idx..triples.len() {
        let e = triples[idx];
        let next_sum = b_sum + b_value(e.r(), e.v()).expect("triple has r >= 2");
        if next_sum > rat_int(1) {
            continue;
        }
        stack.push(e);
        oracle_extend(triples, idx, stack, &next_sum, out)?;
        stack.pop();
    }
    Ok(())
}
