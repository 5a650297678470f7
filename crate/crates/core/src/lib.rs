//! Exact local Riemann-Roch contributions for terminal cyclic quotient
//! singularities, basket consistency checks, and the machine verification
//! of the resulting classification of consistent baskets.
//!
//! Everything is computed in exact rational arithmetic; no value in this
//! crate is ever a float. The main entry points:
//!
//! * [`contrib`] — the contribution functions `A`, `B` and `c` of a
//!   quotient singularity of type `1/r(1, -1, b)`.
//! * [`basket`] — baskets of fictitious singularities with divisor data,
//!   the lcm index, the periodic consistency check and the constant-term
//!   solver.
//! * [`classify`] — the two-stage enumeration of all consistent baskets
//!   and the brute-force oracle that cross-checks it.
//!
//! With the `parallel` feature (on by default) the enumeration fans out
//! over rayon; results are merged into canonical order either way, so
//! output is deterministic.

pub mod basket;
pub mod classify;
pub mod contrib;
pub mod error;
pub mod rational;

pub use basket::{
    delta_diff_rhs, f_min, lcm_index, solve_gamma, verify_delta, Basket, BasketDocument,
    BasketEntry, DeltaProfile, GammaOutcome, Notice, RawEntry, Verdict,
};
pub use classify::{
    candidate_v_multisets, classify_stage_j, classify_stage_j_tilde, max_index, oracle_enumerate,
    oracle_enumerate_sequential, solve_r, ClassificationRow, JTildeType, JType, RowData, RowLabel,
};
pub use contrib::{a_value, b_value, basket_c_contribution, c_contribution, residue, CyclicQuotient};
pub use error::{Error, Result};
pub use rational::{rat, rat_int, Rational};
