//! Independent oracles for the relative class number `h⁻` of `Q(ζ_p)`:
//! the exact Maillet determinant, its `h`-adic valuation, an analytic
//! floating-point value, and the Bernoulli irregularity index.

mod analytic;
mod bernoulli;
mod maillet;
mod valuation;

pub use analytic::{analytic_hminus, ANALYTIC_BOUND};
pub use bernoulli::{irregular_index, BernoulliTable, IRREGULAR_BOUND};
pub use maillet::{
    big_valuation, exact_hminus, exact_hminus_bounded, maillet_matrix, HMinusResult, MailletMatrix,
    DEFAULT_EXACT_BOUND,
};
pub use valuation::{
    hminus_valuation, hminus_valuation_capped, hminus_valuation_of, ValuationResult,
    DEFAULT_PRECISION_CAP, INITIAL_PRECISION,
};
