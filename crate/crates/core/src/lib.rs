//! Exact-arithmetic verification engines for a family of binomial-sum
//! identities, 1/pi series, and prime-power congruences.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! floating point only ever appears in final decimal rendering. The crate is
//! organised as four engines over a shared kernel:
//!
//! * [`context`] / [`sequences`]: memoised big-integer kernel (binomials,
//!   central trinomial coefficients, convolution sums, Euler numbers).
//! * [`identities`]: finite certification of convolution identities and the
//!   order-2 recurrences attached to them.
//! * [`series`]: exact partial sums of the registered 1/pi series with
//!   geometric tail-bound certification against high-precision targets.
//! * [`congruences`]: residue checks of the registered congruences over
//!   prime ranges, including Legendre-symbol case splits and binary
//!   quadratic form representations.

pub mod congruences;
pub mod context;
pub mod error;
pub mod identities;
pub mod modular;
pub mod primes;
mod rawspec;
pub mod report;
pub mod sequences;
pub mod series;

pub use congruences::{
    check_case, legendre, lhs_sum_exact, lhs_sum_mod, quadform_rep, run_suite, scan_5_9,
    Branch, BranchValue, CongruenceCase, QuadFormRep, RhsRule, RhsTerm, ScanRow, SumSpec, Sym,
    Verdict,
};
pub use context::Context;
pub use error::Error;
pub use identities::{
    verify_identity, verify_recurrence, verify_s_properties, IdentityId, RecurrenceId,
    RecurrenceSide, SPropertiesReport,
};
pub use report::{CheckResult, Item, ItemKind, Report, Status, Timings};
pub use sequences::{Factor, SequenceId};
pub use series::{
    check_1_10, check_convergence, check_lemma_3_2, eval_2f1, partial_sum, series_registry,
    target_value, ConvergenceReport, PrecisionBudget, SeriesSpec, Target,
};

/// Arbitrary-precision signed integer used throughout.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational; always kept in lowest terms by construction.
pub type Rat = num_rational::BigRational;

/// Crate version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
