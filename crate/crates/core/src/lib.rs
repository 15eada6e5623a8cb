//! Exact one-sided confidence bounds for comparing two diagnostic tests
//! from paired 2x2 count data, without a gold standard.
//!
//! The library has three layers:
//!
//! * [`model`] — probability primitives: the latent class parameter space
//!   for two dichotomous tests, the marginal map onto observed result-pair
//!   densities, and log-scale multinomial/trinomial/binomial mass functions.
//! * [`geometry`] — the exact feasible sets of (prevalence, specificity,
//!   sensitivity) values compatible with a given observed density, with
//!   membership predicates, a constructive parameter reconstruction, and a
//!   seeded sampler used as a brute-force oracle.
//! * [`bounds`] / [`analysis`] — a self-contained Buehler-type engine for
//!   exact lower/upper confidence bounds on the trinomial difference
//!   `p1 - p2`, and the high-level analysis that turns a paired 2x2 table
//!   into prevalence-times-sensitivity-gain and sensitivity bounds.
//!
//! [`verify`] holds the independent oracles: exact coverage by full
//! enumeration, Monte Carlo coverage under the latent class models, and the
//! feasible-set validation suite.

pub mod analysis;
pub mod bounds;
pub mod geometry;
pub mod model;
pub mod verify;

/// Engine identifier reported in results and by the CLI `--version`.
pub const ENGINE_ID: &str = "buehler-bisect-1";
/// Identifier of the designated (outcome-ordering) statistic.
pub const STATISTIC_ID: &str = "wald-cc-lower";

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input: the message names the offending field or constraint.
    #[error("validation error: {0}")]
    Validation(String),
    /// A point claimed feasible fails the membership predicate.
    #[error("infeasible point: {0}")]
    Infeasible(String),
    /// A computation would exceed its configured budget.
    #[error("resource limit exceeded: required {required}, budget {budget}")]
    Resource { required: usize, budget: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
