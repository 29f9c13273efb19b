//! Optimal positional scoring rules for incomplete-ranking aggregation.
//!
//! A group of agents each rank `d` alternatives drawn from some larger
//! universe.  A *positional scoring rule* assigns a score to every rank
//! position (non-increasing, non-negative) and scores each alternative by
//! summing the positional scores over all votes that mention it.  Given a
//! set of weighted pairwise constraints ("x should beat y"), this crate
//! finds the scoring vector maximizing the total weight of satisfied
//! constraints:
//!
//! * [`exact::optimize_exact`] — globally optimal search over a pool of
//!   feasible sign-regions, one exact LP feasibility check per candidate
//!   split.
//! * [`approx::best_approval`] — the best `t`-approval rule, computable in
//!   closed form from prefix sums.
//! * [`approx::grid_search`] — rational grid enumeration, a cheap baseline.
//!
//! Satisfaction is decided with exact rational arithmetic throughout; no
//! floating-point comparison ever decides whether a constraint holds.  The
//! [`generators`] module produces synthetic inputs (noise-model samplers,
//! hardness gadgets, tight worst-case instances) and [`experiment`] runs
//! seeded benchmark sweeps over named rules.

pub mod approx;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod feasibility;
pub mod formats;
pub mod generators;
pub mod model;
pub mod rules;
pub mod scalar;
mod simplex;

pub use error::{Error, Result};
pub use model::{
    build_instance, count_positions, gain, rank_alternatives, score, AlternativeId, Constraint,
    Instance, PositionCounts, RankingProfile, ScoringVector, Vote,
};
pub use scalar::Scalar;

/// Exact rational scalar: the canonical instantiation of every generic
/// structure in this crate.  All satisfaction tests are decided in this
/// type; approximate instantiations (`f64`) are for scoring output only.
pub type Rat = num_rational::BigRational;
