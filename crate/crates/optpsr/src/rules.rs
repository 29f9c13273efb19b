//! Named scoring-rule families and the prefix-sum analysis of approval
//! rules.
//!
//! The key structural fact: a `t`-approval vector (`t` ones then zeros)
//! satisfies a constraint with delta vector `delta` iff the prefix sum
//! `delta_1 + ... + delta_t` is strictly positive.  Consequently each
//! constraint is satisfied exactly by the approval thresholds at or after
//! its first positive prefix, which yields a closed-form satisfiability
//! upper bound and a partition of the constraint set by that first
//! threshold.

use crate::error::{Error, Result};
use crate::model::{Instance, ScoringVector};
use crate::scalar::Scalar;

/// The scoring-rule families handled by name throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedRule<S = crate::Rat> {
    /// Scores `d, d-1, ..., 1`.
    Borda,
    /// Scores `1, 1/2, ..., 1/d` (exact only for fractional scalars).
    Harmonic,
    /// `t` ones followed by `d - t` zeros, `1 <= t <= d`.
    Approval(usize),
    /// An explicit score list, validated like any scoring vector.
    Custom(Vec<S>),
}

/// Materializes a named rule as a length-`d` scoring vector.
pub fn make_rule<S: Scalar>(rule: &NamedRule<S>, d: usize) -> Result<ScoringVector<S>> {
    if d < 2 {
        return Err(Error::Validation(format!(
            "rule dimension d must be at least 2, got {d}"
        )));
    }
    let scores = match rule {
        NamedRule::Borda => (0..d).map(|k| S::from_int((d - k) as i64)).collect(),
        NamedRule::Harmonic => (1..=d).map(|k| S::one() / S::from_int(k as i64)).collect(),
        NamedRule::Approval(t) => {
            if *t < 1 || *t > d {
                return Err(Error::Validation(format!(
                    "approval threshold must satisfy 1 <= t <= {d}, got {t}"
                )));
            }
            (0..d)
                .map(|k| if k < *t { S::one() } else { S::zero() })
                .collect()
        }
        NamedRule::Custom(scores) => {
            if scores.len() != d {
                return Err(Error::Validation(format!(
                    "custom rule has {} scores, expected {d}",
                    scores.len()
                )));
            }
            scores.clone()
        }
    };
    ScoringVector::new(scores)
}

/// Running sums `delta_1, delta_1 + delta_2, ...` of a delta vector.
pub fn prefix_sums(delta: &[i64]) -> Vec<i64> {
    let mut acc = 0i64;
    delta
        .iter()
        .map(|&x| {
            acc += x;
            acc
        })
        .collect()
}

/// First threshold `t` (1-based) whose `t`-approval satisfies the delta
/// vector, i.e. the position of the first strictly positive prefix sum;
/// `None` if no prefix is positive (no approval rule satisfies it).
pub fn first_satisfying_approval(delta: &[i64]) -> Option<usize> {
    prefix_sums(delta)
        .iter()
        .position(|&p| p > 0)
        .map(|i| i + 1)
}

/// Groups constraint indices by their first satisfying approval threshold:
/// entry `t - 1` of the result lists the constraints whose first positive
/// prefix sum is at position `t`.  Constraints with no positive prefix
/// appear in no group.
pub fn partition_by_first_approval<S: Scalar>(instance: &Instance<S>) -> Vec<Vec<usize>> {
    let mut groups = vec![Vec::new(); instance.d()];
    for (i, c) in instance.constraints().iter().enumerate() {
        if let Some(t) = first_satisfying_approval(c.delta()) {
            groups[t - 1].push(i);
        }
    }
    groups
}

/// Indices of constraints no valid scoring vector can satisfy: those whose
/// prefix sums are all non-positive.  (Every valid vector is a
/// non-negative combination of approval vectors, so a constraint failing
/// every approval threshold fails everywhere.)
pub fn unsatisfiable_constraints<S: Scalar>(instance: &Instance<S>) -> Vec<usize> {
    instance
        .constraints()
        .iter()
        .enumerate()
        .filter(|(_, c)| first_satisfying_approval(c.delta()).is_none())
        .map(|(i, _)| i)
        .collect()
}

/// Total weight of constraints satisfiable by *some* valid scoring vector:
/// exactly those with a strictly positive prefix sum somewhere.  No single
/// vector need attain this bound, but none can exceed it.
pub fn satisfiability_upper_bound<S: Scalar>(instance: &Instance<S>) -> S {
    instance
        .constraints()
        .iter()
        .filter(|c| first_satisfying_approval(c.delta()).is_some())
        .fold(S::zero(), |acc, c| acc + c.weight().clone())
}
