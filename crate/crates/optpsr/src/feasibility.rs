//! Exact feasibility of sign systems over valid scoring vectors.
//!
//! A [`LinearSystem`] asks: is there a valid scoring vector `s`
//! (non-increasing, non-negative) with `delta · s > 0` for every *strict*
//! row and `delta · s <= 0` for every *non-strict* row?
//!
//! Method: scale-invariance lets us normalize `s_1 = 1` (the only valid
//! vector left out is the all-zero vector, which satisfies no strict row
//! and is deliberately not counted as a witness).  Strict rows are relaxed
//! to `delta · s >= tau` with a shared slack `tau <= 1`, all scores are
//! boxed into `[0, 1]`, and an exact simplex maximizes `tau`.  The system
//! is feasible iff the optimum is strictly positive; the optimal vertex
//! yields a rational witness.  Every comparison is exact — no tolerance
//! anywhere.

use crate::error::{Error, Result};
use crate::model::{delta_dot, ScoringVector};
use crate::scalar::Scalar;
use crate::simplex::{maximize, Outcome, Rel, Row};

/// A conjunction of sign conditions over length-`d` delta vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    d: usize,
    strict: Vec<Vec<i64>>,
    nonstrict: Vec<Vec<i64>>,
}

impl LinearSystem {
    /// Validates dimensions (`d >= 2`, every row of length `d`).
    pub fn new(d: usize, strict: Vec<Vec<i64>>, nonstrict: Vec<Vec<i64>>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Validation(format!(
                "system dimension d must be at least 2, got {d}"
            )));
        }
        for row in strict.iter().chain(&nonstrict) {
            if row.len() != d {
                return Err(Error::Validation(format!(
                    "system row has length {}, expected {d}",
                    row.len()
                )));
            }
        }
        Ok(LinearSystem {
            d,
            strict,
            nonstrict,
        })
    }

    /// Dimension of the score space.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Rows required strictly positive.
    pub fn strict(&self) -> &[Vec<i64>] {
        &self.strict
    }

    /// Rows required non-positive.
    pub fn nonstrict(&self) -> &[Vec<i64>] {
        &self.nonstrict
    }
}

/// Outcome of a feasibility check.
#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility<S = crate::Rat> {
    /// The system has a solution; the witness satisfies every row
    /// (verifiable with [`verify_witness`]) and is normalized to lead
    /// with score 1.
    Feasible(ScoringVector<S>),
    /// No valid scoring vector satisfies the system.
    Infeasible,
}

impl<S> Feasibility<S> {
    /// `true` iff a witness exists.
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    /// The witness, if feasible.
    pub fn witness(&self) -> Option<&ScoringVector<S>> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides whether any valid scoring vector satisfies the system, and
/// produces an exact witness when one does.
///
/// Runs one exact LP in `d` variables (`s_2 .. s_d` and the slack).  An
/// all-zero strict row is rejected without solving: no vector makes
/// `0 > 0` true.
pub fn check<S: Scalar>(system: &LinearSystem) -> Result<Feasibility<S>> {
    let d = system.d;
    if system.strict.iter().any(|row| row.iter().all(|&c| c == 0)) {
        return Ok(Feasibility::Infeasible);
    }

    // Variables: x_0 .. x_{d-2} are s_2 .. s_d, x_{d-1} is the slack tau.
    let n = d;
    let tau = d - 1;
    let mut rows: Vec<Row<S>> = Vec::new();
    for delta in &system.strict {
        // sum_{j>=2} delta_j s_j - tau >= -delta_1
        let mut coeffs = vec![S::zero(); n];
        for j in 1..d {
            coeffs[j - 1] = S::from_int(delta[j]);
        }
        coeffs[tau] = -S::one();
        rows.push(Row {
            coeffs,
            rel: Rel::Ge,
            rhs: S::from_int(-delta[0]),
        });
    }
    for delta in &system.nonstrict {
        // sum_{j>=2} delta_j s_j <= -delta_1
        let mut coeffs = vec![S::zero(); n];
        for j in 1..d {
            coeffs[j - 1] = S::from_int(delta[j]);
        }
        rows.push(Row {
            coeffs,
            rel: Rel::Le,
            rhs: S::from_int(-delta[0]),
        });
    }
    // Monotonicity within the tail: s_i >= s_{i+1} for i = 2 .. d-1.
    for i in 0..d.saturating_sub(2) {
        let mut coeffs = vec![S::zero(); n];
        coeffs[i] = S::one();
        coeffs[i + 1] = -S::one();
        rows.push(Row {
            coeffs,
            rel: Rel::Ge,
            rhs: S::zero(),
        });
    }
    // Box: s_j <= 1 (s_2 <= 1 doubles as s_1 >= s_2), tau <= 1.
    for j in 0..n {
        let mut coeffs = vec![S::zero(); n];
        coeffs[j] = S::one();
        rows.push(Row {
            coeffs,
            rel: Rel::Le,
            rhs: S::one(),
        });
    }

    let mut objective = vec![S::zero(); n];
    objective[tau] = S::one();

    match maximize(&objective, &rows) {
        Outcome::Infeasible => Ok(Feasibility::Infeasible),
        Outcome::Unbounded => Err(Error::Internal(
            "slack-maximization program cannot be unbounded: the slack is boxed".into(),
        )),
        Outcome::Optimal { value, point } => {
            if value.is_strictly_positive() {
                let mut scores = Vec::with_capacity(d);
                scores.push(S::one());
                scores.extend(point[..d - 1].iter().cloned());
                let witness = ScoringVector::new(scores).map_err(|e| {
                    Error::Internal(format!("simplex produced an invalid witness: {e}"))
                })?;
                Ok(Feasibility::Feasible(witness))
            } else {
                Ok(Feasibility::Infeasible)
            }
        }
    }
}

/// Checks, exactly, whether `sv` satisfies every row of the system.
/// A vector of the wrong dimension satisfies nothing and yields `false`.
pub fn verify_witness<S: Scalar>(system: &LinearSystem, sv: &ScoringVector<S>) -> bool {
    if sv.len() != system.d {
        return false;
    }
    system
        .strict
        .iter()
        .all(|row| delta_dot(row, sv.scores()).is_strictly_positive())
        && system
            .nonstrict
            .iter()
            .all(|row| !delta_dot(row, sv.scores()).is_strictly_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn check_rat(system: &LinearSystem) -> Feasibility<Rat> {
        check(system).unwrap()
    }

    fn sys(d: usize, strict: Vec<Vec<i64>>, nonstrict: Vec<Vec<i64>>) -> LinearSystem {
        LinearSystem::new(d, strict, nonstrict).unwrap()
    }

    #[test]
    fn dimension_validation() {
        assert!(LinearSystem::new(1, vec![], vec![]).is_err());
        assert!(LinearSystem::new(2, vec![vec![1]], vec![]).is_err());
        assert!(LinearSystem::new(2, vec![], vec![vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn empty_system_is_feasible() {
        let f = check_rat(&sys(3, vec![], vec![]));
        let w = f.witness().expect("empty system must be feasible");
        assert_eq!(w.scores()[0], Rat::from_int(1));
    }

    #[test]
    fn single_satisfiable_strict_row() {
        let system = sys(2, vec![vec![-2, 3]], vec![]);
        let f = check_rat(&system);
        assert!(f.is_feasible());
        assert!(verify_witness(&system, f.witness().unwrap()));
    }

    #[test]
    fn two_strict_rows_with_fractional_witness() {
        // -2 + 3 s_2 > 0 and 5 - 6 s_2 > 0 force s_2 strictly inside (2/3, 5/6).
        let system = sys(2, vec![vec![-2, 3], vec![5, -6]], vec![]);
        let f = check_rat(&system);
        let w = f.witness().expect("jointly satisfiable");
        assert!(verify_witness(&system, w));
        let s2 = &w.scores()[1];
        assert!(*s2 > Rat::new(2.into(), 3.into()));
        assert!(*s2 < Rat::new(5.into(), 6.into()));
    }

    #[test]
    fn monotonicity_makes_trailing_dominance_infeasible() {
        // s_2 - s_1 > 0 contradicts s_1 >= s_2.
        let system = sys(2, vec![vec![-1, 1]], vec![]);
        assert_eq!(check_rat(&system), Feasibility::Infeasible);
        // ... and with slack: s_2 - s_1 >= 0 is fine non-strictly reversed:
        let system = sys(2, vec![], vec![vec![-1, 1]]);
        assert!(check_rat(&system).is_feasible());
    }

    #[test]
    fn all_zero_strict_row_is_rejected_without_solving() {
        let system = sys(3, vec![vec![0, 0, 0]], vec![]);
        assert_eq!(check_rat(&system), Feasibility::Infeasible);
    }

    #[test]
    fn all_zero_nonstrict_row_is_trivially_satisfied() {
        let system = sys(3, vec![], vec![vec![0, 0, 0]]);
        assert!(check_rat(&system).is_feasible());
    }

    #[test]
    fn nonstrict_rows_can_still_be_infeasible() {
        // delta = (1, 0): s_1 <= 0 contradicts the s_1 = 1 normalization;
        // only the all-zero vector would comply, and it witnesses nothing.
        let system = sys(2, vec![], vec![vec![1, 0]]);
        assert_eq!(check_rat(&system), Feasibility::Infeasible);
    }

    #[test]
    fn mixed_strict_and_nonstrict() {
        let system = sys(2, vec![vec![2, -1]], vec![vec![-1, 2]]);
        let f = check_rat(&system);
        let w = f.witness().expect("satisfiable");
        assert!(verify_witness(&system, w));
        // nonstrict row forces s_2 <= 1/2
        assert!(w.scores()[1] <= Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn conflicting_signs_on_the_same_row_are_infeasible() {
        let system = sys(3, vec![vec![-1, 2, 0]], vec![vec![-1, 2, 0]]);
        assert_eq!(check_rat(&system), Feasibility::Infeasible);
    }

    #[test]
    fn witness_has_unit_lead_and_valid_shape() {
        let system = sys(
            4,
            vec![vec![-2, 3, 0, 0], vec![0, 1, -1, 0]],
            vec![vec![0, 0, 1, -1]],
        );
        let f = check_rat(&system);
        let w = f.witness().expect("satisfiable");
        assert_eq!(w.scores()[0], Rat::from_int(1));
        assert!(verify_witness(&system, w));
    }

    #[test]
    fn wrong_dimension_never_verifies() {
        let system = sys(3, vec![], vec![]);
        let sv = ScoringVector::new(vec![Rat::from_int(1), Rat::from_int(0)]).unwrap();
        assert!(!verify_witness(&system, &sv));
    }

    /// Grid oracle, satisfiable direction: if some vector on a coarse
    /// rational grid satisfies the system, `check` must agree.  Runs over
    /// an exhaustive family of small sign systems.
    #[test]
    fn grid_oracle_agrees_on_small_systems() {
        let grid: Vec<Rat> = (0..=4).map(|n| Rat::new(n.into(), 4.into())).collect();
        let coeffs = [-2i64, -1, 0, 1, 2];
        let mut checked = 0;
        for &a1 in &coeffs {
            for &a2 in &coeffs {
                for &b1 in &coeffs {
                    for &b2 in &coeffs {
                        let system = sys(2, vec![vec![a1, a2]], vec![vec![b1, b2]]);
                        let verdict = check_rat(&system);
                        let mut grid_hit = false;
                        for s2 in &grid {
                            let sv =
                                ScoringVector::new(vec![Rat::from_int(1), s2.clone()]).unwrap();
                            if verify_witness(&system, &sv) {
                                grid_hit = true;
                                break;
                            }
                        }
                        if grid_hit {
                            assert!(
                                verdict.is_feasible(),
                                "grid found a witness but check said infeasible: \
                                 strict ({a1},{a2}), nonstrict ({b1},{b2})"
                            );
                        }
                        if let Feasibility::Feasible(w) = &verdict {
                            assert!(verify_witness(&system, w));
                        }
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked, 625);
    }
}
