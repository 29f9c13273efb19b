//! Cheap alternatives to the exact optimizer: the best approval rule and
//! a rational grid search.
//!
//! Approval rules are special: the gain of `t`-approval on a constraint
//! depends only on the sign of the `t`-th prefix sum of its delta vector,
//! so the best approval threshold falls out of one pass of integer prefix
//! arithmetic — no LPs, no rational vectors.  The grid search simply
//! enumerates all non-increasing score vectors on a `1/step` lattice and
//! keeps the best; it is a baseline, not a guarantee.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::model::{gain, Instance, ScoringVector};
use crate::rules::prefix_sums;
use crate::scalar::Scalar;
use crate::Rat;

/// Default bound on grid-search candidate count.
pub const DEFAULT_GRID_CAP: u64 = 5_000_000;

/// Gains of every approval threshold, plus the winner.
#[derive(Debug, Clone, PartialEq)]
pub struct ApprovalReport<S = Rat> {
    /// `gains[t - 1]` is the gain of `t`-approval, for `t = 1 ..= d`.
    pub gains: Vec<S>,
    /// Smallest threshold attaining the maximum gain.
    pub best_t: usize,
    /// That maximum gain.
    pub best_gain: S,
}

/// Computes the gain of every approval rule via prefix sums and reports
/// the best threshold (ties resolved toward smaller `t`).
pub fn best_approval<S: Scalar>(instance: &Instance<S>) -> ApprovalReport<S> {
    let d = instance.d();
    let mut gains = vec![S::zero(); d];
    for c in instance.constraints() {
        for (t, p) in prefix_sums(c.delta()).into_iter().enumerate() {
            if p > 0 {
                gains[t] = gains[t].clone() + c.weight().clone();
            }
        }
    }
    let mut best_t = 1;
    for t in 2..=d {
        if gains[t - 1] > gains[best_t - 1] {
            best_t = t;
        }
    }
    let best_gain = gains[best_t - 1].clone();
    ApprovalReport {
        gains,
        best_t,
        best_gain,
    }
}

/// Grid-search configuration.
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Lattice spacing; its reciprocal must be a positive integer.
    pub step: Rat,
    /// Refuse (with a resource-cap error) rather than enumerate more
    /// candidates than this.
    pub max_candidates: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            step: Rat::new(1.into(), 20.into()),
            max_candidates: DEFAULT_GRID_CAP,
        }
    }
}

/// Number of grid candidates for dimension `d` and the given step: the
/// count of non-increasing score vectors `1 = s_1 >= s_2 >= ... >= s_d`
/// with every tail score a multiple of the step in `[0, 1]` — the
/// binomial `C(N + d - 1, d - 1)` for `N = 1/step`.
pub fn grid_candidate_count(d: usize, step: &Rat) -> Result<BigUint> {
    let n = step_resolution(step)?;
    // C(n + d - 1, d - 1)
    let mut count = BigUint::one();
    for k in 1..d {
        count = count * BigUint::from(n + k as u64) / BigUint::from(k as u64);
    }
    Ok(count)
}

fn step_resolution(step: &Rat) -> Result<u64> {
    if !step.is_strictly_positive() || !step.numer().is_one() {
        return Err(Error::Validation(format!(
            "grid step must be the reciprocal of a positive integer, got {step}"
        )));
    }
    step.denom().to_u64().ok_or_else(|| {
        Error::Validation(format!(
            "grid step {step} is finer than this build supports"
        ))
    })
}

/// Enumerates every scoring vector on the grid (leading score fixed to 1,
/// scale-invariance makes that lossless for positive vectors) and returns
/// the first maximizer in descending-lexicographic order together with
/// its gain.
pub fn grid_search(instance: &Instance<Rat>, spec: &GridSpec) -> Result<(ScoringVector<Rat>, Rat)> {
    let d = instance.d();
    let n = step_resolution(&spec.step)?;
    let count = grid_candidate_count(d, &spec.step)?;
    if count > BigUint::from(spec.max_candidates) {
        return Err(Error::CapExceeded(format!(
            "grid search over d={d} at step {} means {count} candidates, above the cap of {}; \
             coarsen the step or raise the cap",
            spec.step, spec.max_candidates
        )));
    }

    let mut best: Option<(Rat, ScoringVector<Rat>)> = None;
    let mut levels = vec![n; d]; // levels[j] = s_{j+1} in units of the step
    loop {
        let scores: Vec<Rat> = levels
            .iter()
            .map(|&l| Rat::from_int(l as i64) * spec.step.clone())
            .collect();
        let sv = ScoringVector::new(scores)
            .map_err(|e| Error::Internal(format!("grid produced an invalid vector: {e}")))?;
        let g = gain(&sv, instance)?;
        match &best {
            Some((bg, _)) if g <= *bg => {}
            _ => best = Some((g, sv)),
        }
        if !descend(&mut levels) {
            break;
        }
    }
    let (best_gain, best_vector) = best.expect("the grid always has at least one point");
    Ok((best_vector, best_gain))
}

/// Steps `levels` to the next non-increasing tail vector in descending
/// lexicographic order (the head stays pinned at the maximum); returns
/// `false` once exhausted.
fn descend(levels: &mut [u64]) -> bool {
    let d = levels.len();
    for j in (1..d).rev() {
        if levels[j] > 0 {
            levels[j] -= 1;
            let fill = levels[j];
            for l in levels[j + 1..].iter_mut() {
                *l = fill;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::optimize_exact;
    use crate::model::{AlternativeId, Constraint};
    use crate::rules::{make_rule, NamedRule};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn ratio(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn unit_instance(d: usize, deltas: &[(Vec<i64>, i64)]) -> Instance<Rat> {
        let constraints = deltas
            .iter()
            .enumerate()
            .map(|(i, (delta, w))| {
                Constraint::new(
                    AlternativeId::new(format!("x{i}")).unwrap(),
                    AlternativeId::new(format!("y{i}")).unwrap(),
                    rat(*w),
                    delta.clone(),
                )
                .unwrap()
            })
            .collect();
        Instance::new(d, constraints).unwrap()
    }

    /// Dual route: the prefix-sum gains must equal evaluating the actual
    /// approval vectors through the generic gain function.
    #[test]
    fn prefix_gains_match_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for _ in 0..25 {
            let d = rng.gen_range(2usize..=5);
            let n = rng.gen_range(0usize..=8);
            let deltas: Vec<(Vec<i64>, i64)> = (0..n)
                .map(|_| {
                    (
                        (0..d).map(|_| rng.gen_range(-4i64..=4)).collect(),
                        rng.gen_range(0i64..=5),
                    )
                })
                .collect();
            let inst = unit_instance(d, &deltas);
            let report = best_approval(&inst);
            for t in 1..=d {
                let sv = make_rule(&NamedRule::Approval(t), d).unwrap();
                assert_eq!(gain(&sv, &inst).unwrap(), report.gains[t - 1], "t = {t}");
            }
        }
    }

    #[test]
    fn best_threshold_breaks_ties_toward_smaller_t() {
        // both thresholds satisfy exactly the same weight
        let inst = unit_instance(2, &[(vec![1, 0], 2), (vec![2, -1], 1)]);
        let report = best_approval(&inst);
        assert_eq!(report.gains, vec![rat(3), rat(3)]);
        assert_eq!(report.best_t, 1);
        assert_eq!(report.best_gain, rat(3));
    }

    #[test]
    fn empty_instance_has_zero_approval_gains() {
        let inst: Instance<Rat> = Instance::new(4, vec![]).unwrap();
        let report = best_approval(&inst);
        assert_eq!(report.gains, vec![rat(0); 4]);
        assert_eq!(report.best_t, 1);
    }

    #[test]
    fn candidate_count_formula() {
        // d=2, step=1/2: tails 0, 1/2, 1 -> 3 candidates
        assert_eq!(
            grid_candidate_count(2, &ratio(1, 2)).unwrap(),
            BigUint::from(3u32)
        );
        // d=3, step=1/2: non-increasing pairs from {0,1,2}: C(4,2) = 6
        assert_eq!(
            grid_candidate_count(3, &ratio(1, 2)).unwrap(),
            BigUint::from(6u32)
        );
        // d=6, step=1/20: C(25,5)
        assert_eq!(
            grid_candidate_count(6, &ratio(1, 20)).unwrap(),
            BigUint::from(53130u32)
        );
    }

    #[test]
    fn step_must_be_a_unit_fraction() {
        let inst = unit_instance(2, &[(vec![-2, 3], 3)]);
        for bad in [ratio(2, 3), rat(0), ratio(-1, 4)] {
            let spec = GridSpec {
                step: bad,
                max_candidates: 1000,
            };
            assert!(matches!(
                grid_search(&inst, &spec),
                Err(Error::Validation(_))
            ));
        }
    }

    #[test]
    fn candidate_cap_refuses_oversized_grids() {
        let inst = unit_instance(2, &[(vec![-2, 3], 3)]);
        let spec = GridSpec {
            step: ratio(1, 100),
            max_candidates: 10,
        };
        assert!(matches!(
            grid_search(&inst, &spec),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn quarter_grid_solves_the_three_constraint_instance() {
        let inst = unit_instance(2, &[(vec![-2, 3], 3), (vec![4, -2], 1), (vec![5, -6], 2)]);
        let spec = GridSpec {
            step: ratio(1, 4),
            max_candidates: 1000,
        };
        let (sv, g) = grid_search(&inst, &spec).unwrap();
        assert_eq!(g, rat(6));
        assert_eq!(sv.scores(), &[rat(1), ratio(3, 4)][..]);
    }

    #[test]
    fn ties_keep_the_lexicographically_largest_vector() {
        // every candidate has the same zero gain
        let inst = unit_instance(2, &[(vec![-1, 0], 1)]);
        let spec = GridSpec {
            step: ratio(1, 2),
            max_candidates: 1000,
        };
        let (sv, g) = grid_search(&inst, &spec).unwrap();
        assert_eq!(g, rat(0));
        assert_eq!(sv.scores(), &[rat(1), rat(1)][..]);
    }

    #[test]
    fn grid_optimum_never_exceeds_the_exact_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
        for _ in 0..15 {
            let d = rng.gen_range(2usize..=3);
            let n = rng.gen_range(1usize..=5);
            let deltas: Vec<(Vec<i64>, i64)> = (0..n)
                .map(|_| {
                    (
                        (0..d).map(|_| rng.gen_range(-3i64..=3)).collect(),
                        rng.gen_range(1i64..=4),
                    )
                })
                .collect();
            let inst = unit_instance(d, &deltas);
            let exact = optimize_exact(&inst).unwrap().best_gain;
            let spec = GridSpec {
                step: ratio(1, 6),
                max_candidates: 100_000,
            };
            let (_, g) = grid_search(&inst, &spec).unwrap();
            assert!(g <= exact, "grid {g} beat exact {exact} on {deltas:?}");
            let approval = best_approval(&inst);
            assert!(approval.best_gain <= exact);
        }
    }

    #[test]
    fn enumeration_order_is_descending_lexicographic() {
        let mut levels = vec![2u64, 2, 2];
        let mut seen = vec![levels.clone()];
        while descend(&mut levels) {
            seen.push(levels.clone());
        }
        assert_eq!(seen.len(), 6); // C(4, 2)
        assert_eq!(seen.first().unwrap(), &vec![2, 2, 2]);
        assert_eq!(seen.last().unwrap(), &vec![2, 0, 0]);
        // strictly descending lexicographically
        for w in seen.windows(2) {
            assert!(w[0] > w[1]);
        }
        // all tails non-increasing
        for lv in &seen {
            assert!(lv[1] >= lv[2]);
        }
    }
}
