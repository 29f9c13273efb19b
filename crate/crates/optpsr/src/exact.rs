//! Globally optimal scoring-vector search.
//!
//! [`optimize_exact`] sweeps the constraints once, maintaining a pool of
//! feasible *regions* — maximal sets of valid scoring vectors sharing a
//! sign assignment over the constraints seen so far.  Processing a
//! constraint splits each region into its strict side (`delta · s > 0`)
//! and non-strict side (`delta · s <= 0`):
//!
//! * both sides feasible — the region is replaced by the two children, the
//!   strict child's gain raised by the constraint weight;
//! * only the strict side feasible — the whole region satisfies the
//!   constraint: its gain rises in place;
//! * only the non-strict side feasible — the region is unchanged.
//!
//! Both sides infeasible is impossible for a feasible parent; hitting it
//! means a bug and raises an internal-consistency error.  The parent's
//! witness always certifies one side for free (evaluate the new delta at
//! the witness), so each region costs at most one LP per constraint.  The
//! final answer is the maximum gain over the pool, and the winning
//! region's witness is the optimal vector — re-validated against an
//! independent gain recomputation before being returned.
//!
//! [`optimize_naive`] enumerates all `2^n` sign assignments outright.  It
//! is exponential and capped accordingly, but entirely independent of the
//! pool bookkeeping, which makes it the natural cross-check oracle.

use crate::error::{Error, Result};
use crate::feasibility::{check, verify_witness, Feasibility, LinearSystem};
use crate::model::{delta_dot, gain, Instance, ScoringVector};
use crate::scalar::Scalar;

/// Default bound on the region pool size for [`optimize_exact`].
pub const DEFAULT_REGION_CAP: usize = 2_000_000;

/// Default bound on the constraint count for [`optimize_naive`].
pub const DEFAULT_NAIVE_CAP: usize = 20;

/// Tuning knobs for the exact optimizer.
#[derive(Debug, Clone)]
pub struct ExactOptions {
    /// Refuse (with a resource-cap error) rather than let the region pool
    /// grow beyond this many regions.
    pub region_cap: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            region_cap: DEFAULT_REGION_CAP,
        }
    }
}

/// One feasible sign-region of the pool.
///
/// The index sets refer to constraint positions in the instance.  Every
/// vector in the region satisfies each `satisfied` constraint strictly
/// and fails each `violated` constraint; the witness is one such vector,
/// normalized to lead with score 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Region<S = crate::Rat> {
    satisfied: Vec<usize>,
    violated: Vec<usize>,
    gain: S,
    witness: ScoringVector<S>,
    /// Subset of `satisfied` whose rows actually bound the region (added
    /// at genuine splits); the rest are implied and kept out of the LPs.
    defining_strict: Vec<usize>,
    /// Subset of `violated` that bounds the region, likewise.
    defining_nonstrict: Vec<usize>,
}

impl<S: Scalar> Region<S> {
    /// Constraints every vector in the region satisfies.
    pub fn satisfied(&self) -> &[usize] {
        &self.satisfied
    }

    /// Constraints every vector in the region fails.
    pub fn violated(&self) -> &[usize] {
        &self.violated
    }

    /// Total weight of the satisfied constraints.
    pub fn gain(&self) -> &S {
        &self.gain
    }

    /// A vector inside the region.
    pub fn witness(&self) -> &ScoringVector<S> {
        &self.witness
    }

    /// The full sign system of this region (satisfied rows strict,
    /// violated rows non-strict); its witness satisfies every row.
    pub fn sign_system(&self, instance: &Instance<S>) -> Result<LinearSystem> {
        let pick = |ks: &[usize]| {
            ks.iter()
                .map(|&k| instance.constraints()[k].delta().to_vec())
                .collect::<Vec<_>>()
        };
        LinearSystem::new(instance.d(), pick(&self.satisfied), pick(&self.violated))
    }

    fn defining_system(
        &self,
        instance: &Instance<S>,
        extra_strict: Option<usize>,
        extra_nonstrict: Option<usize>,
    ) -> Result<LinearSystem> {
        let pick = |ks: &[usize], extra: Option<usize>| {
            ks.iter()
                .copied()
                .chain(extra)
                .map(|k| instance.constraints()[k].delta().to_vec())
                .collect::<Vec<_>>()
        };
        LinearSystem::new(
            instance.d(),
            pick(&self.defining_strict, extra_strict),
            pick(&self.defining_nonstrict, extra_nonstrict),
        )
    }
}

/// Result of an optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult<S = crate::Rat> {
    /// An optimal scoring vector.
    pub best_vector: ScoringVector<S>,
    /// Its gain, equal to `gain(best_vector, instance)` by construction
    /// (the equality is re-checked before returning).
    pub best_gain: S,
    /// For the pool optimizer: regions ever materialized in the pool,
    /// counting the initial validity cone and both children of every
    /// split.  For the naive optimizer: feasibility checks performed.
    pub regions_explored: usize,
    /// Number of constraints swept.
    pub constraints_processed: usize,
}

/// A full pool trace: the pool after each constraint, for inspection.
#[derive(Debug, Clone)]
pub struct PoolTrace<S = crate::Rat> {
    /// `snapshots[0]` is the initial pool (the validity cone alone);
    /// `snapshots[t]` is the pool after processing constraint `t - 1`.
    pub snapshots: Vec<Vec<Region<S>>>,
    /// The optimization outcome, identical to what
    /// [`optimize_exact_with`] returns for the same options.
    pub result: ExactResult<S>,
}

/// Divides out the content of a delta vector, yielding a canonical
/// representative of its direction (positive multiples coincide).
fn normalize_direction(delta: &[i64]) -> Vec<i64> {
    let g = delta
        .iter()
        .fold(0u64, |g, &x| num_integer::gcd(g, x.unsigned_abs()));
    if g <= 1 {
        return delta.to_vec();
    }
    delta.iter().map(|&x| x / g as i64).collect()
}

struct PoolRun<S> {
    pool: Vec<Region<S>>,
    snapshots: Option<Vec<Vec<Region<S>>>>,
    regions_explored: usize,
}

fn run_pool<S: Scalar>(
    instance: &Instance<S>,
    options: &ExactOptions,
    record: bool,
) -> Result<PoolRun<S>> {
    let empty = LinearSystem::new(instance.d(), vec![], vec![])?;
    let Feasibility::Feasible(root_witness) = check::<S>(&empty)? else {
        return Err(Error::Internal(
            "the unconstrained validity cone must be feasible".into(),
        ));
    };
    let mut pool = vec![Region {
        satisfied: Vec::new(),
        violated: Vec::new(),
        gain: S::zero(),
        witness: root_witness,
        defining_strict: Vec::new(),
        defining_nonstrict: Vec::new(),
    }];
    let mut explored = 1usize;
    let mut snapshots = record.then(|| vec![pool.clone()]);

    let directions: Vec<Vec<i64>> = instance
        .constraints()
        .iter()
        .map(|c| normalize_direction(c.delta()))
        .collect();

    for (idx, c) in instance.constraints().iter().enumerate() {
        let delta = c.delta();
        let weight = c.weight();
        let mut next: Vec<Region<S>> = Vec::with_capacity(pool.len());
        for mut region in pool {
            // A repeated direction needs no LP: the region already lies
            // entirely on one side of this hyperplane.
            if region
                .defining_strict
                .iter()
                .any(|&k| directions[k] == directions[idx])
            {
                region.gain = region.gain + weight.clone();
                region.satisfied.push(idx);
                next.push(region);
                continue;
            }
            if region
                .defining_nonstrict
                .iter()
                .any(|&k| directions[k] == directions[idx])
            {
                next.push(region);
                continue;
            }

            let witness_strict = delta_dot(delta, region.witness.scores()).is_strictly_positive();
            if witness_strict {
                // Strict side certified by the witness; LP decides the
                // non-strict side.
                let child = region.defining_system(instance, None, Some(idx))?;
                match check::<S>(&child)? {
                    Feasibility::Feasible(nonstrict_witness) => {
                        debug_assert!(verify_witness(&child, &nonstrict_witness));
                        let mut strict_child = region.clone();
                        strict_child.satisfied.push(idx);
                        strict_child.defining_strict.push(idx);
                        strict_child.gain = strict_child.gain + weight.clone();
                        let mut nonstrict_child = region;
                        nonstrict_child.violated.push(idx);
                        nonstrict_child.defining_nonstrict.push(idx);
                        nonstrict_child.witness = nonstrict_witness;
                        explored += 2;
                        next.push(strict_child);
                        next.push(nonstrict_child);
                    }
                    Feasibility::Infeasible => {
                        // Whole region satisfies the constraint.  Re-derive
                        // the certificate instead of trusting the branch:
                        // if the strict side were somehow infeasible too,
                        // the pool invariant is broken.
                        let full = region.defining_system(instance, Some(idx), None)?;
                        if !verify_witness(&full, &region.witness) {
                            return Err(Error::Internal(format!(
                                "constraint {idx} splits a region into two infeasible sides"
                            )));
                        }
                        region.gain = region.gain + weight.clone();
                        region.satisfied.push(idx);
                        next.push(region);
                    }
                }
            } else {
                // Non-strict side certified; LP decides the strict side.
                let child = region.defining_system(instance, Some(idx), None)?;
                match check::<S>(&child)? {
                    Feasibility::Feasible(strict_witness) => {
                        debug_assert!(verify_witness(&child, &strict_witness));
                        let mut strict_child = region.clone();
                        strict_child.satisfied.push(idx);
                        strict_child.defining_strict.push(idx);
                        strict_child.gain = strict_child.gain + weight.clone();
                        strict_child.witness = strict_witness;
                        let mut nonstrict_child = region;
                        nonstrict_child.violated.push(idx);
                        nonstrict_child.defining_nonstrict.push(idx);
                        explored += 2;
                        next.push(strict_child);
                        next.push(nonstrict_child);
                    }
                    Feasibility::Infeasible => {
                        // Whole region fails the constraint; nothing to
                        // record.
                        next.push(region);
                    }
                }
            }
            if next.len() > options.region_cap {
                return Err(Error::CapExceeded(format!(
                    "region pool grew past {} regions while processing constraint {idx}; \
                     raise the region cap to continue",
                    options.region_cap
                )));
            }
        }
        pool = next;
        if let Some(snaps) = &mut snapshots {
            snaps.push(pool.clone());
        }
    }

    Ok(PoolRun {
        pool,
        snapshots,
        regions_explored: explored,
    })
}

fn best_of_pool<S: Scalar>(
    pool: &[Region<S>],
    instance: &Instance<S>,
    regions_explored: usize,
) -> Result<ExactResult<S>> {
    let best = pool
        .iter()
        .reduce(|best, r| if r.gain > best.gain { r } else { best })
        .ok_or_else(|| Error::Internal("region pool cannot be empty".into()))?;
    let result = ExactResult {
        best_vector: best.witness.clone(),
        best_gain: best.gain.clone(),
        regions_explored,
        constraints_processed: instance.constraints().len(),
    };
    // Independent recomputation: the winning witness must actually earn
    // the gain the bookkeeping claims.
    let recomputed = gain(&result.best_vector, instance)?;
    if recomputed != result.best_gain {
        return Err(Error::Internal(format!(
            "pool bookkeeping claims gain {} but the witness earns {recomputed}",
            result.best_gain
        )));
    }
    Ok(result)
}

/// Finds a gain-maximizing scoring vector with default options.
pub fn optimize_exact<S: Scalar>(instance: &Instance<S>) -> Result<ExactResult<S>> {
    optimize_exact_with(instance, &ExactOptions::default())
}

/// Finds a gain-maximizing scoring vector by the region-pool sweep.
pub fn optimize_exact_with<S: Scalar>(
    instance: &Instance<S>,
    options: &ExactOptions,
) -> Result<ExactResult<S>> {
    let run = run_pool(instance, options, false)?;
    best_of_pool(&run.pool, instance, run.regions_explored)
}

/// Runs the pool sweep and keeps a snapshot of the pool after every
/// constraint, for debugging and for validating the sweep itself.
pub fn trace_pool<S: Scalar>(
    instance: &Instance<S>,
    options: &ExactOptions,
) -> Result<PoolTrace<S>> {
    let run = run_pool(instance, options, true)?;
    let result = best_of_pool(&run.pool, instance, run.regions_explored)?;
    Ok(PoolTrace {
        snapshots: run.snapshots.expect("recording was requested"),
        result,
    })
}

/// Exhaustive oracle with the default constraint cap.
pub fn optimize_naive<S: Scalar>(instance: &Instance<S>) -> Result<ExactResult<S>> {
    optimize_naive_with_cap(instance, DEFAULT_NAIVE_CAP)
}

/// Exhaustive oracle: tries every sign assignment over the constraints
/// (strict on a subset, non-strict on the rest) with one feasibility
/// check each, keeping the heaviest feasible subset.
///
/// Exponential in the constraint count; refuses instances larger than
/// `cap`.  Subsets whose total weight cannot beat the current best are
/// skipped — a pure short-circuit that cannot change the answer.
pub fn optimize_naive_with_cap<S: Scalar>(
    instance: &Instance<S>,
    cap: usize,
) -> Result<ExactResult<S>> {
    let n = instance.constraints().len();
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "naive enumeration would visit 2^{n} sign assignments but the cap is {cap} \
             constraints; use optimize_exact for instances this large"
        )));
    }
    if n >= 64 {
        return Err(Error::CapExceeded(format!(
            "naive enumeration is limited to 63 constraints, got {n}; use optimize_exact"
        )));
    }

    let mut best: Option<(S, ScoringVector<S>)> = None;
    let mut checks = 0usize;
    for mask in 0u64..(1u64 << n) {
        let mut weight = S::zero();
        for (i, c) in instance.constraints().iter().enumerate() {
            if mask & (1 << i) != 0 {
                weight = weight + c.weight().clone();
            }
        }
        if let Some((best_gain, _)) = &best {
            if weight <= *best_gain {
                continue;
            }
        }
        let mut strict = Vec::new();
        let mut nonstrict = Vec::new();
        for (i, c) in instance.constraints().iter().enumerate() {
            if mask & (1 << i) != 0 {
                strict.push(c.delta().to_vec());
            } else {
                nonstrict.push(c.delta().to_vec());
            }
        }
        let system = LinearSystem::new(instance.d(), strict, nonstrict)?;
        checks += 1;
        if let Feasibility::Feasible(witness) = check::<S>(&system)? {
            best = Some((weight, witness));
        }
    }

    let Some((best_gain, best_vector)) = best else {
        return Err(Error::Internal(
            "some sign assignment is always feasible, yet none was found".into(),
        ));
    };
    let recomputed = gain(&best_vector, instance)?;
    if recomputed != best_gain {
        return Err(Error::Internal(format!(
            "naive bookkeeping claims gain {best_gain} but the witness earns {recomputed}"
        )));
    }
    Ok(ExactResult {
        best_vector,
        best_gain,
        regions_explored: checks,
        constraints_processed: n,
    })
}
