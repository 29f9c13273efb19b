//! The benchmark harness: ground-truth utilities over a universe induce
//! weighted pairwise constraints; repeated synthetic profiles are sampled
//! under a noise model; each rule is scored by its mean gain as a share
//! of the total constraint weight.
//!
//! Repetitions run concurrently, each on its own derived seed, and the
//! aggregation is exact rational summation — so reports are byte-stable
//! regardless of thread scheduling.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{
    assign_bundles, derive_seed, sample_bt_with, sample_pl, UtilityTable, DEFAULT_BT_MAX_ATTEMPTS,
};
use crate::model::{build_instance, gain, AlternativeId, RankingProfile};
use crate::rules::{make_rule, NamedRule};
use crate::scalar::Scalar;
use crate::Rat;

/// How synthetic votes are drawn from ground-truth utilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseModel {
    /// Sequential proportional selection ([`sample_pl`]).
    PlackettLuce,
    /// Independent pairwise tosses with rejection ([`sample_bt_with`]).
    BradleyTerry,
}

/// How constraint weights are derived from the utility gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// Every constraint weighs 1.
    Unit,
    /// A constraint weighs the utility difference of its pair.
    Difference,
}

/// Full description of one benchmark run.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// The alternatives under comparison.
    pub universe: Vec<AlternativeId>,
    /// Ground-truth utilities; must cover the universe.
    pub utilities: UtilityTable,
    /// Number of agents (votes) per repetition.
    pub agents: usize,
    /// Ranking length; each agent ranks a bundle of this size.
    pub d: usize,
    /// Noise model for vote sampling.
    pub noise: NoiseModel,
    /// Constraint weighting scheme.
    pub weighting: Weighting,
    /// The rules to score; must be non-empty.
    pub rules: Vec<NamedRule<Rat>>,
    /// Number of repetitions to average over; must be at least 1.
    pub repetitions: u64,
    /// Root seed; every repetition and agent derives its own stream.
    pub seed: u64,
    /// Attempt budget per vote for the rejection sampler.
    pub bt_max_attempts: u32,
}

impl ExperimentConfig {
    /// A config with the default repetition count (50) and rejection
    /// budget, unit weighting, and no rules yet.
    pub fn new(
        universe: Vec<AlternativeId>,
        utilities: UtilityTable,
        agents: usize,
        d: usize,
        noise: NoiseModel,
    ) -> Self {
        ExperimentConfig {
            universe,
            utilities,
            agents,
            d,
            noise,
            weighting: Weighting::Unit,
            rules: Vec::new(),
            repetitions: 50,
            seed: 0,
            bt_max_attempts: DEFAULT_BT_MAX_ATTEMPTS,
        }
    }
}

/// One scored rule in a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    /// The rule that was evaluated.
    pub rule: NamedRule<Rat>,
    /// Mean gain across repetitions as an exact percentage of the total
    /// constraint weight; always in `[0, 100]`.
    pub mean_percent: Rat,
}

/// Result of a benchmark run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    /// How many repetitions the means cover.
    pub repetitions: u64,
    /// How many alternative pairs were dropped for tied utilities.
    pub omitted_ties: u64,
    /// One row per configured rule, in configuration order.
    pub rows: Vec<ReportRow>,
}

/// Derives the weighted constraint pairs from a utility order: each
/// unordered pair of universe alternatives with distinct utilities
/// yields one constraint demanding the higher-utility alternative win,
/// weighted 1 or by the utility difference.  Tied pairs produce no
/// constraint; the count of such omissions is returned alongside.
pub fn utility_constraints(
    universe: &[AlternativeId],
    utilities: &UtilityTable,
    weighting: Weighting,
) -> Result<(Vec<(AlternativeId, AlternativeId, Rat)>, u64)> {
    let mut pairs = Vec::new();
    let mut omitted = 0u64;
    for (i, a) in universe.iter().enumerate() {
        let ua = utilities
            .get(a)
            .ok_or_else(|| Error::Validation(format!("no utility for alternative `{a}`")))?;
        for b in &universe[i + 1..] {
            let ub = utilities
                .get(b)
                .ok_or_else(|| Error::Validation(format!("no utility for alternative `{b}`")))?;
            if ua == ub {
                omitted += 1;
                continue;
            }
            let (hi, lo, diff) = if ua > ub {
                (a, b, ua - ub)
            } else {
                (b, a, ub - ua)
            };
            let weight = match weighting {
                Weighting::Unit => Rat::from_int(1),
                Weighting::Difference => diff,
            };
            pairs.push((hi.clone(), lo.clone(), weight));
        }
    }
    Ok((pairs, omitted))
}

/// Samples one profile: bundles are assigned with a seed derived at
/// index 0, then agent `k` draws its vote from stream `k + 1`.  Agents
/// are named `a0, a1, ...` in bundle order.
pub fn sample_profile(
    universe: &[AlternativeId],
    utilities: &UtilityTable,
    agents: usize,
    d: usize,
    noise: NoiseModel,
    bt_max_attempts: u32,
    seed: u64,
) -> Result<RankingProfile> {
    let bundles = assign_bundles(universe, agents, d, derive_seed(seed, 0))?;
    let mut votes = Vec::with_capacity(agents);
    for (k, bundle) in bundles.iter().enumerate() {
        let agent = format!("a{k}");
        let vote_seed = derive_seed(seed, k as u64 + 1);
        let vote = match noise {
            NoiseModel::PlackettLuce => sample_pl(&agent, bundle, utilities, vote_seed)?,
            NoiseModel::BradleyTerry => {
                sample_bt_with(&agent, bundle, utilities, vote_seed, bt_max_attempts)?.0
            }
        };
        votes.push(vote);
    }
    Ok(RankingProfile { d, votes })
}

/// Runs the full benchmark: derive constraints once, then for every
/// repetition sample a fresh profile, build the instance, and evaluate
/// each rule; report exact mean percentages.
///
/// Fails with a degenerate-experiment error when the utilities admit no
/// constraint at all (every pair tied).
pub fn run_bench(config: &ExperimentConfig) -> Result<Report> {
    if config.repetitions == 0 {
        return Err(Error::Validation(
            "a benchmark needs at least one repetition".into(),
        ));
    }
    if config.rules.is_empty() {
        return Err(Error::Validation(
            "a benchmark needs at least one rule".into(),
        ));
    }
    let vectors = config
        .rules
        .iter()
        .map(|r| make_rule(r, config.d))
        .collect::<Result<Vec<_>>>()?;
    let (pairs, omitted_ties) =
        utility_constraints(&config.universe, &config.utilities, config.weighting)?;
    if pairs.is_empty() {
        return Err(Error::Degenerate(
            "empty constraint set: every pair of alternatives has tied utilities".into(),
        ));
    }
    let total: Rat = pairs.iter().map(|(_, _, w)| w.clone()).sum();

    let per_rep: Vec<Vec<Rat>> = (0..config.repetitions)
        .into_par_iter()
        .map(|r| -> Result<Vec<Rat>> {
            let rep_seed = derive_seed(config.seed, r);
            let profile = sample_profile(
                &config.universe,
                &config.utilities,
                config.agents,
                config.d,
                config.noise,
                config.bt_max_attempts,
                rep_seed,
            )?;
            let instance = build_instance(&profile, &pairs)?;
            vectors.iter().map(|v| gain(v, &instance)).collect()
        })
        .collect::<Result<Vec<_>>>()?;

    let reps = Rat::from_int(config.repetitions as i64);
    let rows = config
        .rules
        .iter()
        .enumerate()
        .map(|(j, rule)| {
            let sum: Rat = per_rep.iter().map(|g| g[j].clone()).sum();
            let mean_percent = Rat::from_int(100) * sum / (&reps * &total);
            ReportRow {
                rule: rule.clone(),
                mean_percent,
            }
        })
        .collect();

    Ok(Report {
        repetitions: config.repetitions,
        omitted_ties,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alt(s: &str) -> AlternativeId {
        AlternativeId::new(s).unwrap()
    }

    fn rat(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn spread_setup() -> (Vec<AlternativeId>, UtilityTable) {
        let universe = vec![alt("a"), alt("b"), alt("c")];
        let mut utilities = UtilityTable::new();
        utilities.insert(alt("a"), rat(3)).unwrap();
        utilities.insert(alt("b"), rat(1)).unwrap();
        utilities.insert(alt("c"), rat(3)).unwrap();
        (universe, utilities)
    }

    #[test]
    fn constraints_orient_toward_higher_utility_and_skip_ties() {
        let (universe, utilities) = spread_setup();
        let (pairs, omitted) = utility_constraints(&universe, &utilities, Weighting::Unit).unwrap();
        assert_eq!(omitted, 1); // (a, c) tied
        assert_eq!(pairs.len(), 2);
        assert_eq!((&pairs[0].0, &pairs[0].1), (&alt("a"), &alt("b")));
        assert_eq!((&pairs[1].0, &pairs[1].1), (&alt("c"), &alt("b")));
        assert!(pairs.iter().all(|p| p.2 == rat(1)));

        let (pairs, _) = utility_constraints(&universe, &utilities, Weighting::Difference).unwrap();
        assert!(pairs.iter().all(|p| p.2 == rat(2)));
    }

    #[test]
    fn missing_utilities_are_named() {
        let universe = vec![alt("a"), alt("mystery")];
        let mut utilities = UtilityTable::new();
        utilities.insert(alt("a"), rat(1)).unwrap();
        let err = utility_constraints(&universe, &utilities, Weighting::Unit).unwrap_err();
        assert!(err.to_string().contains("mystery"), "{err}");
    }

    #[test]
    fn sampled_profiles_have_the_requested_shape() {
        let (universe, utilities) = spread_setup();
        let profile = sample_profile(
            &universe,
            &utilities,
            5,
            2,
            NoiseModel::PlackettLuce,
            DEFAULT_BT_MAX_ATTEMPTS,
            17,
        )
        .unwrap();
        assert_eq!(profile.votes.len(), 5);
        assert!(profile.votes.iter().all(|v| v.ranked.len() == 2));
        profile.validate().unwrap();
        let again = sample_profile(
            &universe,
            &utilities,
            5,
            2,
            NoiseModel::PlackettLuce,
            DEFAULT_BT_MAX_ATTEMPTS,
            17,
        )
        .unwrap();
        assert_eq!(profile, again);
    }

    fn small_config() -> ExperimentConfig {
        let (universe, utilities) = spread_setup();
        let mut config = ExperimentConfig::new(universe, utilities, 6, 2, NoiseModel::PlackettLuce);
        config.rules = vec![
            NamedRule::Borda,
            NamedRule::Approval(1),
            NamedRule::Approval(2),
        ];
        config.repetitions = 8;
        config.seed = 42;
        config
    }

    #[test]
    fn bench_is_deterministic_and_bounded() {
        let config = small_config();
        let a = run_bench(&config).unwrap();
        let b = run_bench(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.repetitions, 8);
        assert_eq!(a.omitted_ties, 1);
        assert_eq!(a.rows.len(), 3);
        for row in &a.rows {
            assert!(row.mean_percent >= rat(0) && row.mean_percent <= rat(100));
        }
        let mut other = config.clone();
        other.seed = 43;
        assert_ne!(run_bench(&other).unwrap(), a);
    }

    #[test]
    fn no_agents_scores_zero_everywhere() {
        let mut config = small_config();
        config.agents = 0;
        config.repetitions = 1;
        let report = run_bench(&config).unwrap();
        assert!(report.rows.iter().all(|r| r.mean_percent == rat(0)));
    }

    #[test]
    fn uniform_utilities_are_degenerate() {
        let mut config = small_config();
        let mut utilities = UtilityTable::new();
        for x in &config.universe {
            utilities.insert(x.clone(), rat(5)).unwrap();
        }
        config.utilities = utilities;
        match run_bench(&config) {
            Err(Error::Degenerate(msg)) => assert!(msg.contains("empty constraint set")),
            other => panic!("expected a degenerate-experiment error, got {other:?}"),
        }
    }

    #[test]
    fn bench_validates_repetitions_and_rules() {
        let mut config = small_config();
        config.repetitions = 0;
        assert!(run_bench(&config).is_err());
        let mut config = small_config();
        config.rules.clear();
        assert!(run_bench(&config).is_err());
    }

    #[test]
    fn full_approval_ignores_order_within_bundles() {
        // With d-approval every ranked alternative gets one point, so the
        // gain depends only on bundle membership counts, not vote order:
        // both noise models must produce identical d-approval rows under
        // the same seed (bundle assignment is the noise-independent part).
        let mut pl = small_config();
        pl.rules = vec![NamedRule::Approval(2)];
        let mut bt = pl.clone();
        bt.noise = NoiseModel::BradleyTerry;
        let a = run_bench(&pl).unwrap();
        let b = run_bench(&bt).unwrap();
        assert_eq!(a.rows[0].mean_percent, b.rows[0].mean_percent);
    }
}
