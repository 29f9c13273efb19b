//! Core domain types: alternatives, votes, profiles, position counts,
//! scoring vectors, weighted pairwise constraints, and the operations tying
//! them together (counting, scoring, constraint gain, ranking).
//!
//! Everything downstream — the optimizers, the generators, the experiment
//! harness — speaks in these types.  Constructors validate, so a value of
//! one of these types is well-formed by construction.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Name of an alternative (candidate).  A non-empty token without
/// whitespace, so it can round-trip through the line-oriented file formats.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlternativeId(String);

impl AlternativeId {
    /// Validates and wraps an identifier token.
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::Validation("alternative id must be non-empty".into()));
        }
        if id.chars().any(char::is_whitespace) {
            return Err(Error::Validation(format!(
                "alternative id `{id}` must not contain whitespace"
            )));
        }
        Ok(AlternativeId(id))
    }

    /// The `k`-th synthetic filler alternative used when realizing
    /// appearance specifications as concrete votes.
    pub fn placeholder(k: usize) -> Self {
        AlternativeId(format!("_ph{k}"))
    }

    /// `true` for identifiers produced by [`AlternativeId::placeholder`].
    pub fn is_placeholder(&self) -> bool {
        self.0.starts_with("_ph")
    }

    /// The identifier as a string slice.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AlternativeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One agent's ranking of exactly `d` alternatives, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vote {
    /// Identifier of the voting agent.
    pub agent: String,
    /// The ranked alternatives, most preferred first.
    pub ranked: Vec<AlternativeId>,
}

impl Vote {
    /// Builds a vote; the agent token and the distinctness of `ranked`
    /// are validated when the containing profile is consumed.
    pub fn new(agent: impl Into<String>, ranked: Vec<AlternativeId>) -> Self {
        Vote {
            agent: agent.into(),
            ranked,
        }
    }
}

/// A collection of fixed-length votes: every vote ranks exactly `d`
/// alternatives, `d >= 2`.  Different votes may rank entirely different
/// subsets of the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingProfile {
    /// Common length of every vote.
    pub d: usize,
    /// The votes, in input order.
    pub votes: Vec<Vote>,
}

impl RankingProfile {
    /// Checks the structural invariants: `d >= 2`, every vote ranks
    /// exactly `d` distinct alternatives, and every agent token is a
    /// non-empty whitespace-free identifier.
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::Validation(format!(
                "profile dimension d must be at least 2, got {}",
                self.d
            )));
        }
        for vote in &self.votes {
            if vote.agent.is_empty() || vote.agent.chars().any(char::is_whitespace) {
                return Err(Error::Validation(format!(
                    "agent id `{}` must be a non-empty token without whitespace",
                    vote.agent
                )));
            }
            if vote.ranked.len() != self.d {
                return Err(Error::Validation(format!(
                    "vote by agent `{}` ranks {} alternatives, expected {}",
                    vote.agent,
                    vote.ranked.len(),
                    self.d
                )));
            }
            for (i, x) in vote.ranked.iter().enumerate() {
                if vote.ranked[..i].contains(x) {
                    return Err(Error::Validation(format!(
                        "vote by agent `{}` ranks alternative `{x}` more than once",
                        vote.agent
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Per-alternative appearance counts: `counts(x)[j]` is the number of votes
/// placing `x` at rank position `j + 1`.  Only alternatives mentioned by at
/// least one vote are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionCounts {
    d: usize,
    num_votes: usize,
    counts: BTreeMap<AlternativeId, Vec<u64>>,
}

impl PositionCounts {
    pub(crate) fn from_map(
        d: usize,
        num_votes: usize,
        counts: BTreeMap<AlternativeId, Vec<u64>>,
    ) -> Self {
        PositionCounts {
            d,
            num_votes,
            counts,
        }
    }

    /// Vote length these counts were tallied over.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of votes tallied.
    pub fn num_votes(&self) -> usize {
        self.num_votes
    }

    /// Position counts of `x`, or `None` if no vote mentions it (which
    /// downstream operations treat as an all-zero count vector).
    pub fn get(&self, x: &AlternativeId) -> Option<&[u64]> {
        self.counts.get(x).map(Vec::as_slice)
    }

    /// All mentioned alternatives in ascending identifier order.
    pub fn alternatives(&self) -> impl Iterator<Item = &AlternativeId> {
        self.counts.keys()
    }
}

/// A valid positional scoring vector: non-increasing scores with a
/// non-negative tail, length at least 2.  The all-zero vector is valid
/// (it satisfies nothing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringVector<S = crate::Rat> {
    scores: Vec<S>,
}

impl<S: Scalar> ScoringVector<S> {
    /// Validates `s_1 >= s_2 >= ... >= s_d >= 0` and wraps the scores.
    pub fn new(scores: Vec<S>) -> Result<Self> {
        if scores.len() < 2 {
            return Err(Error::Validation(format!(
                "scoring vector needs at least 2 positions, got {}",
                scores.len()
            )));
        }
        for i in 0..scores.len() - 1 {
            match scores[i].partial_cmp(&scores[i + 1]) {
                Some(std::cmp::Ordering::Less) => {
                    return Err(Error::Validation(format!(
                        "scores must be non-increasing: position {} has {} < {}",
                        i + 1,
                        scores[i],
                        scores[i + 1]
                    )));
                }
                Some(_) => {}
                None => {
                    return Err(Error::Validation(
                        "scores must be pairwise comparable".into(),
                    ));
                }
            }
        }
        let last = scores.last().expect("length checked above");
        if *last < S::zero() {
            return Err(Error::Validation(format!(
                "last score must be non-negative, got {last}"
            )));
        }
        Ok(ScoringVector { scores })
    }

    /// The scores, best position first.
    pub fn scores(&self) -> &[S] {
        &self.scores
    }

    /// Number of positions.
    pub fn len(&self) -> usize {
        self.scores.len()
    }

    /// Always `false`: validation rejects vectors shorter than 2.
    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// A weighted pairwise preference `x` over `y`, together with the count
/// difference vector `delta[j] = count_j(x) - count_j(y)` it induces on a
/// profile.  A scoring vector `s` satisfies the constraint iff
/// `delta · s > 0` — strictly, decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint<S = crate::Rat> {
    x: AlternativeId,
    y: AlternativeId,
    weight: S,
    delta: Vec<i64>,
}

impl<S: Scalar> Constraint<S> {
    /// Validates `x != y` and `weight >= 0` and wraps the parts.
    pub fn new(x: AlternativeId, y: AlternativeId, weight: S, delta: Vec<i64>) -> Result<Self> {
        if x == y {
            return Err(Error::Validation(format!(
                "constraint must compare distinct alternatives, got `{x}` twice"
            )));
        }
        if weight < S::zero() {
            return Err(Error::Validation(format!(
                "constraint weight must be non-negative, got {weight}"
            )));
        }
        Ok(Constraint {
            x,
            y,
            weight,
            delta,
        })
    }

    /// Preferred alternative.
    pub fn x(&self) -> &AlternativeId {
        &self.x
    }

    /// Dispreferred alternative.
    pub fn y(&self) -> &AlternativeId {
        &self.y
    }

    /// Non-negative weight.
    pub fn weight(&self) -> &S {
        &self.weight
    }

    /// Position-count difference vector, length `d`.
    pub fn delta(&self) -> &[i64] {
        &self.delta
    }
}

/// A constraint-optimization instance: the common vote length and a list
/// of weighted constraints whose delta vectors all have that length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<S = crate::Rat> {
    d: usize,
    constraints: Vec<Constraint<S>>,
}

impl<S: Scalar> Instance<S> {
    /// Validates `d >= 2` and per-constraint delta lengths.
    pub fn new(d: usize, constraints: Vec<Constraint<S>>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Validation(format!(
                "instance dimension d must be at least 2, got {d}"
            )));
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.delta.len() != d {
                return Err(Error::Validation(format!(
                    "constraint {} (`{}` over `{}`) has delta length {}, expected {d}",
                    i,
                    c.x,
                    c.y,
                    c.delta.len()
                )));
            }
        }
        Ok(Instance { d, constraints })
    }

    /// Common vote length.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The constraints in input order.
    pub fn constraints(&self) -> &[Constraint<S>] {
        &self.constraints
    }

    /// Sum of all constraint weights — the trivial upper bound on any gain.
    pub fn total_weight(&self) -> S {
        self.constraints
            .iter()
            .fold(S::zero(), |acc, c| acc + c.weight.clone())
    }
}

/// Exact dot product of an integer delta vector with scalar scores.
pub(crate) fn delta_dot<S: Scalar>(delta: &[i64], scores: &[S]) -> S {
    debug_assert_eq!(delta.len(), scores.len());
    let mut acc = S::zero();
    for (&c, s) in delta.iter().zip(scores) {
        if c != 0 {
            acc = acc + S::from_int(c) * s.clone();
        }
    }
    acc
}

/// Tallies how often each alternative appears at each rank position.
///
/// Validates the profile first; a malformed vote yields a validation error
/// naming the offending agent.
pub fn count_positions(profile: &RankingProfile) -> Result<PositionCounts> {
    profile.validate()?;
    let mut counts: BTreeMap<AlternativeId, Vec<u64>> = BTreeMap::new();
    for vote in &profile.votes {
        for (j, x) in vote.ranked.iter().enumerate() {
            counts
                .entry(x.clone())
                .or_insert_with(|| vec![0; profile.d])[j] += 1;
        }
    }
    Ok(PositionCounts::from_map(
        profile.d,
        profile.votes.len(),
        counts,
    ))
}

/// Builds an [`Instance`] from a profile and weighted preference pairs.
///
/// Each pair `(x, y, w)` becomes a constraint with
/// `delta[j] = count_j(x) - count_j(y)`.  An alternative mentioned by no
/// vote contributes all-zero counts; that is deliberate, not an error, so
/// constraints over never-ranked alternatives are expressible (their
/// deltas are simply one-sided or zero).
pub fn build_instance<S: Scalar>(
    profile: &RankingProfile,
    pairs: &[(AlternativeId, AlternativeId, S)],
) -> Result<Instance<S>> {
    let counts = count_positions(profile)?;
    let zeros = vec![0u64; profile.d];
    let mut constraints = Vec::with_capacity(pairs.len());
    for (x, y, w) in pairs {
        let cx = counts.get(x).unwrap_or(&zeros);
        let cy = counts.get(y).unwrap_or(&zeros);
        let delta = cx
            .iter()
            .zip(cy)
            .map(|(&a, &b)| {
                let a = i64::try_from(a)
                    .map_err(|_| Error::Validation(format!("position count {a} overflows")))?;
                let b = i64::try_from(b)
                    .map_err(|_| Error::Validation(format!("position count {b} overflows")))?;
                Ok(a - b)
            })
            .collect::<Result<Vec<i64>>>()?;
        constraints.push(Constraint::new(x.clone(), y.clone(), w.clone(), delta)?);
    }
    Instance::new(profile.d, constraints)
}

/// Total score of alternative `x` under scoring vector `sv`:
/// `sum_j count_j(x) * s_j`.  An unmentioned alternative scores zero.
pub fn score<S: Scalar>(
    sv: &ScoringVector<S>,
    counts: &PositionCounts,
    x: &AlternativeId,
) -> Result<S> {
    if sv.len() != counts.d() {
        return Err(Error::Validation(format!(
            "scoring vector has {} positions but counts were tallied with d={}",
            sv.len(),
            counts.d()
        )));
    }
    let Some(cx) = counts.get(x) else {
        return Ok(S::zero());
    };
    let mut acc = S::zero();
    for (&n, s) in cx.iter().zip(sv.scores()) {
        if n != 0 {
            let n = i64::try_from(n)
                .map_err(|_| Error::Validation(format!("position count {n} overflows")))?;
            acc = acc + S::from_int(n) * s.clone();
        }
    }
    Ok(acc)
}

/// Total weight of constraints satisfied by `sv`: a constraint with delta
/// vector `delta` counts iff `delta · s > 0`, tested exactly in `S`.
pub fn gain<S: Scalar>(sv: &ScoringVector<S>, instance: &Instance<S>) -> Result<S> {
    if sv.len() != instance.d() {
        return Err(Error::Validation(format!(
            "scoring vector has {} positions but instance has d={}",
            sv.len(),
            instance.d()
        )));
    }
    let mut acc = S::zero();
    for c in instance.constraints() {
        if delta_dot(c.delta(), sv.scores()).is_strictly_positive() {
            acc = acc + c.weight().clone();
        }
    }
    Ok(acc)
}

/// Ranks all mentioned alternatives by descending score, breaking score
/// ties by ascending identifier so the output is deterministic.
pub fn rank_alternatives<S: Scalar>(
    sv: &ScoringVector<S>,
    counts: &PositionCounts,
) -> Result<Vec<AlternativeId>> {
    let mut scored: Vec<(AlternativeId, S)> = counts
        .alternatives()
        .map(|x| Ok((x.clone(), score(sv, counts, x)?)))
        .collect::<Result<_>>()?;
    scored.sort_by(|(ida, sa), (idb, sb)| {
        sb.partial_cmp(sa)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| ida.cmp(idb))
    });
    Ok(scored.into_iter().map(|(id, _)| id).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn alt(s: &str) -> AlternativeId {
        AlternativeId::new(s).unwrap()
    }

    fn rat(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn ratio(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn alternative_id_rejects_empty_and_whitespace() {
        assert!(AlternativeId::new("").is_err());
        assert!(AlternativeId::new("a b").is_err());
        assert!(AlternativeId::new("a\tb").is_err());
        assert!(AlternativeId::new("x1").is_ok());
        assert!(AlternativeId::new("_ph0").is_ok());
    }

    #[test]
    fn placeholder_ids_are_recognizable() {
        assert!(AlternativeId::placeholder(7).is_placeholder());
        assert_eq!(AlternativeId::placeholder(7).as_str(), "_ph7");
        assert!(!alt("x").is_placeholder());
    }

    #[test]
    fn profile_validation_names_the_offending_agent() {
        let p = RankingProfile {
            d: 2,
            votes: vec![
                Vote::new("good", vec![alt("a"), alt("b")]),
                Vote::new("bad", vec![alt("a")]),
            ],
        };
        let err = p.validate().unwrap_err();
        assert!(err.to_string().contains("bad"), "{err}");

        let p = RankingProfile {
            d: 2,
            votes: vec![Vote::new("dup", vec![alt("a"), alt("a")])],
        };
        let err = p.validate().unwrap_err();
        assert!(err.to_string().contains("dup"), "{err}");

        let p = RankingProfile {
            d: 1,
            votes: vec![],
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn scoring_vector_validation() {
        assert!(ScoringVector::new(vec![rat(2), rat(1)]).is_ok());
        assert!(ScoringVector::new(vec![rat(1), rat(1)]).is_ok());
        assert!(ScoringVector::new(vec![rat(0), rat(0)]).is_ok());
        assert!(ScoringVector::new(vec![rat(1), rat(2)]).is_err());
        assert!(ScoringVector::new(vec![rat(1), rat(-1)]).is_err());
        assert!(ScoringVector::new(vec![rat(1)]).is_err());
    }

    #[test]
    fn constraint_validation() {
        assert!(Constraint::new(alt("x"), alt("x"), rat(1), vec![0, 0]).is_err());
        assert!(Constraint::new(alt("x"), alt("y"), rat(-1), vec![0, 0]).is_err());
        assert!(Constraint::new(alt("x"), alt("y"), rat(0), vec![0, 0]).is_ok());
    }

    #[test]
    fn instance_checks_delta_lengths() {
        let c = Constraint::new(alt("x"), alt("y"), rat(1), vec![1, -1, 0]).unwrap();
        assert!(Instance::new(3, vec![c.clone()]).is_ok());
        assert!(Instance::new(2, vec![c]).is_err());
        assert!(Instance::<Rat>::new(1, vec![]).is_err());
    }

    fn small_profile() -> RankingProfile {
        // three votes over {a, b, c}, d = 2
        RankingProfile {
            d: 2,
            votes: vec![
                Vote::new("g0", vec![alt("a"), alt("b")]),
                Vote::new("g1", vec![alt("b"), alt("a")]),
                Vote::new("g2", vec![alt("a"), alt("c")]),
            ],
        }
    }

    #[test]
    fn count_positions_tallies_by_rank() {
        let counts = count_positions(&small_profile()).unwrap();
        assert_eq!(counts.d(), 2);
        assert_eq!(counts.num_votes(), 3);
        assert_eq!(counts.get(&alt("a")), Some(&[2, 1][..]));
        assert_eq!(counts.get(&alt("b")), Some(&[1, 1][..]));
        assert_eq!(counts.get(&alt("c")), Some(&[0, 1][..]));
        assert_eq!(counts.get(&alt("zzz")), None);

        // column sums equal the number of votes
        for j in 0..2 {
            let col: u64 = counts
                .alternatives()
                .map(|x| counts.get(x).unwrap()[j])
                .sum();
            assert_eq!(col, 3);
        }
    }

    #[test]
    fn build_instance_takes_count_differences() {
        let profile = small_profile();
        let pairs = vec![
            (alt("a"), alt("b"), rat(2)),
            (alt("b"), alt("a"), rat(1)),
            (alt("c"), alt("nowhere"), rat(1)),
        ];
        let inst = build_instance(&profile, &pairs).unwrap();
        assert_eq!(inst.constraints()[0].delta(), &[1, 0]);
        assert_eq!(inst.constraints()[1].delta(), &[-1, 0]); // antisymmetric
                                                             // `nowhere` is unmentioned: its counts are all zero
        assert_eq!(inst.constraints()[2].delta(), &[0, 1]);
        assert_eq!(inst.total_weight(), rat(4));
    }

    #[test]
    fn score_and_rank_follow_the_vector() {
        let counts = count_positions(&small_profile()).unwrap();
        let sv = ScoringVector::new(vec![rat(2), rat(1)]).unwrap();
        assert_eq!(score(&sv, &counts, &alt("a")).unwrap(), rat(5));
        assert_eq!(score(&sv, &counts, &alt("b")).unwrap(), rat(3));
        assert_eq!(score(&sv, &counts, &alt("c")).unwrap(), rat(1));
        assert_eq!(score(&sv, &counts, &alt("zzz")).unwrap(), rat(0));
        let ranking = rank_alternatives(&sv, &counts).unwrap();
        assert_eq!(ranking, vec![alt("a"), alt("b"), alt("c")]);
    }

    #[test]
    fn rank_breaks_score_ties_lexicographically() {
        let counts = count_positions(&small_profile()).unwrap();
        // all-zero vector scores everyone 0
        let sv = ScoringVector::new(vec![rat(0), rat(0)]).unwrap();
        let ranking = rank_alternatives(&sv, &counts).unwrap();
        assert_eq!(ranking, vec![alt("a"), alt("b"), alt("c")]);
    }

    #[test]
    fn gain_is_strict_and_exact() {
        let inst = Instance::new(
            2,
            vec![
                Constraint::new(alt("x"), alt("y"), rat(3), vec![-2, 3]).unwrap(),
                Constraint::new(alt("p"), alt("q"), rat(1), vec![4, -2]).unwrap(),
                Constraint::new(alt("u"), alt("v"), rat(2), vec![5, -6]).unwrap(),
            ],
        )
        .unwrap();
        // s = (1, 3/4): dots are 1/4, 5/2, 1/2 — all satisfied
        let sv = ScoringVector::new(vec![rat(1), ratio(3, 4)]).unwrap();
        assert_eq!(gain(&sv, &inst).unwrap(), rat(6));
        // s = (1, 2/3): dot of first is exactly 0 — strictness counts it out
        let sv = ScoringVector::new(vec![rat(1), ratio(2, 3)]).unwrap();
        assert_eq!(gain(&sv, &inst).unwrap(), rat(3));
        // zero vector satisfies nothing
        let sv = ScoringVector::new(vec![rat(0), rat(0)]).unwrap();
        assert_eq!(gain(&sv, &inst).unwrap(), rat(0));
    }

    #[test]
    fn gain_is_scale_invariant() {
        let inst = Instance::new(
            2,
            vec![Constraint::new(alt("x"), alt("y"), rat(3), vec![-2, 3]).unwrap()],
        )
        .unwrap();
        let sv = ScoringVector::new(vec![rat(1), ratio(3, 4)]).unwrap();
        let scaled = ScoringVector::new(vec![rat(4), rat(3)]).unwrap();
        assert_eq!(gain(&sv, &inst).unwrap(), gain(&scaled, &inst).unwrap());
    }

    #[test]
    fn dimension_mismatches_are_rejected() {
        let counts = count_positions(&small_profile()).unwrap();
        let sv3 = ScoringVector::new(vec![rat(3), rat(2), rat(1)]).unwrap();
        assert!(score(&sv3, &counts, &alt("a")).is_err());
        assert!(rank_alternatives(&sv3, &counts).is_err());
        let inst = Instance::new(
            2,
            vec![Constraint::new(alt("x"), alt("y"), rat(1), vec![1, -1]).unwrap()],
        )
        .unwrap();
        assert!(gain(&sv3, &inst).is_err());
    }
}
