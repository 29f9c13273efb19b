//! Synthetic input generation: noise-model samplers, balanced bundle
//! assignment, appearance specifications realized as profiles, the tight
//! worst-case family for approval rules, and the parity-system gadget
//! reduction used to probe hard instances.
//!
//! Everything here is seeded and deterministic: the same inputs and seed
//! produce byte-identical outputs, and per-agent / per-repetition seeds
//! are derived with [`derive_seed`] so concurrent use cannot reorder
//! randomness.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{AlternativeId, Constraint, Instance, RankingProfile, ScoringVector, Vote};
use crate::scalar::Scalar;
use crate::Rat;

/// Default attempt budget for the rejection sampler in [`sample_bt`].
pub const DEFAULT_BT_MAX_ATTEMPTS: u32 = 10_000;

/// Strictly positive utilities per alternative, the shared parameter of
/// both noise models.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UtilityTable {
    map: BTreeMap<AlternativeId, Rat>,
}

impl UtilityTable {
    /// An empty table.
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts or replaces a utility; must be strictly positive.
    pub fn insert(&mut self, alternative: AlternativeId, utility: Rat) -> Result<()> {
        if !utility.is_strictly_positive() {
            return Err(Error::Validation(format!(
                "utility of `{alternative}` must be strictly positive, got {utility}"
            )));
        }
        self.map.insert(alternative, utility);
        Ok(())
    }

    /// Utility of an alternative, if present.
    pub fn get(&self, alternative: &AlternativeId) -> Option<&Rat> {
        self.map.get(alternative)
    }

    /// Number of alternatives with a utility.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// `true` iff no utilities are present.
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Iterates in ascending alternative order.
    pub fn iter(&self) -> impl Iterator<Item = (&AlternativeId, &Rat)> {
        self.map.iter()
    }
}

/// Mixes a root seed with an index into an independent stream seed
/// (splitmix64-style finalizer).  Distinct indices yield distinct seeds
/// for a fixed root.
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Assigns each of `agents` agents a bundle of `d` alternatives from the
/// universe, keeping appearance counts as even as possible (they differ
/// by at most one): the universe is shuffled once, then bundles are read
/// off as consecutive windows cyclically.
pub fn assign_bundles(
    universe: &[AlternativeId],
    agents: usize,
    d: usize,
    seed: u64,
) -> Result<Vec<Vec<AlternativeId>>> {
    if d < 2 {
        return Err(Error::Validation(format!(
            "bundle size d must be at least 2, got {d}"
        )));
    }
    if universe.len() < d {
        return Err(Error::Validation(format!(
            "universe has {} alternatives, need at least d = {d}",
            universe.len()
        )));
    }
    for (i, x) in universe.iter().enumerate() {
        if universe[..i].contains(x) {
            return Err(Error::Validation(format!(
                "universe lists alternative `{x}` more than once"
            )));
        }
    }
    let mut order = universe.to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n = order.len();
    Ok((0..agents)
        .map(|k| (0..d).map(|r| order[(k * d + r) % n].clone()).collect())
        .collect())
}

fn sampling_weights(bundle: &[AlternativeId], utilities: &UtilityTable) -> Result<Vec<f64>> {
    if bundle.len() < 2 {
        return Err(Error::Validation(format!(
            "a bundle must hold at least 2 alternatives, got {}",
            bundle.len()
        )));
    }
    for (i, x) in bundle.iter().enumerate() {
        if bundle[..i].contains(x) {
            return Err(Error::Validation(format!(
                "bundle lists alternative `{x}` more than once"
            )));
        }
    }
    bundle
        .iter()
        .map(|x| {
            let u = utilities
                .get(x)
                .ok_or_else(|| Error::Validation(format!("no utility for alternative `{x}`")))?;
            let w = u.to_f64().unwrap_or(f64::INFINITY);
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::Validation(format!(
                    "utility of `{x}` does not fit double-precision sampling"
                )));
            }
            Ok(w)
        })
        .collect()
}

/// Draws one vote by sequential proportional selection: the next rank
/// position goes to alternative `x` with probability proportional to its
/// utility among those not yet placed.
pub fn sample_pl(
    agent: &str,
    bundle: &[AlternativeId],
    utilities: &UtilityTable,
    seed: u64,
) -> Result<Vote> {
    let weights = sampling_weights(bundle, utilities)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining: Vec<usize> = (0..bundle.len()).collect();
    let mut ranked = Vec::with_capacity(bundle.len());
    while !remaining.is_empty() {
        let total: f64 = remaining.iter().map(|&i| weights[i]).sum();
        let mut r = rng.gen::<f64>() * total;
        let mut chosen = remaining.len() - 1;
        for (slot, &i) in remaining.iter().enumerate() {
            if r < weights[i] {
                chosen = slot;
                break;
            }
            r -= weights[i];
        }
        ranked.push(bundle[remaining.remove(chosen)].clone());
    }
    Ok(Vote::new(agent, ranked))
}

/// Draws one vote by independent pairwise tosses: each pair is oriented
/// toward `x` with probability `u(x) / (u(x) + u(y))`, and the tournament
/// is kept only if it is an order (out-degrees all distinct); otherwise
/// the toss is rejected and retried.  Returns the vote and the number of
/// attempts consumed.
pub fn sample_bt_with(
    agent: &str,
    bundle: &[AlternativeId],
    utilities: &UtilityTable,
    seed: u64,
    max_attempts: u32,
) -> Result<(Vote, u32)> {
    let weights = sampling_weights(bundle, utilities)?;
    if max_attempts == 0 {
        return Err(Error::Validation(
            "the rejection sampler needs at least one attempt".into(),
        ));
    }
    let d = bundle.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let mut outdeg = vec![0usize; d];
        for i in 0..d {
            for j in i + 1..d {
                let p = weights[i] / (weights[i] + weights[j]);
                if rng.gen_bool(p) {
                    outdeg[i] += 1;
                } else {
                    outdeg[j] += 1;
                }
            }
        }
        // A tournament is an order exactly when all out-degrees differ
        // (they then form a permutation of 0 .. d-1).
        let mut seen = vec![false; d];
        if outdeg
            .iter()
            .all(|&o| !std::mem::replace(&mut seen[o], true))
        {
            let mut order: Vec<usize> = (0..d).collect();
            order.sort_by(|&a, &b| outdeg[b].cmp(&outdeg[a]));
            let ranked = order.into_iter().map(|i| bundle[i].clone()).collect();
            return Ok((Vote::new(agent, ranked), attempt));
        }
    }
    Err(Error::Sampling(format!(
        "pairwise-toss rejection sampling used up all {max_attempts} attempts \
         without producing an ordered tournament"
    )))
}

/// [`sample_bt_with`] under the default attempt budget, returning just
/// the vote.
pub fn sample_bt(
    agent: &str,
    bundle: &[AlternativeId],
    utilities: &UtilityTable,
    seed: u64,
) -> Result<Vote> {
    sample_bt_with(agent, bundle, utilities, seed, DEFAULT_BT_MAX_ATTEMPTS).map(|(vote, _)| vote)
}

/// One line of an appearance specification: `alternative` occurs at rank
/// `position` (1-based) in `count` distinct votes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppearanceEntry {
    /// The alternative being pinned.
    pub alternative: AlternativeId,
    /// 1-based rank position.
    pub position: usize,
    /// Number of votes pinning it there; strictly positive.
    pub count: u64,
}

/// A prescription of exactly where named alternatives must appear, from
/// which a concrete profile can be realized with placeholder fillers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppearanceSpec {
    d: usize,
    entries: Vec<AppearanceEntry>,
}

impl AppearanceSpec {
    /// Validates positions, counts, and (alternative, position)
    /// uniqueness.
    pub fn new(d: usize, entries: Vec<AppearanceEntry>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Validation(format!(
                "appearance dimension d must be at least 2, got {d}"
            )));
        }
        for (i, e) in entries.iter().enumerate() {
            if e.position < 1 || e.position > d {
                return Err(Error::Validation(format!(
                    "appearance of `{}` at position {} is outside 1..={d}",
                    e.alternative, e.position
                )));
            }
            if e.count == 0 {
                return Err(Error::Validation(format!(
                    "appearance of `{}` at position {} has count 0",
                    e.alternative, e.position
                )));
            }
            if entries[..i]
                .iter()
                .any(|p| p.alternative == e.alternative && p.position == e.position)
            {
                return Err(Error::Validation(format!(
                    "duplicate appearance entry for `{}` at position {}",
                    e.alternative, e.position
                )));
            }
        }
        Ok(AppearanceSpec { d, entries })
    }

    /// Vote length of the realized profile.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The appearance entries in input order.
    pub fn entries(&self) -> &[AppearanceEntry] {
        &self.entries
    }
}

/// Realizes an appearance specification as a concrete profile: one vote
/// per appearance unit, with the pinned alternative at its position and
/// globally fresh placeholder alternatives filling the remaining ranks.
/// Placeholders never repeat, so they cannot interfere with any count.
pub fn realize_profile(spec: &AppearanceSpec) -> RankingProfile {
    let mut votes = Vec::new();
    let mut next_placeholder = 0usize;
    for entry in &spec.entries {
        for _ in 0..entry.count {
            let mut ranked = Vec::with_capacity(spec.d);
            for pos in 1..=spec.d {
                if pos == entry.position {
                    ranked.push(entry.alternative.clone());
                } else {
                    ranked.push(AlternativeId::placeholder(next_placeholder));
                    next_placeholder += 1;
                }
            }
            votes.push(Vote::new(format!("g{}", votes.len()), ranked));
        }
    }
    RankingProfile { d: spec.d, votes }
}

/// Builds an instance straight from an appearance specification by
/// summing pinned counts — no votes involved.  Must agree exactly with
/// realizing the profile and building from pairs; the test suite holds
/// the two routes together.
pub fn instance_from_appearances<S: Scalar>(
    spec: &AppearanceSpec,
    pairs: &[(AlternativeId, AlternativeId, S)],
) -> Result<Instance<S>> {
    let mut counts: BTreeMap<&AlternativeId, Vec<i64>> = BTreeMap::new();
    for e in &spec.entries {
        let row = counts
            .entry(&e.alternative)
            .or_insert_with(|| vec![0; spec.d]);
        row[e.position - 1] += i64::try_from(e.count)
            .map_err(|_| Error::Validation(format!("appearance count {} overflows", e.count)))?;
    }
    let zeros = vec![0i64; spec.d];
    let constraints = pairs
        .iter()
        .map(|(x, y, w)| {
            let cx = counts.get(x).unwrap_or(&zeros);
            let cy = counts.get(y).unwrap_or(&zeros);
            let delta = cx.iter().zip(cy).map(|(&a, &b)| a - b).collect();
            Constraint::new(x.clone(), y.clone(), w.clone(), delta)
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(spec.d, constraints)
}

fn alt(label: String) -> AlternativeId {
    AlternativeId::new(label).expect("generated labels are valid tokens")
}

/// The default tightness parameters: `a_j = 2d` for every position, which
/// keeps the feasibility margin `sum 1/(1+a_j) < 1` comfortably.
pub fn default_tight_parameters(d: usize) -> Vec<u64> {
    vec![2 * d as u64; d]
}

fn validate_tight_parameters(d: usize, a: &[u64]) -> Result<()> {
    if d < 2 {
        return Err(Error::Validation(format!(
            "tight instance needs d >= 2, got {d}"
        )));
    }
    if a.len() != d {
        return Err(Error::Validation(format!(
            "tight instance needs {d} parameters, got {}",
            a.len()
        )));
    }
    if a.iter().any(|&x| x == 0) {
        return Err(Error::Validation(
            "tight-instance parameters must be positive".into(),
        ));
    }
    let margin: Rat = a.iter().map(|&x| Rat::new(1.into(), (x + 1).into())).sum();
    if margin >= Rat::from_int(1) {
        return Err(Error::Validation(format!(
            "tight-instance parameters must satisfy sum 1/(1+a_j) < 1, got {margin}"
        )));
    }
    Ok(())
}

/// The worst-case family for approval rules: `d` unit constraints of
/// which any single approval threshold satisfies exactly one, while one
/// scoring vector satisfies all `d` at once (guaranteed by the parameter
/// condition `sum 1/(1+a_j) < 1`).
///
/// Constraint `t` (1-based) has delta
/// * `t = 1`: `(a_1, -(1+a_1), 0, ...)`,
/// * `1 < t < d`: `-1` at position 1, `1+a_t` at `t`, `-(1+a_t)` at `t+1`,
/// * `t = d`: `-1` at position 1, `1+a_d` at `d`.
pub fn make_tight_instance(d: usize, a: &[u64]) -> Result<Instance<Rat>> {
    validate_tight_parameters(d, a)?;
    let mut constraints = Vec::with_capacity(d);
    for t in 1..=d {
        let mut delta = vec![0i64; d];
        let lift = (1 + a[t - 1]) as i64;
        if t == 1 {
            delta[0] = a[0] as i64;
            delta[1] = -lift;
        } else if t < d {
            delta[0] = -1;
            delta[t - 1] = lift;
            delta[t] = -lift;
        } else {
            delta[0] = -1;
            delta[d - 1] = lift;
        }
        constraints.push(Constraint::new(
            alt(format!("x{t}")),
            alt(format!("y{t}")),
            Rat::from_int(1),
            delta,
        )?);
    }
    Instance::new(d, constraints)
}

/// Appearance specification and weighted pairs realizing the tight
/// instance as an actual profile: `x_1` sits `a_1` times at position 1
/// with `y_1` sitting `1+a_1` times at position 2; middle `x_t` sits
/// `1+a_t` times at `t` against `y_t` once at 1 and `1+a_t` times at
/// `t+1`; `x_d` sits `1+a_d` times at `d` against `y_d` once at 1.
pub fn tight_instance_spec(
    d: usize,
    a: &[u64],
) -> Result<(AppearanceSpec, Vec<(AlternativeId, AlternativeId, Rat)>)> {
    validate_tight_parameters(d, a)?;
    let mut entries = Vec::new();
    let mut pairs = Vec::with_capacity(d);
    let mut push = |alternative: AlternativeId, position: usize, count: u64| {
        entries.push(AppearanceEntry {
            alternative,
            position,
            count,
        });
    };
    for t in 1..=d {
        let x = alt(format!("x{t}"));
        let y = alt(format!("y{t}"));
        let lift = 1 + a[t - 1];
        if t == 1 {
            push(x.clone(), 1, a[0]);
            push(y.clone(), 2, lift);
        } else if t < d {
            push(x.clone(), t, lift);
            push(y.clone(), 1, 1);
            push(y.clone(), t + 1, lift);
        } else {
            push(x.clone(), d, lift);
            push(y.clone(), 1, 1);
        }
        pairs.push((x, y, Rat::from_int(1)));
    }
    Ok((AppearanceSpec::new(d, entries)?, pairs))
}

/// One parity equation `x_i + x_j + x_k = parity (mod 2)` over three
/// distinct 1-based variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lin2Equation {
    vars: [usize; 3],
    parity: bool,
}

impl Lin2Equation {
    /// Validates distinctness and positivity of the variable indices
    /// (range membership is checked by the containing system).
    pub fn new(vars: [usize; 3], parity: bool) -> Result<Self> {
        if vars[0] == 0 || vars[1] == 0 || vars[2] == 0 {
            return Err(Error::Validation(
                "equation variables are 1-based; 0 is not a variable".into(),
            ));
        }
        if vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2] {
            return Err(Error::Validation(format!(
                "equation variables must be distinct, got {vars:?}"
            )));
        }
        Ok(Lin2Equation { vars, parity })
    }

    /// The three distinct 1-based variable indices.
    pub fn vars(&self) -> [usize; 3] {
        self.vars
    }

    /// Right-hand side: `true` for sum odd, `false` for sum even.
    pub fn parity(&self) -> bool {
        self.parity
    }
}

/// A system of parity equations over `n` Boolean variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lin2System {
    n: usize,
    equations: Vec<Lin2Equation>,
}

impl Lin2System {
    /// Validates that every equation's variables lie in `1..=n`.
    pub fn new(n: usize, equations: Vec<Lin2Equation>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation(
                "a parity system needs at least one variable".into(),
            ));
        }
        for (l, eq) in equations.iter().enumerate() {
            if eq.vars.iter().any(|&v| v > n) {
                return Err(Error::Validation(format!(
                    "equation {} uses a variable outside 1..={n}: {:?}",
                    l + 1,
                    eq.vars
                )));
            }
        }
        Ok(Lin2System { n, equations })
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The equations in input order.
    pub fn equations(&self) -> &[Lin2Equation] {
        &self.equations
    }

    /// How many equations mention variable `i` (1-based).
    pub fn variable_multiplicity(&self, i: usize) -> usize {
        self.equations
            .iter()
            .filter(|eq| eq.vars.contains(&i))
            .count()
    }
}

/// Draws a random parity system: each equation picks three distinct
/// variables uniformly and a fair-coin parity.
pub fn random_lin2(n: usize, m: usize, seed: u64) -> Result<Lin2System> {
    if n < 3 {
        return Err(Error::Validation(format!(
            "random parity systems need n >= 3 variables, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let equations = (0..m)
        .map(|_| {
            let mut picks = rand::seq::index::sample(&mut rng, n, 3).into_vec();
            picks.sort_unstable();
            let parity = rng.gen_bool(0.5);
            Lin2Equation::new([picks[0] + 1, picks[1] + 1, picks[2] + 1], parity)
        })
        .collect::<Result<Vec<_>>>()?;
    Lin2System::new(n, equations)
}

/// Number of equations a Boolean assignment satisfies.
pub fn satisfied_equations(system: &Lin2System, assignment: &[bool]) -> Result<usize> {
    if assignment.len() != system.n {
        return Err(Error::Validation(format!(
            "assignment covers {} variables, the system has {}",
            assignment.len(),
            system.n
        )));
    }
    Ok(system
        .equations
        .iter()
        .filter(|eq| {
            let sum = eq.vars.iter().filter(|&&v| assignment[v - 1]).count();
            (sum % 2 == 1) == eq.parity
        })
        .count())
}

/// Exhaustively finds a best assignment (first maximizer in ascending
/// binary order).  Exponential in `n`; refuses beyond 30 variables.
pub fn best_assignment_by_enumeration(system: &Lin2System) -> Result<(Vec<bool>, usize)> {
    if system.n > 30 {
        return Err(Error::CapExceeded(format!(
            "exhaustive assignment search is limited to 30 variables, got {}",
            system.n
        )));
    }
    let mut best: Option<(Vec<bool>, usize)> = None;
    for mask in 0u64..(1u64 << system.n) {
        let assignment: Vec<bool> = (0..system.n).map(|i| mask & (1 << i) != 0).collect();
        let sat = satisfied_equations(system, &assignment)?;
        if best.as_ref().map_or(true, |(_, b)| sat > *b) {
            best = Some((assignment, sat));
        }
    }
    Ok(best.expect("at least the all-false assignment was tried"))
}

/// Appearance multiplicities of the reduction, written with `d = n + 1`
/// and the gap parameter fixed to `1/d` so every multiplicity is the
/// integer `d^2`, `d`, `d + 1`, `2d + 1`, or `3d + 1`.
struct GadgetScale {
    d: usize,
    /// `d / eps = d^2`
    per_eps: u64,
}

impl GadgetScale {
    fn new(n: usize) -> Self {
        let d = n + 1;
        GadgetScale {
            d,
            per_eps: (d * d) as u64,
        }
    }
}

/// Appearance specification and weighted pairs for the parity-system
/// gadget.  Constraint order: for each variable `i`, four constraints
/// `(y_i_t, z_i_t)` of weight `m_i` (the variable's multiplicity); then
/// for each equation `l`, four unit constraints `(b_l_t, c_l_t)`.
///
/// The four variable constraints pin the score drop `a_i = s_i - s_{i+1}`
/// into the windows `a_i > 0`, `a_i < 1/d`, `a_i > 1`, `a_i < 1 + 1/d`;
/// the four equation constraints do the same for the triple sum
/// `a_i + a_j + a_k` around `0` and `2` (even parity) or `1` and `3`
/// (odd parity).
pub fn lin2_appearance_spec(
    system: &Lin2System,
) -> Result<(AppearanceSpec, Vec<(AlternativeId, AlternativeId, Rat)>)> {
    let scale = GadgetScale::new(system.n);
    let d = scale.d;
    let per_eps = scale.per_eps;
    let mut entries: Vec<AppearanceEntry> = Vec::new();
    let mut pairs = Vec::with_capacity(4 * system.n + 4 * system.equations.len());
    let mut push = |alternative: &AlternativeId, position: usize, count: u64| {
        entries.push(AppearanceEntry {
            alternative: alternative.clone(),
            position,
            count,
        });
    };

    for i in 1..=system.n {
        let weight = Rat::from_int(system.variable_multiplicity(i) as i64);
        let named = |side: &str, t: usize| alt(format!("{side}{i}.{t}"));
        // a_i > 0
        let (y, z) = (named("y", 1), named("z", 1));
        push(&y, i, 1);
        push(&z, i + 1, 1);
        pairs.push((y, z, weight.clone()));
        // a_i < 1/d
        let (y, z) = (named("y", 2), named("z", 2));
        push(&y, 1, 1);
        push(&y, i + 1, per_eps);
        push(&z, i, per_eps);
        pairs.push((y, z, weight.clone()));
        // a_i > 1
        let (y, z) = (named("y", 3), named("z", 3));
        push(&y, i, d as u64);
        push(&z, 1, 1);
        push(&z, i + 1, d as u64);
        pairs.push((y, z, weight.clone()));
        // a_i < 1 + 1/d
        let (y, z) = (named("y", 4), named("z", 4));
        push(&y, 1, d as u64 + 1);
        push(&y, i + 1, per_eps);
        push(&z, i, per_eps);
        pairs.push((y, z, weight));
    }

    for (l, eq) in system.equations.iter().enumerate() {
        let [i, j, k] = eq.vars();
        let named = |side: &str, t: usize| alt(format!("{side}{}.{t}", l + 1));
        let unit = Rat::from_int(1);
        // The four thresholds for the triple sum, shifted by parity.
        if !eq.parity() {
            // sum > 0
            let (b, c) = (named("b", 1), named("c", 1));
            for v in [i, j, k] {
                push(&b, v, 1);
                push(&c, v + 1, 1);
            }
            pairs.push((b, c, unit.clone()));
            // sum < 1 (d appearances of the lead position against d/eps
            // per variable position)
            let (b, c) = (named("b", 2), named("c", 2));
            push(&b, 1, d as u64);
            for v in [i, j, k] {
                push(&b, v + 1, per_eps);
                push(&c, v, per_eps);
            }
            pairs.push((b, c, unit.clone()));
            // sum > 2
            let (b, c) = (named("b", 3), named("c", 3));
            push(&c, 1, 2);
            for v in [i, j, k] {
                push(&b, v, d as u64);
                push(&c, v + 1, d as u64);
            }
            pairs.push((b, c, unit.clone()));
            // sum < 2 + 1/d
            let (b, c) = (named("b", 4), named("c", 4));
            push(&b, 1, 2 * d as u64 + 1);
            for v in [i, j, k] {
                push(&b, v + 1, per_eps);
                push(&c, v, per_eps);
            }
            pairs.push((b, c, unit));
        } else {
            // sum > 1
            let (b, c) = (named("b", 1), named("c", 1));
            push(&c, 1, 1);
            for v in [i, j, k] {
                push(&b, v, d as u64);
                push(&c, v + 1, d as u64);
            }
            pairs.push((b, c, unit.clone()));
            // sum < 1 + 1/d
            let (b, c) = (named("b", 2), named("c", 2));
            push(&b, 1, d as u64 + 1);
            for v in [i, j, k] {
                push(&b, v + 1, per_eps);
                push(&c, v, per_eps);
            }
            pairs.push((b, c, unit.clone()));
            // sum > 3
            let (b, c) = (named("b", 3), named("c", 3));
            push(&c, 1, 3);
            for v in [i, j, k] {
                push(&b, v, d as u64);
                push(&c, v + 1, d as u64);
            }
            pairs.push((b, c, unit.clone()));
            // sum < 3 + 1/d
            let (b, c) = (named("b", 4), named("c", 4));
            push(&b, 1, 3 * d as u64 + 1);
            for v in [i, j, k] {
                push(&b, v + 1, per_eps);
                push(&c, v, per_eps);
            }
            pairs.push((b, c, unit));
        }
    }

    Ok((AppearanceSpec::new(d, entries)?, pairs))
}

/// Reduces a parity system to a constraint instance over `d = n + 1`
/// positions whose optimal gain is exactly `11 m + L*`, where `L*` is the
/// largest number of simultaneously satisfiable equations.
pub fn reduce_3lin2(system: &Lin2System) -> Result<Instance<Rat>> {
    let (spec, pairs) = lin2_appearance_spec(system)?;
    instance_from_appearances(&spec, &pairs)
}

/// The scoring vector a Boolean assignment induces: `s_1 = d` and each
/// drop `s_i - s_{i+1}` is `x_i + 1/(4d)` — deep inside the windows the
/// gadget constraints carve out, so the vector earns `11 m + L` whenever
/// the assignment satisfies `L` equations.
pub fn assignment_to_vector(
    system: &Lin2System,
    assignment: &[bool],
) -> Result<ScoringVector<Rat>> {
    if assignment.len() != system.n {
        return Err(Error::Validation(format!(
            "assignment covers {} variables, the system has {}",
            assignment.len(),
            system.n
        )));
    }
    let d = system.n + 1;
    let quarter_eps = Rat::new(1.into(), (4 * d).into());
    let mut scores = Vec::with_capacity(d);
    let mut current = Rat::from_int(d as i64);
    scores.push(current.clone());
    for &x in assignment {
        let drop = if x {
            Rat::from_int(1) + quarter_eps.clone()
        } else {
            quarter_eps.clone()
        };
        current = current - drop;
        scores.push(current.clone());
    }
    ScoringVector::new(scores)
        .map_err(|e| Error::Internal(format!("assignment vector failed validation: {e}")))
}
