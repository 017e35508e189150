//! Absorbing-set machinery: detect absorbing `m`-sets (m = t(t-1)), build a
//! disjoint absorbing family, and absorb a balanced leftover into a perfect
//! matching on the family union plus the leftover.
//!
//! A balanced `m`-set `A` absorbs a balanced `t`-set `T` when `A ∩ T = ∅`
//! and both `A` and `A ∪ T` span perfect matchings in the auxiliary clique
//! `t`-graph; both checks are decided exactly by the exact-cover solver on
//! the host restricted to `A` resp. `A ∪ T`.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::binomial;
use crate::error::Error;
use crate::exact::{find_perfect_factor, Matching};
use crate::hypergraph::{Clique, LegalSet, PartiteHypergraph, Vertex};
use crate::seeding;

/// Branch budget for the small exact searches inside absorption checks.
const CHECK_BUDGET: u64 = 1_000_000;

/// A vertex set with the same number of vertices in every class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BalancedSet {
    verts: Vec<Vertex>,
}

impl BalancedSet {
    pub fn new(mut verts: Vec<Vertex>, t: usize) -> Result<Self, Error> {
        verts.sort_unstable();
        verts.dedup();
        let mut counts = vec![0u32; t];
        for v in &verts {
            if (v.class as usize) >= t {
                return Err(Error::Precondition(format!("vertex {v} outside [t]")));
            }
            counts[v.class as usize] += 1;
        }
        if counts.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Precondition(format!(
                "set is not balanced: class counts {counts:?}"
            )));
        }
        Ok(BalancedSet { verts })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn per_class(&self, t: usize) -> usize {
        self.verts.len() / t
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn is_disjoint_from(&self, other: &[Vertex]) -> bool {
        other.iter().all(|&v| !self.contains(v))
    }

    pub fn as_set(&self) -> BTreeSet<Vertex> {
        self.verts.iter().copied().collect()
    }
}

/// Perfect clique matching of a balanced vertex subset, equivalently a
/// perfect matching of the auxiliary clique graph restricted to the subset.
/// Returns the witnessing clique family in host coordinates.
fn clique_matching_on(
    h: &PartiteHypergraph,
    verts: &BTreeSet<Vertex>,
) -> Result<Option<Vec<Clique>>, Error> {
    let (sub, map) = h.induced(verts);
    if !sub.is_balanced() {
        return Ok(None);
    }
    let found = find_perfect_factor(&sub, CHECK_BUDGET)?;
    Ok(found.map(|m| {
        m.cliques()
            .iter()
            .map(|c| {
                let verts = c
                    .vertices()
                    .iter()
                    .map(|v| Vertex::new(v.class, map[v.class as usize][v.index as usize]))
                    .collect();
                LegalSet::new(verts).expect("class structure preserved")
            })
            .collect()
    }))
}

/// True iff `A` is an absorbing `m`-set for the balanced `t`-set `T`.
pub fn is_absorbing(
    h: &PartiteHypergraph,
    a: &BalancedSet,
    t_set: &Clique,
) -> Result<bool, Error> {
    let t = h.t();
    let m = t * (t - 1);
    if a.len() != m {
        return Err(Error::Precondition(format!(
            "absorbing set must have t(t-1) = {m} vertices, got {}",
            a.len()
        )));
    }
    if t_set.len() != t || t_set.classes() != (0..t as u16).collect::<Vec<_>>() {
        return Err(Error::Precondition(
            "target must be a balanced (legal) t-set".into(),
        ));
    }
    if !a.is_disjoint_from(t_set.vertices()) {
        return Ok(false);
    }
    if clique_matching_on(h, &a.as_set())?.is_none() {
        return Ok(false);
    }
    let mut both = a.as_set();
    both.extend(t_set.vertices().iter().copied());
    Ok(clique_matching_on(h, &both)?.is_some())
}

/// Constructive search for absorbing `m`-sets for `T`: pick a clique through
/// the first vertex of `T` avoiding the rest of `T`, then for each later
/// class `j` a `(t-1)`-set completing both the picked `u_j` and the target
/// `v_j` into cliques, all pairwise disjoint. Every returned set passes
/// `is_absorbing`; the budget counts construction attempts.
pub fn find_absorbing_sets(
    h: &PartiteHypergraph,
    t_set: &Clique,
    sample_budget: usize,
    seed: u64,
) -> Result<Vec<BalancedSet>, Error> {
    let t = h.t();
    if t_set.len() != t || t_set.classes() != (0..t as u16).collect::<Vec<_>>() {
        return Err(Error::Precondition(
            "target must be a balanced (legal) t-set".into(),
        ));
    }
    let cliques = h.enumerate_cliques(None)?;
    let clique_set: HashSet<&Clique> = cliques.iter().collect();
    let mut by_vertex: std::collections::HashMap<Vertex, Vec<&Clique>> =
        std::collections::HashMap::new();
    for c in &cliques {
        for &v in c.vertices() {
            by_vertex.entry(v).or_default().push(c);
        }
    }
    let targets = t_set.vertices();
    let mut rng = seeding::stream(seed, "absorb.search");
    let mut found: BTreeSet<BalancedSet> = BTreeSet::new();
    let empty: Vec<&Clique> = Vec::new();

    for _ in 0..sample_budget {
        // Step 1: a clique through v_1 avoiding T ∖ v_1.
        let v1 = targets[0];
        let candidates: Vec<&&Clique> = by_vertex
            .get(&v1)
            .unwrap_or(&empty)
            .iter()
            .filter(|c| targets[1..].iter().all(|&u| !c.contains(u)))
            .collect();
        let first: &Clique = match candidates.as_slice().choose(&mut rng) {
            Some(c) => c,
            None => break, // no usable clique through v_1: give up early
        };
        let mut groups: Vec<Vec<Vertex>> = Vec::with_capacity(t);
        let u_main: Vec<Vertex> = first
            .vertices()
            .iter()
            .copied()
            .filter(|&u| u != v1)
            .collect();
        groups.push(u_main.clone());
        let mut used: BTreeSet<Vertex> = targets.iter().copied().collect();
        used.extend(u_main.iter().copied());

        let mut ok = true;
        for j in 1..t {
            let u_j = u_main[j - 1];
            let v_j = targets[j];
            debug_assert_eq!(u_j.class as usize, j);
            // U_j with both U_j ∪ {u_j} and U_j ∪ {v_j} cliques, avoiding
            // everything picked so far.
            let choices: Vec<Vec<Vertex>> = by_vertex
                .get(&u_j)
                .unwrap_or(&empty)
                .iter()
                .filter_map(|c| {
                    let rest: Vec<Vertex> = c
                        .vertices()
                        .iter()
                        .copied()
                        .filter(|&x| x != u_j)
                        .collect();
                    if rest.iter().any(|v| used.contains(v)) {
                        return None;
                    }
                    let mut with_vj = rest.clone();
                    with_vj.push(v_j);
                    let alt = LegalSet::new(with_vj).ok()?;
                    clique_set.contains(&alt).then_some(rest)
                })
                .collect();
            match choices.as_slice().choose(&mut rng) {
                Some(u_set) => {
                    used.extend(u_set.iter().copied());
                    groups.push(u_set.clone());
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let all: Vec<Vertex> = groups.into_iter().flatten().collect();
        let a = BalancedSet::new(all, t)?;
        if is_absorbing(h, &a, t_set)? {
            found.insert(a);
        }
    }
    Ok(found.into_iter().collect())
}

/// Configuration for absorbing-family construction.
#[derive(Clone, Debug, Serialize)]
pub struct AbsorptionConfig {
    /// Slack parameter in (0,1); drives the default selection probability.
    pub gamma: f64,
    /// Overrides the formula `p = γ^m n / (t^3 2^{t+3} C(n,t-1)^t)`.
    pub selection_prob: Option<f64>,
    /// Cap on `|U|` in vertices.
    pub family_size_budget: usize,
    /// Largest leftover `|W|` the family must absorb (multiple of `t`).
    pub leftover_capacity: usize,
    pub max_retries: usize,
    /// Balanced `t`-sets sampled for the coverage audit per attempt.
    pub audit_sets: usize,
    pub seed: u64,
}

impl AbsorptionConfig {
    /// Desk-scale defaults for a balanced host: capacity `t·⌈0.02n⌉`,
    /// unbounded family budget, 20 audited sets.
    pub fn for_host(h: &PartiteHypergraph, gamma: f64, seed: u64) -> Self {
        let t = h.t();
        let n = h.n() as usize;
        AbsorptionConfig {
            gamma,
            selection_prob: None,
            family_size_budget: usize::MAX,
            leftover_capacity: t * n.div_ceil(50),
            max_retries: 16,
            audit_sets: 20,
            seed,
        }
    }

    fn check(&self) -> Result<(), Error> {
        if !(0.0..1.0).contains(&self.gamma) || self.gamma <= 0.0 {
            return Err(Error::Precondition("gamma must lie in (0,1)".into()));
        }
        if let Some(p) = self.selection_prob {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Precondition(
                    "selection probability outside [0,1]".into(),
                ));
            }
        }
        Ok(())
    }
}

/// The paper-default selection probability for balanced `m`-sets.
pub fn default_selection_prob(t: usize, n: u32, gamma: f64) -> f64 {
    let m = (t * (t - 1)) as i32;
    let pool = balanced_mset_count(t, n);
    gamma.powi(m) * n as f64 / ((t * t * t) as f64 * 2f64.powi(t as i32 + 3) * pool)
}

fn balanced_mset_count(t: usize, n: u32) -> f64 {
    let per_class = binomial(n as u64, (t - 1) as u64).unwrap_or(u64::MAX) as f64;
    per_class.powi(t as i32)
}

/// One member of the family: a balanced `m`-set together with the clique
/// matching that covers it alone.
#[derive(Clone, Debug, Serialize)]
pub struct AbsorbingMember {
    pub set: BalancedSet,
    pub base_matching: Vec<Clique>,
}

/// A disjoint family of absorbing `m`-sets with audit statistics.
#[derive(Clone, Debug, Serialize)]
pub struct AbsorbingFamily {
    pub members: Vec<AbsorbingMember>,
    /// Audited balanced `t`-sets with their family coverage `|L(T) ∩ F'|`.
    pub audit: Vec<(Clique, usize)>,
    /// Sampled sets discarded for intersecting another sampled set.
    pub pruned_intersecting: usize,
    /// Sampled sets discarded for not spanning a clique matching.
    pub pruned_non_absorbing: usize,
    pub attempts: usize,
}

impl AbsorbingFamily {
    /// The union `U` of all members; balanced by construction.
    pub fn union(&self) -> BTreeSet<Vertex> {
        self.members
            .iter()
            .flat_map(|m| m.set.vertices().iter().copied())
            .collect()
    }

    /// Leftover vertices this family can still absorb (t per member).
    pub fn capacity(&self, t: usize) -> usize {
        t * self.members.len()
    }
}

/// Builds a disjoint absorbing family by seeded sampling of balanced
/// `m`-sets, pruning intersecting pairs and non-absorbing sets, and
/// auditing coverage on sampled balanced `t`-sets outside the union.
/// Retries with a fresh sub-seed when an audited set has no absorber.
pub fn build_absorbing_family(
    h: &PartiteHypergraph,
    cfg: &AbsorptionConfig,
) -> Result<AbsorbingFamily, Error> {
    cfg.check()?;
    if !h.is_balanced() {
        return Err(Error::Precondition("host must be balanced".into()));
    }
    let t = h.t();
    let n = h.n();
    let m = t * (t - 1);
    if cfg.leftover_capacity % t != 0 {
        return Err(Error::Precondition(
            "leftover capacity must be a multiple of t".into(),
        ));
    }
    if (n as usize) < t - 1 {
        return Err(Error::Precondition("class size below t-1".into()));
    }

    // Formula-driven member count, floored so the requested capacity stays
    // absorbable with a 2x margin, capped by the vertex budget and by what
    // the host can spare.
    let p = cfg
        .selection_prob
        .unwrap_or_else(|| default_selection_prob(t, n, cfg.gamma));
    let formula_members = (p * balanced_mset_count(t, n)).round() as usize;
    let need_members = cfg.leftover_capacity / t;
    let mut target = formula_members.max(2 * need_members);
    target = target.min(cfg.family_size_budget / m);
    let sparable = (n as usize).saturating_sub(2 * t) / (t - 1);
    target = target.min(sparable);
    if target < need_members {
        return Err(Error::Precondition(format!(
            "family budget allows {target} members but capacity needs {need_members}"
        )));
    }
    if target == 0 {
        return Ok(AbsorbingFamily {
            members: Vec::new(),
            audit: Vec::new(),
            pruned_intersecting: 0,
            pruned_non_absorbing: 0,
            attempts: 0,
        });
    }

    for attempt in 0..cfg.max_retries {
        let mut rng = seeding::stream(seeding::subseed(cfg.seed, attempt as u64), "absorb.family");
        if let Some(mut fam) = try_build(h, cfg, target, &mut rng)? {
            fam.attempts = attempt + 1;
            return Ok(fam);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: cfg.max_retries,
        context: "absorbing family audit kept failing".into(),
    })
}

fn sample_balanced_mset(h: &PartiteHypergraph, rng: &mut ChaCha8Rng) -> BalancedSet {
    let t = h.t();
    let n = h.n() as usize;
    let mut verts = Vec::with_capacity(t * (t - 1));
    for c in 0..t {
        let picks = rand::seq::index::sample(rng, n, t - 1);
        for i in picks.iter() {
            verts.push(Vertex::new(c as u16, i as u32));
        }
    }
    BalancedSet::new(verts, t).expect("sampled set is balanced by construction")
}

fn try_build(
    h: &PartiteHypergraph,
    cfg: &AbsorptionConfig,
    target: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<AbsorbingFamily>, Error> {
    let t = h.t();
    // Sample a batch of the target size, then prune: drop every member of
    // an intersecting pair, then drop non-absorbing sets.
    let sampled: Vec<BalancedSet> = (0..target).map(|_| sample_balanced_mset(h, rng)).collect();
    let mut intersecting = vec![false; sampled.len()];
    for i in 0..sampled.len() {
        for j in i + 1..sampled.len() {
            if !sampled[i].is_disjoint_from(sampled[j].vertices()) {
                intersecting[i] = true;
                intersecting[j] = true;
            }
        }
    }
    let mut pruned_intersecting = intersecting.iter().filter(|&&b| b).count();
    let mut members = Vec::new();
    let mut pruned_non_absorbing = 0;
    for (set, _) in sampled
        .into_iter()
        .zip(intersecting.iter())
        .filter(|(_, &bad)| !bad)
    {
        match clique_matching_on(h, &set.as_set())? {
            Some(base_matching) => members.push(AbsorbingMember { set, base_matching }),
            None => pruned_non_absorbing += 1,
        }
    }
    // Intersecting pairs are rare asymptotically but common at desk scale;
    // top the family back up with disjoint admissions from the same stream.
    let mut top_up = 60 * target + 120;
    while members.len() < target && top_up > 0 {
        top_up -= 1;
        let set = sample_balanced_mset(h, rng);
        if members
            .iter()
            .any(|m: &AbsorbingMember| !set.is_disjoint_from(m.set.vertices()))
        {
            pruned_intersecting += 1;
            continue;
        }
        match clique_matching_on(h, &set.as_set())? {
            Some(base_matching) => members.push(AbsorbingMember { set, base_matching }),
            None => pruned_non_absorbing += 1,
        }
    }
    if members.len() < cfg.leftover_capacity / t {
        return Ok(None);
    }

    // Coverage audit over balanced t-sets outside the union.
    let family = AbsorbingFamily {
        members,
        audit: Vec::new(),
        pruned_intersecting,
        pruned_non_absorbing,
        attempts: 0,
    };
    let union = family.union();
    let free_per_class: Vec<Vec<u32>> = (0..t)
        .map(|c| {
            (0..h.n())
                .filter(|&i| !union.contains(&Vertex::new(c as u16, i)))
                .collect()
        })
        .collect();
    if free_per_class.iter().any(|f| f.is_empty()) {
        return Ok(None);
    }
    let mut audit = Vec::new();
    if cfg.leftover_capacity > 0 {
        for _ in 0..cfg.audit_sets {
            let verts: Vec<Vertex> = free_per_class
                .iter()
                .enumerate()
                .map(|(c, free)| Vertex::new(c as u16, free[rng.gen_range(0..free.len())]))
                .collect();
            let t_set = LegalSet::new(verts).expect("one vertex per class");
            let mut covered = 0usize;
            for member in &family.members {
                if is_absorbing(h, &member.set, &t_set)? {
                    covered += 1;
                }
            }
            if covered == 0 {
                return Ok(None);
            }
            audit.push((t_set, covered));
        }
    }
    Ok(Some(AbsorbingFamily { audit, ..family }))
}

/// Absorbs a balanced leftover `W` into a perfect matching on `U ∪ W`:
/// partitions `W` into class-aligned balanced `t`-sets, assigns each to an
/// unused absorbing member (first fit), and covers unused members by their
/// own clique matchings.
pub fn absorb_leftover(
    h: &PartiteHypergraph,
    family: &AbsorbingFamily,
    leftover: &BalancedSet,
) -> Result<Matching, Error> {
    let t = h.t();
    let union = family.union();
    if leftover.vertices().iter().any(|v| union.contains(v)) {
        return Err(Error::Precondition(
            "leftover intersects the family union".into(),
        ));
    }
    if leftover.len() % t != 0 {
        return Err(Error::Precondition(
            "leftover size must be a multiple of t".into(),
        ));
    }
    if leftover.len() > family.capacity(t) {
        return Err(Error::AbsorptionFailure(format!(
            "leftover {} exceeds family capacity {}",
            leftover.len(),
            family.capacity(t)
        )));
    }

    // Class-aligned pairing: the i-th smallest leftover vertex of each
    // class forms the i-th t-set.
    let per_class = leftover.per_class(t);
    let mut by_class: Vec<Vec<Vertex>> = vec![Vec::new(); t];
    for &v in leftover.vertices() {
        by_class[v.class as usize].push(v);
    }
    let t_sets: Vec<Clique> = (0..per_class)
        .map(|i| {
            let verts: Vec<Vertex> = (0..t).map(|c| by_class[c][i]).collect();
            LegalSet::new(verts).expect("one vertex per class")
        })
        .collect();

    let mut used = vec![false; family.members.len()];
    let mut cliques: Vec<Clique> = Vec::new();
    for t_set in &t_sets {
        let mut absorbed = false;
        for (i, member) in family.members.iter().enumerate() {
            if used[i] {
                continue;
            }
            if !is_absorbing(h, &member.set, t_set)? {
                continue;
            }
            let mut both = member.set.as_set();
            both.extend(t_set.vertices().iter().copied());
            let matching =
                clique_matching_on(h, &both)?.expect("is_absorbing verified a matching exists");
            cliques.extend(matching);
            used[i] = true;
            absorbed = true;
            break;
        }
        if !absorbed {
            return Err(Error::AbsorptionFailure(format!(
                "no unused absorbing member for {t_set:?}"
            )));
        }
    }
    for (i, member) in family.members.iter().enumerate() {
        if !used[i] {
            cliques.extend(member.base_matching.iter().cloned());
        }
    }
    let matching = Matching::new(cliques);
    matching.verify_in(h)?;
    let mut expect = union;
    expect.extend(leftover.vertices().iter().copied());
    if matching.covered() != expect {
        return Err(Error::AbsorptionFailure(
            "absorbed matching does not cover exactly U ∪ W".into(),
        ));
    }
    Ok(matching)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_partite, random_with_codegree_ratio};
    use crate::hypergraph::PartiteHypergraph;

    fn v(c: u16, i: u32) -> Vertex {
        Vertex::new(c, i)
    }

    fn first_t_set(h: &PartiteHypergraph) -> Clique {
        LegalSet::new((0..h.t()).map(|c| v(c as u16, 0)).collect()).unwrap()
    }

    #[test]
    fn complete_host_absorbs_everything() {
        let h = complete_partite(3, 2, 4).unwrap();
        let t_set = first_t_set(&h);
        // Any balanced 6-set disjoint from T absorbs T.
        let a = BalancedSet::new(
            vec![v(0, 1), v(0, 2), v(1, 1), v(1, 2), v(2, 1), v(2, 2)],
            3,
        )
        .unwrap();
        assert!(is_absorbing(&h, &a, &t_set).unwrap());

        // Overlap with T makes it non-absorbing by definition.
        let overlapping = BalancedSet::new(
            vec![v(0, 0), v(0, 2), v(1, 1), v(1, 2), v(2, 1), v(2, 2)],
            3,
        )
        .unwrap();
        assert!(!is_absorbing(&h, &overlapping, &t_set).unwrap());

        // Wrong size is rejected, not false.
        let small = BalancedSet::new(vec![v(0, 1), v(1, 1), v(2, 1)], 3).unwrap();
        assert!(is_absorbing(&h, &small, &t_set).is_err());
    }

    #[test]
    fn constructive_search_finds_all_on_complete_host() {
        let h = complete_partite(3, 2, 4).unwrap();
        let t_set = first_t_set(&h);
        let found = find_absorbing_sets(&h, &t_set, 4000, 11).unwrap();
        // All C(3,2)^3 = 27 balanced 6-sets avoiding T absorb it, and the
        // exhaustive-budget constructive search reaches every one.
        assert_eq!(found.len(), 27);
        for a in &found {
            assert!(is_absorbing(&h, a, &t_set).unwrap());
        }
    }

    #[test]
    fn edgeless_host_has_no_absorbing_sets() {
        let h = PartiteHypergraph::new(3, 2, vec![4, 4, 4], vec![]).unwrap();
        let t_set = first_t_set(&h);
        assert!(find_absorbing_sets(&h, &t_set, 100, 1).unwrap().is_empty());
    }

    #[test]
    fn family_respects_budgets() {
        let h = complete_partite(3, 2, 30).unwrap();
        let cfg = AbsorptionConfig {
            gamma: 0.5,
            selection_prob: None,
            family_size_budget: 12,
            leftover_capacity: 6,
            max_retries: 8,
            audit_sets: 5,
            seed: 3,
        };
        let fam = build_absorbing_family(&h, &cfg).unwrap();
        let union = fam.union();
        assert!(union.len() <= 12);
        assert_eq!(union.len() % 6, 0);
        let mut counts = [0; 3];
        for v in &union {
            counts[v.class as usize] += 1;
        }
        assert!(counts.windows(2).all(|w| w[0] == w[1]));
        // Disjointness across members.
        assert_eq!(
            union.len(),
            fam.members.iter().map(|m| m.set.len()).sum::<usize>()
        );
    }

    #[test]
    fn zero_budget_family_only_for_zero_capacity() {
        let h = complete_partite(3, 2, 12).unwrap();
        let cfg = AbsorptionConfig {
            gamma: 0.5,
            selection_prob: None,
            family_size_budget: 0,
            leftover_capacity: 0,
            max_retries: 4,
            audit_sets: 4,
            seed: 3,
        };
        let fam = build_absorbing_family(&h, &cfg).unwrap();
        assert!(fam.members.is_empty());

        let bad = AbsorptionConfig {
            leftover_capacity: 6,
            ..cfg
        };
        assert!(build_absorbing_family(&h, &bad).is_err());
    }

    #[test]
    fn absorb_empty_leftover_covers_union_alone() {
        let h = complete_partite(3, 2, 12).unwrap();
        let cfg = AbsorptionConfig {
            gamma: 0.5,
            selection_prob: None,
            family_size_budget: usize::MAX,
            leftover_capacity: 6,
            max_retries: 8,
            audit_sets: 6,
            seed: 5,
        };
        let fam = build_absorbing_family(&h, &cfg).unwrap();
        let m = absorb_leftover(&h, &fam, &BalancedSet::new(vec![], 3).unwrap()).unwrap();
        assert_eq!(m.covered(), fam.union());
    }

    #[test]
    fn absorb_round_trip_on_dense_random_host() {
        let h = random_with_codegree_ratio(3, 2, 15, 0.9, 21).unwrap();
        let cfg = AbsorptionConfig {
            gamma: 0.5,
            selection_prob: None,
            family_size_budget: usize::MAX,
            leftover_capacity: 6,
            max_retries: 16,
            audit_sets: 10,
            seed: 9,
        };
        let fam = build_absorbing_family(&h, &cfg).unwrap();
        let union = fam.union();
        // Take the first two free vertices of each class as the leftover.
        let mut leftover = Vec::new();
        for c in 0..3u16 {
            let mut picked = 0;
            for i in 0..h.n() {
                let u = Vertex::new(c, i);
                if !union.contains(&u) {
                    leftover.push(u);
                    picked += 1;
                    if picked == 2 {
                        break;
                    }
                }
            }
        }
        let w = BalancedSet::new(leftover, 3).unwrap();
        let m = absorb_leftover(&h, &fam, &w).unwrap();
        m.verify_in(&h).unwrap();
        let mut expect = union;
        expect.extend(w.vertices().iter().copied());
        assert_eq!(m.covered(), expect);
    }
}
