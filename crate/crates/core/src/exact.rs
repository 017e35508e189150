//! Exact perfect-factor search, counting and maximum matchings on small
//! instances: the integral brute-force oracle for every other module.
//!
//! The search is exact-cover style: repeatedly pick the uncovered vertex
//! with the fewest extending cliques and branch on them, with a budget
//! measured in branch nodes so runtimes stay predictable.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::Error;
use crate::hypergraph::{k_subsets_vertices, Clique, LegalSet, PartiteHypergraph, TGraph, Vertex};

/// Default branch-node budget.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A family of pairwise vertex-disjoint cliques.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    cliques: Vec<Clique>,
}

impl Matching {
    pub fn new(mut cliques: Vec<Clique>) -> Self {
        cliques.sort_unstable();
        Matching { cliques }
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn covered(&self) -> BTreeSet<Vertex> {
        self.cliques
            .iter()
            .flat_map(|c| c.vertices().iter().copied())
            .collect()
    }

    /// Concatenation, rejecting overlaps.
    pub fn union(&self, other: &Matching) -> Result<Matching, Error> {
        let mine = self.covered();
        for c in other.cliques() {
            if c.vertices().iter().any(|v| mine.contains(v)) {
                return Err(Error::Precondition(format!(
                    "matchings overlap at {c:?}"
                )));
            }
        }
        let mut cliques = self.cliques.clone();
        cliques.extend(other.cliques.iter().cloned());
        Ok(Matching::new(cliques))
    }

    /// Checks every member spans a complete `k`-graph of the host and that
    /// members are pairwise disjoint.
    pub fn verify_in(&self, h: &PartiteHypergraph) -> Result<(), Error> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        for c in &self.cliques {
            verify_clique(h, c)?;
            for &v in c.vertices() {
                if !seen.insert(v) {
                    return Err(Error::Precondition(format!(
                        "vertex {v} covered twice"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Perfect iff it covers every vertex of the host (given validity).
    pub fn is_perfect_in(&self, h: &PartiteHypergraph) -> bool {
        self.verify_in(h).is_ok() && self.covered().len() == h.vertex_count()
    }
}

/// Checks that a `t`-set is `[t]`-legal and every legal `k`-subset is an
/// edge of the host.
pub fn verify_clique(h: &PartiteHypergraph, c: &Clique) -> Result<(), Error> {
    if c.len() != h.t() || c.classes() != (0..h.t() as u16).collect::<Vec<_>>() {
        return Err(Error::Precondition(format!("{c:?} is not [t]-legal")));
    }
    for sub in k_subsets_vertices(c.vertices(), h.k()) {
        let e = LegalSet::new(sub).expect("subset of a legal set is legal");
        if !h.has_edge(&e) {
            return Err(Error::Precondition(format!(
                "{c:?} misses edge {e:?}"
            )));
        }
    }
    Ok(())
}

/// Exact-cover instance over a dense element universe.
pub(crate) struct CoverInstance {
    universe: usize,
    set_size: usize,
    sets: Vec<FixedBitSet>,
    by_elem: Vec<Vec<u32>>,
}

#[derive(Debug, PartialEq)]
enum SearchOutcome {
    Found(Vec<u32>),
    /// Proven: no exact cover in this subtree.
    Exhausted,
    Budget,
}

impl CoverInstance {
    pub(crate) fn new(universe: usize, set_size: usize, members: Vec<Vec<u32>>) -> Self {
        let mut sets = Vec::with_capacity(members.len());
        let mut by_elem = vec![Vec::new(); universe];
        for (i, m) in members.iter().enumerate() {
            let mut b = FixedBitSet::with_capacity(universe);
            for &e in m {
                b.insert(e as usize);
                by_elem[e as usize].push(i as u32);
            }
            sets.push(b);
        }
        CoverInstance {
            universe,
            set_size,
            sets,
            by_elem,
        }
    }

    /// Fail-first pivot: the uncovered, unblocked element with the fewest
    /// available sets (ties to the smallest element). `None` when every
    /// element is covered or blocked.
    fn pivot(&self, blocked: &FixedBitSet) -> Option<(usize, Vec<u32>)> {
        let mut best: Option<(usize, Vec<u32>)> = None;
        for e in 0..self.universe {
            if blocked.contains(e) {
                continue;
            }
            let avail: Vec<u32> = self.by_elem[e]
                .iter()
                .copied()
                .filter(|&s| self.sets[s as usize].is_disjoint(blocked))
                .collect();
            let better = match &best {
                None => true,
                Some((_, b)) => avail.len() < b.len(),
            };
            if better {
                let empty = avail.is_empty();
                best = Some((e, avail));
                if empty {
                    break;
                }
            }
        }
        best
    }

    fn search_one(&self, covered: &mut FixedBitSet, chosen: &mut Vec<u32>, budget: &mut u64) -> SearchOutcome {
        if *budget == 0 {
            return SearchOutcome::Budget;
        }
        *budget -= 1;
        let (_, avail) = match self.pivot(covered) {
            None => return SearchOutcome::Found(chosen.clone()),
            Some(p) => p,
        };
        if avail.is_empty() {
            return SearchOutcome::Exhausted;
        }
        for s in avail {
            chosen.push(s);
            covered.union_with(&self.sets[s as usize]);
            let out = self.search_one(covered, chosen, budget);
            covered.difference_with(&self.sets[s as usize]);
            chosen.pop();
            match out {
                SearchOutcome::Exhausted => {}
                other => return other,
            }
        }
        SearchOutcome::Exhausted
    }

    /// Counts exact covers up to `cap`; the bool is false when the count is
    /// only a lower bound (cap hit). Branching on a fixed pivot element
    /// counts each unordered cover exactly once.
    fn count(
        &self,
        covered: &mut FixedBitSet,
        cap: u64,
        acc: &mut u64,
        budget: &mut u64,
    ) -> Result<bool, Error> {
        if *budget == 0 {
            return Err(Error::BudgetExhausted { nodes: 0 });
        }
        *budget -= 1;
        let (_, avail) = match self.pivot(covered) {
            None => {
                *acc += 1;
                return Ok(*acc < cap);
            }
            Some(p) => p,
        };
        for s in avail {
            covered.union_with(&self.sets[s as usize]);
            let keep_going = self.count(covered, cap, acc, budget)?;
            covered.difference_with(&self.sets[s as usize]);
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

}

/// Branch-and-bound maximum matching (disjoint sets, not necessarily a
/// cover). An element is either covered by a chosen set or explicitly
/// skipped; skipped elements block every set through them, so subtrees
/// never overlap and each family is visited once.
struct MaxSearch<'a> {
    inst: &'a CoverInstance,
    best: Vec<u32>,
    /// Stop as soon as a matching leaves at most this many uncovered.
    target_uncovered: usize,
    budget: u64,
    budget_hit: bool,
    target_hit: bool,
}

impl<'a> MaxSearch<'a> {
    fn run(&mut self, blocked: &mut FixedBitSet, chosen: &mut Vec<u32>) -> bool {
        if self.budget == 0 {
            self.budget_hit = true;
            return true;
        }
        self.budget -= 1;
        let free = self.inst.universe - blocked.count_ones(..);
        if chosen.len() + free / self.inst.set_size <= self.best.len() {
            return false;
        }
        let (e, avail) = match self.inst.pivot(blocked) {
            None => {
                if chosen.len() > self.best.len() {
                    self.best = chosen.clone();
                }
                let uncovered = self.inst.universe - self.best.len() * self.inst.set_size;
                if uncovered <= self.target_uncovered {
                    self.target_hit = true;
                    return true;
                }
                return false;
            }
            Some(p) => p,
        };
        for s in avail {
            chosen.push(s);
            blocked.union_with(&self.inst.sets[s as usize]);
            let stop = self.run(blocked, chosen);
            blocked.difference_with(&self.inst.sets[s as usize]);
            chosen.pop();
            if stop {
                return true;
            }
        }
        // Leave e uncovered.
        blocked.insert(e);
        let stop = self.run(blocked, chosen);
        blocked.remove(e);
        stop
    }
}

fn dense_index(h: &PartiteHypergraph) -> (Vec<u32>, impl Fn(Vertex) -> usize + '_) {
    // Offsets per class for (class, index) -> dense id.
    let mut offsets = Vec::with_capacity(h.t());
    let mut acc = 0u32;
    for &s in h.class_sizes() {
        offsets.push(acc);
        acc += s;
    }
    let off = offsets.clone();
    (offsets, move |v: Vertex| {
        off[v.class as usize] as usize + v.index as usize
    })
}

fn cover_instance_for(h: &PartiteHypergraph, cliques: &[Clique]) -> CoverInstance {
    let (_, dense) = dense_index(h);
    let members: Vec<Vec<u32>> = cliques
        .iter()
        .map(|c| c.vertices().iter().map(|&v| dense(v) as u32).collect())
        .collect();
    CoverInstance::new(h.vertex_count(), h.t(), members)
}

/// Searches for a perfect factor. `Ok(None)` means exhaustive search proved
/// nonexistence; a blown budget is the distinct `BudgetExhausted` error.
pub fn find_perfect_factor(
    h: &PartiteHypergraph,
    budget: u64,
) -> Result<Option<Matching>, Error> {
    if !h.is_balanced() {
        return Err(Error::Precondition(
            "perfect factors need a balanced instance".into(),
        ));
    }
    if h.vertex_count() == 0 {
        return Ok(Some(Matching::default()));
    }
    let cliques = h.enumerate_cliques(None)?;
    let inst = cover_instance_for(h, &cliques);
    let mut covered = FixedBitSet::with_capacity(h.vertex_count());
    let mut chosen = Vec::new();
    let mut left = budget;
    match inst.search_one(&mut covered, &mut chosen, &mut left) {
        SearchOutcome::Found(ids) => {
            let m = Matching::new(ids.iter().map(|&i| cliques[i as usize].clone()).collect());
            debug_assert!(m.is_perfect_in(h));
            Ok(Some(m))
        }
        SearchOutcome::Exhausted => Ok(None),
        SearchOutcome::Budget => Err(Error::BudgetExhausted {
            nodes: budget,
        }),
    }
}

/// Exact or capped count of perfect factors (unordered families).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorCount {
    Exact(u64),
    /// Cap reached; the true count is at least this.
    AtLeast(u64),
}

impl FactorCount {
    pub fn lower_bound(&self) -> u64 {
        match *self {
            FactorCount::Exact(c) | FactorCount::AtLeast(c) => c,
        }
    }
}

pub fn count_perfect_factors(
    h: &PartiteHypergraph,
    cap: u64,
    budget: u64,
) -> Result<FactorCount, Error> {
    if !h.is_balanced() {
        return Err(Error::Precondition(
            "perfect factors need a balanced instance".into(),
        ));
    }
    if h.vertex_count() == 0 {
        return Ok(FactorCount::Exact(1));
    }
    let cliques = h.enumerate_cliques(None)?;
    let inst = cover_instance_for(h, &cliques);
    let mut covered = FixedBitSet::with_capacity(h.vertex_count());
    let mut acc = 0u64;
    let mut left = budget;
    match inst.count(&mut covered, cap, &mut acc, &mut left) {
        Ok(true) => Ok(FactorCount::Exact(acc)),
        Ok(false) => Ok(FactorCount::AtLeast(acc)),
        Err(_) => Err(Error::BudgetExhausted { nodes: budget }),
    }
}

/// Result of the maximum-matching search.
#[derive(Clone, Debug, Serialize)]
pub struct AlmostFactor {
    pub matching: Matching,
    pub uncovered: usize,
    /// True when the search space was fully explored (or pruned exactly),
    /// so the matching is maximum.
    pub optimal: bool,
    pub budget_exhausted: bool,
}

/// Best-effort maximum clique matching; stops early once the uncovered
/// count reaches `max_uncovered`.
pub fn find_almost_factor(
    h: &PartiteHypergraph,
    max_uncovered: usize,
    budget: u64,
) -> Result<AlmostFactor, Error> {
    if max_uncovered % h.t() != 0 {
        return Err(Error::Precondition(format!(
            "max_uncovered {} must be a multiple of t={}",
            max_uncovered,
            h.t()
        )));
    }
    let cliques = h.enumerate_cliques(None)?;
    let inst = cover_instance_for(h, &cliques);
    let mut blocked = FixedBitSet::with_capacity(h.vertex_count());
    let mut chosen = Vec::new();
    let mut search = MaxSearch {
        inst: &inst,
        best: Vec::new(),
        target_uncovered: max_uncovered,
        budget,
        budget_hit: false,
        target_hit: false,
    };
    search.run(&mut blocked, &mut chosen);
    let matching = Matching::new(
        search
            .best
            .iter()
            .map(|&i| cliques[i as usize].clone())
            .collect(),
    );
    let uncovered = h.vertex_count() - matching.len() * h.t();
    Ok(AlmostFactor {
        matching,
        uncovered,
        optimal: (!search.budget_hit && !search.target_hit) || uncovered == 0,
        budget_exhausted: search.budget_hit,
    })
}

/// Perfect matching of a vertex subset by hyperedges of a `t`-graph
/// (exact cover of `verts` by edges inside `verts`). Used by the absorbing
/// machinery on the auxiliary clique graph.
pub fn perfect_tmatching(
    tg: &TGraph,
    verts: &BTreeSet<Vertex>,
    budget: u64,
) -> Result<Option<Vec<Clique>>, Error> {
    if verts.is_empty() {
        return Ok(Some(Vec::new()));
    }
    if verts.len() % tg.t() != 0 {
        return Ok(None);
    }
    let order: Vec<Vertex> = verts.iter().copied().collect();
    let id_of = |v: Vertex| order.binary_search(&v).expect("vertex in subset") as u32;
    let edges: Vec<&Clique> = tg
        .edges()
        .iter()
        .filter(|e| e.vertices().iter().all(|v| verts.contains(v)))
        .collect();
    let members: Vec<Vec<u32>> = edges
        .iter()
        .map(|e| e.vertices().iter().map(|&v| id_of(v)).collect())
        .collect();
    let inst = CoverInstance::new(order.len(), tg.t(), members);
    let mut covered = FixedBitSet::with_capacity(order.len());
    let mut chosen = Vec::new();
    let mut left = budget;
    match inst.search_one(&mut covered, &mut chosen, &mut left) {
        SearchOutcome::Found(ids) => Ok(Some(
            ids.into_iter().map(|i| edges[i as usize].clone()).collect(),
        )),
        SearchOutcome::Exhausted => Ok(None),
        SearchOutcome::Budget => Err(Error::BudgetExhausted { nodes: budget }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_partite, extremal_fractional};

    #[test]
    fn complete_tripartite_has_perfect_factor() {
        let h = complete_partite(3, 2, 2).unwrap();
        let m = find_perfect_factor(&h, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.is_perfect_in(&h));
    }

    #[test]
    fn extremal_instance_has_no_factor() {
        // No perfect fractional matching implies no perfect integral one.
        let h = extremal_fractional(3, 2, 3).unwrap();
        assert!(find_perfect_factor(&h, DEFAULT_BUDGET).unwrap().is_none());
        assert_eq!(
            count_perfect_factors(&h, 1 << 20, DEFAULT_BUDGET).unwrap(),
            FactorCount::Exact(0)
        );
    }

    #[test]
    fn factor_counts() {
        // K_{2,2,2}: 8 triangles pairing into 4 disjoint complements.
        let h = complete_partite(3, 2, 2).unwrap();
        assert_eq!(
            count_perfect_factors(&h, 1 << 20, DEFAULT_BUDGET).unwrap(),
            FactorCount::Exact(4)
        );
        let empty = PartiteHypergraph::new(3, 2, vec![2, 2, 2], vec![]).unwrap();
        assert_eq!(
            count_perfect_factors(&empty, 1 << 20, DEFAULT_BUDGET).unwrap(),
            FactorCount::Exact(0)
        );
    }

    #[test]
    fn count_cap_gives_lower_bound() {
        let h = complete_partite(3, 2, 2).unwrap();
        assert_eq!(
            count_perfect_factors(&h, 2, DEFAULT_BUDGET).unwrap(),
            FactorCount::AtLeast(2)
        );
    }

    #[test]
    fn almost_factor_extremes() {
        let h = complete_partite(3, 2, 4).unwrap();
        let out = find_almost_factor(&h, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(out.uncovered, 0);
        assert!(out.matching.is_perfect_in(&h));

        let empty = PartiteHypergraph::new(3, 2, vec![2, 2, 2], vec![]).unwrap();
        let out = find_almost_factor(&empty, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(out.uncovered, 6);
        assert!(out.matching.is_empty());
    }

    #[test]
    fn budget_exhaustion_is_not_none() {
        let h = complete_partite(3, 2, 3).unwrap();
        match find_perfect_factor(&h, 1) {
            Err(Error::BudgetExhausted { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn tmatching_on_clique_graph() {
        let h = complete_partite(3, 2, 2).unwrap();
        let aux = h.auxiliary_clique_graph();
        let verts: BTreeSet<Vertex> = h.vertices().collect();
        let m = perfect_tmatching(&aux, &verts, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(m.len(), 2);
    }
}
