//! Balanced `t`-partite `k`-uniform hypergraphs: legal sets, codegrees,
//! clique enumeration and the auxiliary clique `t`-graph.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A vertex of a partite hypergraph, identified by its class and its
/// position inside the class. Ordering is lexicographic on
/// `(class, index)`, which fixes every enumeration order in the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub class: u16,
    pub index: u32,
}

impl Vertex {
    pub fn new(class: u16, index: u32) -> Self {
        Vertex { class, index }
    }
}

impl fmt::Display for Vertex {
    /// File-format id: classes and in-class positions are 1-based on disk.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}.v{}", self.class + 1, self.index + 1)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Vertex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .strip_prefix('c')
            .ok_or_else(|| format!("vertex id `{s}` must start with `c`"))?;
        let (c, v) = inner
            .split_once(".v")
            .ok_or_else(|| format!("vertex id `{s}` must look like `c<i>.v<j>`"))?;
        let class: u16 = c.parse().map_err(|_| format!("bad class in `{s}`"))?;
        let index: u32 = v.parse().map_err(|_| format!("bad index in `{s}`"))?;
        if class == 0 || index == 0 {
            return Err(format!("vertex id `{s}` is 1-based"));
        }
        Ok(Vertex::new(class - 1, index - 1))
    }
}

/// A set of vertices meeting every class at most once, stored sorted by
/// `(class, index)`. Its index set `I` is the set of classes it touches.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LegalSet {
    verts: Vec<Vertex>,
}

/// A `[t]`-legal `t`-set; when all its legal `k`-subsets are edges it spans
/// a copy of the complete `k`-graph on `t` vertices.
pub type Clique = LegalSet;

impl LegalSet {
    /// Builds a legal set, rejecting repeated classes.
    pub fn new(mut verts: Vec<Vertex>) -> Result<Self, Error> {
        verts.sort_unstable();
        for w in verts.windows(2) {
            if w[0].class == w[1].class {
                return Err(Error::Precondition(format!(
                    "set is not legal: {} and {} share class {}",
                    w[0],
                    w[1],
                    w[0].class + 1
                )));
            }
        }
        Ok(LegalSet { verts })
    }

    /// The classes touched, in increasing order (the index set `I`).
    pub fn classes(&self) -> Vec<u16> {
        self.verts.iter().map(|v| v.class).collect()
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

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn is_disjoint(&self, other: &LegalSet) -> bool {
        self.verts.iter().all(|&v| !other.contains(v))
    }

    /// The legal set obtained by dropping one vertex.
    pub fn without(&self, v: Vertex) -> LegalSet {
        LegalSet {
            verts: self.verts.iter().copied().filter(|&u| u != v).collect(),
        }
    }

    /// Union with a vertex whose class is not yet present.
    pub fn with(&self, v: Vertex) -> Result<LegalSet, Error> {
        let mut verts = self.verts.clone();
        verts.push(v);
        LegalSet::new(verts)
    }
}

impl fmt::Debug for LegalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for LegalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One invariant violation found while checking raw instance data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Class index outside `[t]` or in-class index outside the class.
    BadVertex { edge: usize, vertex: String },
    /// Two vertices of one edge share a class.
    EdgeNotLegal { edge: usize },
    /// Edge has a number of vertices different from `k`.
    WrongEdgeSize { edge: usize, size: usize },
    /// The same `k`-set occurs twice.
    DuplicateEdge { edge: usize },
    /// Parameters out of range (`t < 2`, `k < 2` or `k > t`, size mismatch).
    BadParameters { msg: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadVertex { edge, vertex } => {
                write!(f, "edge #{edge}: vertex {vertex} out of range")
            }
            Violation::EdgeNotLegal { edge } => {
                write!(f, "edge #{edge} not legal: repeated class")
            }
            Violation::WrongEdgeSize { edge, size } => {
                write!(f, "edge #{edge} has {size} vertices, expected k")
            }
            Violation::DuplicateEdge { edge } => write!(f, "edge #{edge} is a duplicate"),
            Violation::BadParameters { msg } => write!(f, "bad parameters: {msg}"),
        }
    }
}

/// Report-style outcome of validating instance data; empty iff well-formed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks raw instance data against the partite-hypergraph invariants.
pub fn validate_instance(
    t: usize,
    k: usize,
    class_sizes: &[u32],
    edges: &[Vec<Vertex>],
) -> ValidationReport {
    let mut violations = Vec::new();
    if t < 2 || k < 2 || k > t {
        violations.push(Violation::BadParameters {
            msg: format!("need 2 <= k <= t, got t={t} k={k}"),
        });
    }
    if class_sizes.len() != t {
        violations.push(Violation::BadParameters {
            msg: format!("{} class sizes for t={t}", class_sizes.len()),
        });
        return ValidationReport { violations };
    }
    let mut seen: HashSet<Vec<Vertex>> = HashSet::with_capacity(edges.len());
    for (i, edge) in edges.iter().enumerate() {
        if edge.len() != k {
            violations.push(Violation::WrongEdgeSize {
                edge: i,
                size: edge.len(),
            });
            continue;
        }
        let mut bad_vertex = false;
        for &v in edge {
            if (v.class as usize) >= t || v.index >= class_sizes[v.class as usize] {
                violations.push(Violation::BadVertex {
                    edge: i,
                    vertex: v.to_string(),
                });
                bad_vertex = true;
            }
        }
        if bad_vertex {
            continue;
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0].class == w[1].class) {
            violations.push(Violation::EdgeNotLegal { edge: i });
            continue;
        }
        if !seen.insert(sorted) {
            violations.push(Violation::DuplicateEdge { edge: i });
        }
    }
    ValidationReport { violations }
}

/// The minimum codegree at one level, with an argmin witness.
#[derive(Clone, Debug, Serialize)]
pub struct CodegreeReport {
    pub level: usize,
    /// `δ̃_I` for every index set `I` of size `level` (classes 0-based).
    pub per_index_set: Vec<(Vec<u16>, u64)>,
    /// `δ̃_l = min_I δ̃_I`.
    pub overall: u64,
    pub witness: Option<CodegreeWitness>,
}

/// A `(T, J)` pair attaining the reported minimum.
#[derive(Clone, Debug, Serialize)]
pub struct CodegreeWitness {
    pub set: LegalSet,
    pub completion_classes: Vec<u16>,
}

/// A balanced (or not) `t`-partite `k`-uniform hypergraph, immutable after
/// construction. Codegree neighbourhoods at level `k-1` are indexed eagerly;
/// everything else is computed on demand.
#[derive(Clone)]
pub struct PartiteHypergraph {
    t: usize,
    k: usize,
    class_sizes: Vec<u32>,
    edges: Vec<LegalSet>,
    edge_set: HashSet<LegalSet>,
    /// `(k-1)`-set `T` and class `j` (not in `T`'s classes) to the bitset of
    /// in-class indices `x` with `T ∪ {(j,x)}` an edge.
    nbhd: HashMap<(Vec<Vertex>, u16), FixedBitSet>,
}

impl fmt::Debug for PartiteHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartiteHypergraph(t={}, k={}, sizes={:?}, {} edges)",
            self.t,
            self.k,
            self.class_sizes,
            self.edges.len()
        )
    }
}

impl PartiteHypergraph {
    /// Validates and builds; rejects ill-formed data with the full report.
    pub fn new(
        t: usize,
        k: usize,
        class_sizes: Vec<u32>,
        edges: Vec<Vec<Vertex>>,
    ) -> Result<Self, Error> {
        let report = validate_instance(t, k, &class_sizes, &edges);
        if !report.is_ok() {
            return Err(Error::Invalid(report));
        }
        let mut canon: Vec<LegalSet> = edges
            .into_iter()
            .map(|verts| LegalSet::new(verts).expect("validated"))
            .collect();
        canon.sort_unstable();
        canon.dedup();
        let edge_set: HashSet<LegalSet> = canon.iter().cloned().collect();

        let mut nbhd: HashMap<(Vec<Vertex>, u16), FixedBitSet> = HashMap::new();
        for edge in &canon {
            for &v in edge.vertices() {
                let rest: Vec<Vertex> = edge
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&u| u != v)
                    .collect();
                nbhd.entry((rest, v.class))
                    .or_insert_with(|| {
                        FixedBitSet::with_capacity(class_sizes[v.class as usize] as usize)
                    })
                    .insert(v.index as usize);
            }
        }
        Ok(PartiteHypergraph {
            t,
            k,
            class_sizes,
            edges: canon,
            edge_set,
            nbhd,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class_sizes(&self) -> &[u32] {
        &self.class_sizes
    }

    pub fn class_size(&self, class: u16) -> u32 {
        self.class_sizes[class as usize]
    }

    pub fn is_balanced(&self) -> bool {
        self.class_sizes.windows(2).all(|w| w[0] == w[1])
    }

    /// Class size of a balanced instance.
    pub fn n(&self) -> u32 {
        debug_assert!(self.is_balanced());
        self.class_sizes[0]
    }

    pub fn vertex_count(&self) -> usize {
        self.class_sizes.iter().map(|&s| s as usize).sum()
    }

    /// All vertices in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.class_sizes.iter().enumerate().flat_map(|(c, &s)| {
            (0..s).map(move |i| Vertex::new(c as u16, i))
        })
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[LegalSet] {
        &self.edges
    }

    pub fn has_edge(&self, e: &LegalSet) -> bool {
        self.edge_set.contains(e)
    }

    /// Re-checks the construction invariants (empty by construction).
    pub fn validate(&self) -> ValidationReport {
        let raw: Vec<Vec<Vertex>> = self.edges.iter().map(|e| e.vertices().to_vec()).collect();
        validate_instance(self.t, self.k, &self.class_sizes, &raw)
    }

    /// Completion bitset of a `(k-1)`-set `T` into class `j`, if any edge
    /// extends it.
    pub fn neighborhood(&self, set: &LegalSet, class: u16) -> Option<&FixedBitSet> {
        self.nbhd.get(&(set.vertices().to_vec(), class))
    }

    /// `deg_J(T)`: the number of `J`-legal sets `S` with `S ∪ T` an edge.
    pub fn codegree(&self, set: &LegalSet, completion: &[u16]) -> Result<u64, Error> {
        let classes = set.classes();
        if set.len() + completion.len() != self.k {
            return Err(Error::Precondition(format!(
                "|I| + |J| = {} but k = {}",
                set.len() + completion.len(),
                self.k
            )));
        }
        let mut j_sorted = completion.to_vec();
        j_sorted.sort_unstable();
        j_sorted.dedup();
        if j_sorted.len() != completion.len() {
            return Err(Error::Precondition("J has repeated classes".into()));
        }
        if j_sorted.iter().any(|j| classes.contains(j)) {
            return Err(Error::Precondition("J meets the classes of T".into()));
        }
        if j_sorted.iter().any(|&j| (j as usize) >= self.t) {
            return Err(Error::Precondition("J out of range".into()));
        }
        if completion.len() == 1 {
            return Ok(self
                .neighborhood(set, j_sorted[0])
                .map_or(0, |b| b.count_ones(..) as u64));
        }
        // General level: scan edges containing T whose classes are I ∪ J.
        let mut want: Vec<u16> = classes.clone();
        want.extend_from_slice(&j_sorted);
        want.sort_unstable();
        let count = self
            .edges
            .iter()
            .filter(|e| e.classes() == want)
            .filter(|e| set.vertices().iter().all(|&v| e.contains(v)))
            .count();
        Ok(count as u64)
    }

    /// `δ̃_l(H)`: exact minimum over all legal `l`-sets `T` and admissible
    /// completion index sets `J`, with witnesses.
    pub fn min_codegree(&self, level: usize) -> CodegreeReport {
        assert!(level >= 1 && level < self.k, "level must be in [1, k-1]");
        let mut per_index_set = Vec::new();
        let mut overall = u64::MAX;
        let mut witness = None;
        for index_set in subsets_of_classes(self.t, level) {
            let mut delta_i = u64::MAX;
            let rest: Vec<u16> = (0..self.t as u16)
                .filter(|c| !index_set.contains(c))
                .collect();
            for set in self.legal_sets(&index_set) {
                for completion in k_subsets(&rest, self.k - level) {
                    let d = self
                        .codegree(&set, &completion)
                        .expect("admissible by construction");
                    if d < delta_i {
                        delta_i = d;
                    }
                    if d < overall {
                        overall = d;
                        witness = Some(CodegreeWitness {
                            set: set.clone(),
                            completion_classes: completion.clone(),
                        });
                    }
                }
            }
            if delta_i == u64::MAX {
                // A class of size zero leaves no legal sets for this I.
                delta_i = 0;
            }
            per_index_set.push((index_set, delta_i));
        }
        if overall == u64::MAX {
            overall = 0;
        }
        CodegreeReport {
            level,
            per_index_set,
            overall,
            witness,
        }
    }

    /// All `I`-legal sets for a fixed index set, in lexicographic order.
    pub fn legal_sets(&self, index_set: &[u16]) -> Vec<LegalSet> {
        let mut out = Vec::new();
        let mut current: Vec<Vertex> = Vec::with_capacity(index_set.len());
        self.legal_sets_rec(index_set, 0, &mut current, &mut out);
        out
    }

    fn legal_sets_rec(
        &self,
        index_set: &[u16],
        depth: usize,
        current: &mut Vec<Vertex>,
        out: &mut Vec<LegalSet>,
    ) {
        if depth == index_set.len() {
            out.push(LegalSet {
                verts: current.clone(),
            });
            return;
        }
        let c = index_set[depth];
        for i in 0..self.class_sizes[c as usize] {
            current.push(Vertex::new(c, i));
            self.legal_sets_rec(index_set, depth + 1, current, out);
            current.pop();
        }
    }

    /// Enumerates every `[t]`-legal `t`-set spanning a complete `k`-graph,
    /// in lexicographic order by class then vertex id. A `cap` bounds the
    /// output; exceeding it returns the partial list in the error.
    pub fn enumerate_cliques(&self, cap: Option<usize>) -> Result<Vec<Clique>, Error> {
        let mut out = Vec::new();
        let full: Vec<FixedBitSet> = self
            .class_sizes
            .iter()
            .map(|&s| {
                let mut b = FixedBitSet::with_capacity(s as usize);
                b.insert_range(..);
                b
            })
            .collect();
        let mut chosen: Vec<Vertex> = Vec::with_capacity(self.t);
        let capped =
            self.clique_rec(&full, &mut chosen, cap, &mut out);
        if capped {
            return Err(Error::CliqueCapExceeded {
                cap: cap.unwrap_or(usize::MAX),
                partial: out,
            });
        }
        Ok(out)
    }

    /// Returns true if the cap was hit.
    fn clique_rec(
        &self,
        cand: &[FixedBitSet],
        chosen: &mut Vec<Vertex>,
        cap: Option<usize>,
        out: &mut Vec<Clique>,
    ) -> bool {
        let depth = chosen.len();
        if depth == self.t {
            if let Some(c) = cap {
                if out.len() >= c {
                    return true;
                }
            }
            out.push(LegalSet {
                verts: chosen.clone(),
            });
            return false;
        }
        // Every remaining class must still have candidates.
        if cand[depth..].iter().any(|b| b.count_ones(..) == 0) {
            return false;
        }
        let class = depth as u16;
        let indices: Vec<usize> = cand[depth].ones().collect();
        for idx in indices {
            let v = Vertex::new(class, idx as u32);
            chosen.push(v);
            let refined = self.refine_candidates(cand, chosen, v);
            let hit = match refined {
                Some(next) => self.clique_rec(&next, chosen, cap, out),
                None => false,
            };
            chosen.pop();
            if hit {
                return true;
            }
        }
        false
    }

    /// Intersects future-class candidates with the neighbourhoods of every
    /// new `(k-1)`-subset closed by `v`. `None` when some class empties.
    fn refine_candidates(
        &self,
        cand: &[FixedBitSet],
        chosen: &[Vertex],
        v: Vertex,
    ) -> Option<Vec<FixedBitSet>> {
        let mut next = cand.to_vec();
        let prior = &chosen[..chosen.len() - 1];
        if chosen.len() < self.k - 1 {
            return Some(next);
        }
        // (k-2)-subsets of the prior vertices, each completed by v.
        for q in k_subsets_vertices(prior, self.k - 2) {
            let mut p = q;
            p.push(v);
            p.sort_unstable();
            for class in chosen.len()..self.t {
                let bits = &mut next[class];
                match self.nbhd.get(&(p.clone(), class as u16)) {
                    Some(nb) => bits.intersect_with(nb),
                    None => bits.clear(),
                }
            }
        }
        if next[chosen.len()..].iter().any(|b| b.count_ones(..) == 0) && chosen.len() < self.t {
            return None;
        }
        Some(next)
    }

    /// The auxiliary clique `t`-graph: hyperedges are exactly the
    /// `K_t^k`-spanning `t`-sets of this instance.
    pub fn auxiliary_clique_graph(&self) -> TGraph {
        let cliques = self
            .enumerate_cliques(None)
            .expect("uncapped enumeration cannot exceed a cap");
        TGraph::new(self.t, self.class_sizes.clone(), cliques)
    }

    /// Induced subgraph on a vertex subset, re-indexed densely per class.
    /// The returned map gives, per class, the original in-class indices in
    /// increasing order (new index = position).
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> (PartiteHypergraph, Vec<Vec<u32>>) {
        let mut kept_per_class: Vec<Vec<u32>> = vec![Vec::new(); self.t];
        for &v in keep {
            kept_per_class[v.class as usize].push(v.index);
        }
        let mut renumber: HashMap<Vertex, Vertex> = HashMap::new();
        for (c, idxs) in kept_per_class.iter().enumerate() {
            for (newi, &oldi) in idxs.iter().enumerate() {
                renumber.insert(
                    Vertex::new(c as u16, oldi),
                    Vertex::new(c as u16, newi as u32),
                );
            }
        }
        let sizes: Vec<u32> = kept_per_class.iter().map(|v| v.len() as u32).collect();
        let edges: Vec<Vec<Vertex>> = self
            .edges
            .iter()
            .filter(|e| e.vertices().iter().all(|v| keep.contains(v)))
            .map(|e| e.vertices().iter().map(|v| renumber[v]).collect())
            .collect();
        let sub = PartiteHypergraph::new(self.t, self.k, sizes, edges)
            .expect("induced subgraph of a valid instance is valid");
        (sub, kept_per_class)
    }
}

/// A `t`-uniform `t`-partite hypergraph whose hyperedges are `[t]`-legal
/// `t`-sets; used for the auxiliary clique graph and the superposed sparse
/// graph of the two-round randomisation.
#[derive(Clone, Debug)]
pub struct TGraph {
    t: usize,
    class_sizes: Vec<u32>,
    edges: Vec<Clique>,
}

impl TGraph {
    /// Builds from hyperedges; panics on an illegal hyperedge (internal
    /// constructors only ever pass legal ones).
    pub fn new(t: usize, class_sizes: Vec<u32>, mut edges: Vec<Clique>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        for e in &edges {
            assert_eq!(e.len(), t, "hyperedge must have t vertices");
            assert_eq!(
                e.classes(),
                (0..t as u16).collect::<Vec<_>>(),
                "hyperedge must be [t]-legal"
            );
        }
        TGraph {
            t,
            class_sizes,
            edges,
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn class_sizes(&self) -> &[u32] {
        &self.class_sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.class_sizes.iter().map(|&s| s as usize).sum()
    }

    pub fn edges(&self) -> &[Clique] {
        &self.edges
    }

    pub fn has_edge(&self, e: &Clique) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Hyperedges lying entirely inside a vertex subset.
    pub fn restrict(&self, verts: &BTreeSet<Vertex>) -> TGraph {
        let edges = self
            .edges
            .iter()
            .filter(|e| e.vertices().iter().all(|v| verts.contains(v)))
            .cloned()
            .collect();
        TGraph {
            t: self.t,
            class_sizes: self.class_sizes.clone(),
            edges,
        }
    }

    /// Degree of a vertex (number of hyperedges containing it).
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }
}

/// All `size`-subsets of `0..t`, lexicographic.
pub(crate) fn subsets_of_classes(t: usize, size: usize) -> Vec<Vec<u16>> {
    k_subsets(&(0..t as u16).collect::<Vec<_>>(), size)
}

/// All `size`-subsets of a slice, lexicographic by position.
pub(crate) fn k_subsets(items: &[u16], size: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(items: &[u16], size: usize, start: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut cur, &mut out);
    out
}

pub(crate) fn k_subsets_vertices(items: &[Vertex], size: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(
        items: &[Vertex],
        size: usize,
        start: usize,
        cur: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete_partite;

    fn v(c: u16, i: u32) -> Vertex {
        Vertex::new(c, i)
    }

    #[test]
    fn vertex_id_round_trip() {
        let x = v(2, 6);
        assert_eq!(x.to_string(), "c3.v7");
        assert_eq!("c3.v7".parse::<Vertex>().unwrap(), x);
        assert!("c0.v1".parse::<Vertex>().is_err());
        assert!("x3.v7".parse::<Vertex>().is_err());
    }

    #[test]
    fn validate_flags_each_violation() {
        // Well-formed complete 3-partite instance.
        let h = complete_partite(3, 2, 2).unwrap();
        assert!(h.validate().is_ok());

        // Edge with two vertices in the same class.
        let report = validate_instance(3, 2, &[2, 2, 2], &[vec![v(0, 0), v(0, 1)]]);
        assert_eq!(report.violations, vec![Violation::EdgeNotLegal { edge: 0 }]);

        // Duplicate edge (in either vertex order).
        let report = validate_instance(
            3,
            2,
            &[2, 2, 2],
            &[vec![v(0, 0), v(1, 0)], vec![v(1, 0), v(0, 0)]],
        );
        assert_eq!(report.violations, vec![Violation::DuplicateEdge { edge: 1 }]);

        // Out-of-range vertex.
        let report = validate_instance(3, 2, &[2, 2, 2], &[vec![v(0, 0), v(3, 0)]]);
        assert!(matches!(
            report.violations[0],
            Violation::BadVertex { edge: 0, .. }
        ));
    }

    #[test]
    fn codegree_on_complete_graph() {
        let h = complete_partite(3, 2, 5).unwrap();
        let t = LegalSet::new(vec![v(0, 0)]).unwrap();
        assert_eq!(h.codegree(&t, &[1]).unwrap(), 5);
        assert_eq!(h.codegree(&t, &[2]).unwrap(), 5);
        // J meeting I is rejected.
        assert!(h.codegree(&t, &[0]).is_err());
        // Wrong arity is rejected.
        assert!(h.codegree(&t, &[1, 2]).is_err());
    }

    #[test]
    fn min_codegree_complete_and_edgeless() {
        let h = complete_partite(4, 3, 4).unwrap();
        let rep = h.min_codegree(2);
        assert_eq!(rep.overall, 4);
        let w = rep.witness.unwrap();
        assert_eq!(
            h.codegree(&w.set, &w.completion_classes).unwrap(),
            rep.overall
        );

        let empty = PartiteHypergraph::new(3, 2, vec![2, 2, 2], vec![]).unwrap();
        assert_eq!(empty.min_codegree(1).overall, 0);
    }

    #[test]
    fn cliques_of_complete_tripartite() {
        let h = complete_partite(3, 2, 2).unwrap();
        let cliques = h.enumerate_cliques(None).unwrap();
        assert_eq!(cliques.len(), 8);
        // Lexicographic order: first clique is (c1.v1, c2.v1, c3.v1).
        assert_eq!(cliques[0].vertices(), &[v(0, 0), v(1, 0), v(2, 0)]);
        let aux = h.auxiliary_clique_graph();
        assert_eq!(aux.edges().len(), 8);
    }

    #[test]
    fn cliques_cap_carries_partial_list() {
        let h = complete_partite(3, 2, 2).unwrap();
        match h.enumerate_cliques(Some(3)) {
            Err(Error::CliqueCapExceeded { cap: 3, partial }) => assert_eq!(partial.len(), 3),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn edgeless_graph_has_no_cliques() {
        let h = PartiteHypergraph::new(3, 2, vec![2, 2, 2], vec![]).unwrap();
        assert!(h.enumerate_cliques(None).unwrap().is_empty());
        assert!(h.auxiliary_clique_graph().edges().is_empty());
    }

    #[test]
    fn clique_graph_identity_when_k_equals_t() {
        // For k = t a K_t^t is a single edge, so H' has the same edge set.
        let h = complete_partite(3, 3, 2).unwrap();
        let aux = h.auxiliary_clique_graph();
        assert_eq!(aux.edges(), h.edges());
    }

    #[test]
    fn induced_subgraph_reindexes() {
        let h = complete_partite(3, 2, 3).unwrap();
        let keep: BTreeSet<Vertex> = [v(0, 0), v(0, 2), v(1, 1), v(2, 0), v(2, 2)]
            .into_iter()
            .collect();
        let (sub, map) = h.induced(&keep);
        assert_eq!(sub.class_sizes(), &[2, 1, 2]);
        assert_eq!(map[0], vec![0, 2]);
        // Complete instance stays complete on the kept vertices.
        assert_eq!(sub.edges().len(), 2 * 1 + 2 * 2 + 1 * 2);
    }
}
