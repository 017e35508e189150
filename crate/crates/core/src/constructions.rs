//! Instance generators: complete partite hosts, the extremal instance with
//! no perfect fractional clique matching, and seeded random instances with
//! controlled minimum codegree.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::hypergraph::{subsets_of_classes, LegalSet, PartiteHypergraph, Vertex};
use crate::seeding;

/// Hard guard against accidentally materialising astronomically many legal
/// `k`-sets.
pub const LEGAL_SET_CAP: u64 = 50_000_000;

/// What to generate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "mode")]
pub enum GeneratorMode {
    Complete,
    Extremal,
    UniformRandom { edge_prob: f64 },
    MinCodegreeTarget { delta_tilde: u32 },
}

/// Full generator specification; the same spec always yields the same
/// instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorSpec {
    pub t: usize,
    pub k: usize,
    pub n: u32,
    #[serde(flatten)]
    pub mode: GeneratorMode,
    pub seed: u64,
}

impl GeneratorSpec {
    fn check(&self) -> Result<(), Error> {
        if self.t < 2 || self.k < 2 || self.k > self.t {
            return Err(Error::Precondition(format!(
                "need 2 <= k <= t, got t={} k={}",
                self.t, self.k
            )));
        }
        if self.n < 1 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        if let GeneratorMode::UniformRandom { edge_prob } = self.mode {
            if !(0.0..=1.0).contains(&edge_prob) {
                return Err(Error::Precondition(format!(
                    "edge probability {edge_prob} outside [0,1]"
                )));
            }
        }
        Ok(())
    }
}

/// Number of legal `k`-sets in a balanced instance, or `None` on overflow.
fn legal_set_count(t: usize, k: usize, n: u32) -> Option<u64> {
    let index_sets = binomial(t as u64, k as u64)?;
    let per_set = (n as u64).checked_pow(k as u32)?;
    index_sets.checked_mul(per_set)
}

pub(crate) fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// All legal `k`-sets in lexicographic order (index set, then vertices).
fn legal_k_sets(t: usize, k: usize, n: u32) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for index_set in subsets_of_classes(t, k) {
        let mut cur: Vec<Vertex> = Vec::with_capacity(k);
        fill(&index_set, 0, n, &mut cur, &mut out);
    }
    fn fill(classes: &[u16], depth: usize, n: u32, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if depth == classes.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            cur.push(Vertex::new(classes[depth], i));
            fill(classes, depth + 1, n, cur, out);
            cur.pop();
        }
    }
    out
}

/// The balanced instance in which every legal `k`-set is an edge.
pub fn complete_partite(t: usize, k: usize, n: u32) -> Result<PartiteHypergraph, Error> {
    if t < 2 || k < 2 || k > t {
        return Err(Error::Precondition(format!(
            "need 2 <= k <= t, got t={t} k={k}"
        )));
    }
    match legal_set_count(t, k, n) {
        Some(c) if c <= LEGAL_SET_CAP => {}
        _ => {
            return Err(Error::Precondition(format!(
                "complete instance with t={t} k={k} n={n} exceeds the legal-set cap"
            )))
        }
    }
    PartiteHypergraph::new(t, k, vec![n; t], legal_k_sets(t, k, n))
}

/// Size of each blocker set `W_i` in the extremal instance.
pub fn extremal_blocker_size(t: usize, k: usize, n: u32) -> u32 {
    // ⌈(t-k+1)n/t⌉ - 1
    let num = (t - k + 1) as u64 * n as u64;
    (num.div_ceil(t as u64) - 1) as u32
}

/// The extremal instance: fix the first `⌈(t-k+1)n/t⌉ - 1` vertices of each
/// class as `W_i`; edges are exactly the legal `k`-sets meeting `⋃ W_i`.
/// Its minimum codegree at level `k-1` is the blocker size, yet it has no
/// perfect fractional clique matching.
pub fn extremal_fractional(t: usize, k: usize, n: u32) -> Result<PartiteHypergraph, Error> {
    if t < 2 || k < 2 || k > t || n < 1 {
        return Err(Error::Precondition(format!(
            "need 2 <= k <= t and n >= 1, got t={t} k={k} n={n}"
        )));
    }
    let w = extremal_blocker_size(t, k, n);
    match legal_set_count(t, k, n) {
        Some(c) if c <= LEGAL_SET_CAP => {}
        _ => {
            return Err(Error::Precondition(format!(
                "extremal instance with t={t} k={k} n={n} exceeds the legal-set cap"
            )))
        }
    }
    let edges = legal_k_sets(t, k, n)
        .into_iter()
        .filter(|e| e.iter().any(|v| v.index < w))
        .collect();
    PartiteHypergraph::new(t, k, vec![n; t], edges)
}

/// Seeded uniform-random instance: each legal `k`-set is an edge
/// independently with the spec's probability.
pub fn random_partite(spec: &GeneratorSpec) -> Result<PartiteHypergraph, Error> {
    spec.check()?;
    let edge_prob = match spec.mode {
        GeneratorMode::UniformRandom { edge_prob } => edge_prob,
        GeneratorMode::Complete => return complete_partite(spec.t, spec.k, spec.n),
        GeneratorMode::Extremal => return extremal_fractional(spec.t, spec.k, spec.n),
        GeneratorMode::MinCodegreeTarget { .. } => {
            return Err(Error::Precondition(
                "use random_with_min_codegree for codegree-target specs".into(),
            ))
        }
    };
    match legal_set_count(spec.t, spec.k, spec.n) {
        Some(c) if c <= LEGAL_SET_CAP => {}
        _ => {
            return Err(Error::Precondition(format!(
                "random instance with t={} k={} n={} exceeds the legal-set cap",
                spec.t, spec.k, spec.n
            )))
        }
    }
    let mut rng = seeding::stream(spec.seed, "gen.uniform");
    let edges = legal_k_sets(spec.t, spec.k, spec.n)
        .into_iter()
        .filter(|_| rng.gen::<f64>() < edge_prob)
        .collect();
    PartiteHypergraph::new(spec.t, spec.k, vec![spec.n; spec.t], edges)
}

/// Outcome of codegree-targeted generation.
#[derive(Clone, Debug)]
pub struct RepairedInstance {
    pub graph: PartiteHypergraph,
    /// Edges added by the repair sweeps on top of the random draw.
    pub repairs: usize,
    pub sweeps: usize,
}

/// Margin added to the calibrated density before repair.
pub const DENSITY_MARGIN: f64 = 0.05;

/// Seeded random instance guaranteed to satisfy `δ̃_{k-1} >= target`.
/// Starts from a uniform draw with density `target/n + margin`, then
/// repeatedly adds the lexicographically smallest missing completion of any
/// deficient `(T, J)` pair until the target holds.
pub fn random_with_min_codegree(
    spec: &GeneratorSpec,
    max_retries: usize,
) -> Result<RepairedInstance, Error> {
    spec.check()?;
    let target = match spec.mode {
        GeneratorMode::MinCodegreeTarget { delta_tilde } => delta_tilde,
        _ => {
            return Err(Error::Precondition(
                "spec mode must be minCodegreeTarget".into(),
            ))
        }
    };
    if target > spec.n {
        return Err(Error::Precondition(format!(
            "codegree target {target} exceeds class size {}",
            spec.n
        )));
    }
    if target == spec.n {
        // Only the complete instance has full codegree.
        return Ok(RepairedInstance {
            graph: complete_partite(spec.t, spec.k, spec.n)?,
            repairs: 0,
            sweeps: 0,
        });
    }
    let density = (target as f64 / spec.n as f64 + DENSITY_MARGIN).min(1.0);
    let base = random_partite(&GeneratorSpec {
        mode: GeneratorMode::UniformRandom { edge_prob: density },
        ..spec.clone()
    })?;
    if target == 0 {
        return Ok(RepairedInstance {
            graph: base,
            repairs: 0,
            sweeps: 0,
        });
    }

    let mut added: std::collections::BTreeSet<LegalSet> = std::collections::BTreeSet::new();
    let mut graph = base;
    let mut repairs = 0usize;
    for sweep in 0..max_retries {
        let mut deficient = false;
        for index_set in subsets_of_classes(spec.t, spec.k - 1) {
            let rest: Vec<u16> = (0..spec.t as u16)
                .filter(|c| !index_set.contains(c))
                .collect();
            for set in graph.legal_sets(&index_set) {
                for &j in &rest {
                    let have = graph.codegree(&set, &[j]).expect("admissible");
                    let pending = (0..spec.n)
                        .filter(|&idx| {
                            added.contains(&set.with(Vertex::new(j, idx)).expect("j not in I"))
                        })
                        .count() as u64;
                    if have + pending >= target as u64 {
                        continue;
                    }
                    deficient = true;
                    // Add the lexicographically smallest missing completions.
                    let mut missing = target as u64 - have - pending;
                    for idx in 0..spec.n {
                        if missing == 0 {
                            break;
                        }
                        let e = set.with(Vertex::new(j, idx)).expect("j not in I");
                        if !graph.has_edge(&e) && added.insert(e) {
                            repairs += 1;
                            missing -= 1;
                        }
                    }
                }
            }
        }
        if !deficient {
            return Ok(RepairedInstance {
                graph,
                repairs,
                sweeps: sweep,
            });
        }
        let mut edges: Vec<Vec<Vertex>> =
            graph.edges().iter().map(|e| e.vertices().to_vec()).collect();
        edges.extend(added.iter().map(|e| e.vertices().to_vec()));
        added.clear();
        graph = PartiteHypergraph::new(spec.t, spec.k, vec![spec.n; spec.t], edges)?;
        if graph.min_codegree(spec.k - 1).overall >= target as u64 {
            return Ok(RepairedInstance {
                graph,
                repairs,
                sweeps: sweep + 1,
            });
        }
    }
    Err(Error::RetriesExhausted {
        attempts: max_retries,
        context: format!("codegree repair never reached target {target}"),
    })
}

/// Convenience: a seeded random balanced instance with
/// `δ̃_{k-1} >= ceil(ratio * n)`.
pub fn random_with_codegree_ratio(
    t: usize,
    k: usize,
    n: u32,
    ratio: f64,
    seed: u64,
) -> Result<PartiteHypergraph, Error> {
    let target = ((ratio * n as f64).ceil() as u32).min(n);
    let spec = GeneratorSpec {
        t,
        k,
        n,
        mode: GeneratorMode::MinCodegreeTarget {
            delta_tilde: target,
        },
        seed,
    };
    Ok(random_with_min_codegree(&spec, 64)?.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::LegalSet;

    #[test]
    fn complete_edge_counts() {
        assert_eq!(complete_partite(3, 2, 2).unwrap().edges().len(), 12);
        assert_eq!(complete_partite(4, 3, 1).unwrap().edges().len(), 4);
        assert_eq!(complete_partite(2, 2, 3).unwrap().edges().len(), 9);
    }

    #[test]
    fn extremal_codegree_is_one_below_threshold() {
        // δ̃_1 = ⌈2·3/3⌉ - 1 = 1
        let h = extremal_fractional(3, 2, 3).unwrap();
        assert_eq!(h.min_codegree(1).overall, 1);
        // δ̃_2 = ⌈2·4/4⌉ - 1 = 1
        let h = extremal_fractional(4, 3, 4).unwrap();
        assert_eq!(h.min_codegree(2).overall, 1);
    }

    #[test]
    fn extremal_matches_naive_filter() {
        let h = extremal_fractional(3, 2, 3).unwrap();
        let w = extremal_blocker_size(3, 2, 3);
        let naive: Vec<Vec<Vertex>> = legal_k_sets(3, 2, 3)
            .into_iter()
            .filter(|e| e.iter().any(|v| v.index < w))
            .collect();
        assert_eq!(h.edges().len(), naive.len());
        for e in naive {
            assert!(h.has_edge(&LegalSet::new(e).unwrap()));
        }
    }

    #[test]
    fn extremal_cliques_meet_blockers() {
        // Every clique of the extremal instance meets ⋃W_i in at least
        // t-k+1 vertices (exhaustive at this scale).
        for (t, k, n) in [(3usize, 2usize, 3u32), (4, 3, 4)] {
            let h = extremal_fractional(t, k, n).unwrap();
            let w = extremal_blocker_size(t, k, n);
            for clique in h.enumerate_cliques(None).unwrap() {
                let in_w = clique.vertices().iter().filter(|v| v.index < w).count();
                assert!(in_w >= t - k + 1, "clique {clique:?} misses the blockers");
            }
        }
    }

    #[test]
    fn uniform_random_endpoints_and_determinism() {
        let spec = GeneratorSpec {
            t: 3,
            k: 2,
            n: 4,
            mode: GeneratorMode::UniformRandom { edge_prob: 1.0 },
            seed: 7,
        };
        let h = random_partite(&spec).unwrap();
        assert_eq!(h.edges().len(), complete_partite(3, 2, 4).unwrap().edges().len());

        let spec0 = GeneratorSpec {
            mode: GeneratorMode::UniformRandom { edge_prob: 0.0 },
            ..spec.clone()
        };
        assert!(random_partite(&spec0).unwrap().edges().is_empty());

        let spec_p = GeneratorSpec {
            mode: GeneratorMode::UniformRandom { edge_prob: 0.8 },
            ..spec
        };
        let a = random_partite(&spec_p).unwrap();
        let b = random_partite(&spec_p).unwrap();
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn codegree_target_endpoints() {
        // target = n gives the complete instance
        let spec = GeneratorSpec {
            t: 3,
            k: 2,
            n: 4,
            mode: GeneratorMode::MinCodegreeTarget { delta_tilde: 4 },
            seed: 1,
        };
        let out = random_with_min_codegree(&spec, 16).unwrap();
        assert_eq!(out.graph.edges().len(), 48);
        assert_eq!(out.repairs, 0);

        // target = 0 returns the raw draw
        let spec0 = GeneratorSpec {
            mode: GeneratorMode::MinCodegreeTarget { delta_tilde: 0 },
            ..spec
        };
        let out = random_with_min_codegree(&spec0, 16).unwrap();
        assert_eq!(out.repairs, 0);
    }

    #[test]
    fn codegree_target_reached_and_verified() {
        let spec = GeneratorSpec {
            t: 3,
            k: 2,
            n: 9,
            mode: GeneratorMode::MinCodegreeTarget { delta_tilde: 7 },
            seed: 1,
        };
        let out = random_with_min_codegree(&spec, 64).unwrap();
        assert!(out.graph.min_codegree(1).overall >= 7);
    }
}
