//! Perfect fractional clique matchings by exact rational LP.
//!
//! Feasibility of the per-vertex system `Σ{w(T) : v ∈ T} = 1`, `w ≥ 0` over
//! the cliques of a balanced instance is decided by a phase-1 simplex in
//! exact rational arithmetic with Bland's smallest-index rule. A feasible
//! system yields the assignment itself; an infeasible one yields a vertex
//! weighting `w` with `Σ_{v∈T} w(v) ≥ 0` for every clique and
//! `Σ_v w(v) < 0`, which any reader can re-check exhaustively.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::constructions::{extremal_blocker_size, extremal_fractional};
use crate::error::Error;
use crate::hypergraph::{Clique, PartiteHypergraph, Vertex};

pub type Rational = BigRational;

/// Default cap on the number of cliques the solver will materialise.
pub const DEFAULT_CLIQUE_CAP: usize = 2_000_000;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `p/q` string (always with the denominator).
pub fn rat_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_parse(s: &str) -> Result<Rational, Error> {
    let parse_int = |x: &str| -> Result<BigInt, Error> {
        x.trim().parse().map_err(|_| Error::Precondition(format!("bad rational `{s}`")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let d = parse_int(q)?;
            if d.is_zero() {
                return Err(Error::Precondition(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(parse_int(p)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Clique weights in `[0,1]`; support is a subset of the host's cliques.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FractionalAssignment {
    weights: Vec<(Clique, Rational)>,
}

impl FractionalAssignment {
    /// Keeps only nonzero weights, sorted by clique.
    pub fn new(mut weights: Vec<(Clique, Rational)>) -> Self {
        weights.retain(|(_, w)| !w.is_zero());
        weights.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        FractionalAssignment { weights }
    }

    pub fn support(&self) -> &[(Clique, Rational)] {
        &self.weights
    }

    /// Total weight `Σ w(T)`.
    pub fn size(&self) -> Rational {
        self.weights
            .iter()
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    /// Load `Σ{w(T) : v ∈ T}` of one vertex.
    pub fn vertex_load(&self, v: Vertex) -> Rational {
        self.weights
            .iter()
            .filter(|(c, _)| c.contains(v))
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }
}

/// Which inequality system a certificate claims to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateForm {
    /// `Σ_{v∈T} w(v) ≥ 0` per clique and `Σ_v w(v) < 0`.
    Raw,
    /// Values in `[0,1]`, `Σ_{v∈T} w(v) ≥ 1` per clique and `Σ_v w(v) < n`.
    Normalized,
}

/// A vertex weighting witnessing fractional infeasibility.
#[derive(Clone, Debug, PartialEq)]
pub struct FarkasCertificate {
    pub weights: BTreeMap<Vertex, Rational>,
    pub form: CertificateForm,
}

impl FarkasCertificate {
    pub fn total(&self) -> Rational {
        self.weights
            .values()
            .fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn clique_sum(&self, c: &Clique) -> Rational {
        c.vertices()
            .iter()
            .map(|v| self.weights.get(v).cloned().unwrap_or_else(Rational::zero))
            .fold(Rational::zero(), |acc, w| acc + w)
    }
}

/// Outcome of the feasibility decision.
#[derive(Clone, Debug)]
pub enum LpOutcome {
    Feasible(FractionalAssignment),
    Infeasible(FarkasCertificate),
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub outcome: LpOutcome,
    pub clique_count: usize,
    pub pivots: usize,
}

/// Report-style outcome of `verify_assignment` / `verify_certificate`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub issues: Vec<String>,
}

impl VerifyReport {
    fn from_issues(issues: Vec<String>) -> Self {
        VerifyReport {
            valid: issues.is_empty(),
            issues,
        }
    }
}

/// Checks weights in `[0,1]`, per-vertex loads at most one (exactly one when
/// `perfect`), and size `n` when `perfect`. Exact arithmetic throughout.
pub fn verify_assignment(
    h: &PartiteHypergraph,
    a: &FractionalAssignment,
    perfect: bool,
) -> VerifyReport {
    let mut issues = Vec::new();
    let cliques: std::collections::HashSet<Clique> = match h.enumerate_cliques(None) {
        Ok(c) => c.into_iter().collect(),
        Err(_) => unreachable!("uncapped enumeration"),
    };
    for (c, w) in a.support() {
        if !cliques.contains(c) {
            issues.push(format!("support set {c:?} is not a clique of the host"));
        }
        if w.is_negative() || w > &Rational::one() {
            issues.push(format!("weight {} of {c:?} outside [0,1]", rat_str(w)));
        }
    }
    let one = Rational::one();
    for v in h.vertices() {
        let load = a.vertex_load(v);
        if load > one {
            issues.push(format!("vertex {v} overloaded: {}", rat_str(&load)));
        } else if perfect && load != one {
            issues.push(format!("vertex {v} load {} ≠ 1", rat_str(&load)));
        }
    }
    if perfect {
        let n = rat_int(i64::from(h.n()));
        if a.size() != n {
            issues.push(format!("size {} ≠ n", rat_str(&a.size())));
        }
    }
    VerifyReport::from_issues(issues)
}

/// Exhaustively checks the per-clique inequality and the strict global sum
/// for the flagged form.
pub fn verify_certificate(h: &PartiteHypergraph, c: &FarkasCertificate) -> VerifyReport {
    let mut issues = Vec::new();
    for v in h.vertices() {
        if !c.weights.contains_key(&v) {
            issues.push(format!("vertex {v} has no weight"));
        }
    }
    let cliques = h.enumerate_cliques(None).expect("uncapped enumeration");
    let (clique_bound, total_bound) = match c.form {
        CertificateForm::Raw => (Rational::zero(), Rational::zero()),
        CertificateForm::Normalized => (Rational::one(), rat_int(i64::from(h.n()))),
    };
    if c.form == CertificateForm::Normalized {
        for (v, w) in &c.weights {
            if w.is_negative() || w > &Rational::one() {
                issues.push(format!("normalized weight {} of {v} outside [0,1]", rat_str(w)));
            }
        }
    }
    for t in &cliques {
        let s = c.clique_sum(t);
        if s < clique_bound {
            issues.push(format!(
                "clique {t:?} has sum {} below bound",
                rat_str(&s)
            ));
        }
    }
    let total = c.total();
    if total >= total_bound {
        issues.push(format!(
            "global sum {} is not strictly below the bound",
            rat_str(&total)
        ));
    }
    VerifyReport::from_issues(issues)
}

/// Decides perfect-fractional-matching feasibility; both outcomes carry an
/// exactly verifiable object. Uses the default clique cap.
pub fn solve_fractional(h: &PartiteHypergraph) -> Result<LpSolution, Error> {
    solve_fractional_capped(h, DEFAULT_CLIQUE_CAP)
}

pub fn solve_fractional_capped(
    h: &PartiteHypergraph,
    clique_cap: usize,
) -> Result<LpSolution, Error> {
    if !h.is_balanced() {
        return Err(Error::Precondition(
            "fractional matching needs a balanced instance".into(),
        ));
    }
    let cliques = h.enumerate_cliques(Some(clique_cap))?;
    let vertices: Vec<Vertex> = h.vertices().collect();

    // A vertex in no clique makes the system infeasible outright; the
    // canonical certificate puts -1 on every uncovered vertex.
    let mut covered = vec![false; vertices.len()];
    let vid: BTreeMap<Vertex, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    for c in &cliques {
        for v in c.vertices() {
            covered[vid[v]] = true;
        }
    }
    if covered.iter().any(|&b| !b) {
        let weights = vertices
            .iter()
            .map(|&v| {
                let w = if covered[vid[&v]] {
                    Rational::zero()
                } else {
                    -Rational::one()
                };
                (v, w)
            })
            .collect();
        let cert = FarkasCertificate {
            weights,
            form: CertificateForm::Raw,
        };
        debug_assert!(verify_certificate(h, &cert).valid);
        return Ok(LpSolution {
            outcome: LpOutcome::Infeasible(cert),
            clique_count: cliques.len(),
            pivots: 0,
        });
    }

    let (status, pivots) = phase_one(&vertices, &vid, &cliques);
    match status {
        PhaseOneResult::Feasible(weights) => {
            let assignment = FractionalAssignment::new(
                weights
                    .into_iter()
                    .enumerate()
                    .map(|(i, w)| (cliques[i].clone(), w))
                    .collect(),
            );
            debug_assert!(verify_assignment(h, &assignment, true).valid);
            Ok(LpSolution {
                outcome: LpOutcome::Feasible(assignment),
                clique_count: cliques.len(),
                pivots,
            })
        }
        PhaseOneResult::Infeasible(wts) => {
            let weights = vertices.iter().map(|&v| (v, wts[vid[&v]].clone())).collect();
            let cert = FarkasCertificate {
                weights,
                form: CertificateForm::Raw,
            };
            debug_assert!(verify_certificate(h, &cert).valid);
            Ok(LpSolution {
                outcome: LpOutcome::Infeasible(cert),
                clique_count: cliques.len(),
                pivots,
            })
        }
    }
}

enum PhaseOneResult {
    /// Clique weights of a perfect fractional matching.
    Feasible(Vec<Rational>),
    /// Raw Farkas vertex weights.
    Infeasible(Vec<Rational>),
}

/// Phase-1 simplex on `My + Ia = 1`, minimising `Σa` with Bland's rule.
/// Terminal optimum 0 yields `y`; a positive optimum yields the negated
/// dual values, which satisfy the raw certificate system.
fn phase_one(
    vertices: &[Vertex],
    vid: &BTreeMap<Vertex, usize>,
    cliques: &[Clique],
) -> (PhaseOneResult, usize) {
    let m = vertices.len();
    let nc = cliques.len();
    let width = nc + m + 1; // clique cols | artificial cols | rhs
    let zero = Rational::zero();
    let one = Rational::one();

    let mut tab: Vec<Vec<Rational>> = vec![vec![zero.clone(); width]; m];
    for (j, c) in cliques.iter().enumerate() {
        for v in c.vertices() {
            tab[vid[v]][j] = one.clone();
        }
    }
    for (i, row) in tab.iter_mut().enumerate() {
        row[nc + i] = one.clone();
        row[width - 1] = one.clone();
    }
    // Reduced costs for min Σa with the artificial basis: r_j = c_j - Σ_i tab[i][j].
    let mut obj: Vec<Rational> = vec![zero.clone(); width];
    for (j, slot) in obj.iter_mut().enumerate().take(nc) {
        let col_sum = (0..m).fold(zero.clone(), |acc, i| acc + &tab[i][j]);
        *slot = -col_sum;
    }
    let mut basis: Vec<usize> = (nc..nc + m).collect();

    let mut pivots = 0usize;
    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let entering = (0..nc + m).find(|&j| obj[j].is_negative());
        let j = match entering {
            Some(j) => j,
            None => break,
        };
        // Ratio test; ties broken by smallest basic-variable index.
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][j].is_positive() {
                let ratio = &tab[i][width - 1] / &tab[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase-1 objective is bounded, a pivot row exists");
        // Pivot on (r, j).
        let piv = tab[r][j].clone();
        for x in tab[r].iter_mut() {
            *x /= &piv;
        }
        for i in 0..m {
            if i != r && !tab[i][j].is_zero() {
                let factor = tab[i][j].clone();
                for col in 0..width {
                    let delta = &factor * &tab[r][col];
                    tab[i][col] -= delta;
                }
            }
        }
        if !obj[j].is_zero() {
            let factor = obj[j].clone();
            for col in 0..nc + m {
                let delta = &factor * &tab[r][col];
                obj[col] -= delta;
            }
        }
        basis[r] = j;
        pivots += 1;
    }

    // Optimal value = total residual on the artificial variables.
    let z = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= nc)
        .fold(zero.clone(), |acc, (i, _)| acc + &tab[i][width - 1]);

    if z.is_zero() {
        let mut weights = vec![Rational::zero(); nc];
        for (i, &b) in basis.iter().enumerate() {
            if b < nc {
                weights[b] = tab[i][width - 1].clone();
            }
        }
        (PhaseOneResult::Feasible(weights), pivots)
    } else {
        // π_v = 1 - r_{a_v}; the certificate is w = -π = r_{a_v} - 1.
        let wts: Vec<Rational> = (0..m).map(|i| &obj[nc + i] - &one).collect();
        (PhaseOneResult::Infeasible(wts), pivots)
    }
}

/// The paper's extremal dual weighting on the canonical extremal instance:
/// `(k-1)/(t-k+1)` on the blockers, `-1` elsewhere. Valid in raw form.
pub fn extremal_certificate(t: usize, k: usize, n: u32) -> Result<FarkasCertificate, Error> {
    let h = extremal_fractional(t, k, n)?;
    let w = extremal_blocker_size(t, k, n);
    let blocker_weight = rat((k as i64) - 1, (t as i64) - (k as i64) + 1);
    let weights = h
        .vertices()
        .map(|v| {
            let value = if v.index < w {
                blocker_weight.clone()
            } else {
                -Rational::one()
            };
            (v, value)
        })
        .collect();
    Ok(FarkasCertificate {
        weights,
        form: CertificateForm::Raw,
    })
}

/// Rescales a valid raw certificate into the `[0,1]` normalized form:
/// equalise per-class minima by a zero-sum class shift, scale minima to
/// `-1`, clamp above at `t-1`, then map `w ↦ (w+1)/t`.
pub fn normalize_certificate(
    h: &PartiteHypergraph,
    cert: &FarkasCertificate,
) -> Result<FarkasCertificate, Error> {
    if cert.form != CertificateForm::Raw {
        return Err(Error::Precondition("certificate already normalized".into()));
    }
    let check = verify_certificate(h, cert);
    if !check.valid {
        return Err(Error::Precondition(format!(
            "not a valid raw certificate: {}",
            check.issues.join("; ")
        )));
    }
    let t = h.t();
    // Per-class minima; the zero-sum shift c_i = mean(min) - min_i keeps
    // every clique sum and the total unchanged (cliques are class-transversal).
    let mut minima: Vec<Option<Rational>> = vec![None; t];
    for (v, w) in &cert.weights {
        let slot = &mut minima[v.class as usize];
        match slot {
            Some(m) if &*m <= w => {}
            _ => *slot = Some(w.clone()),
        }
    }
    let minima: Vec<Rational> = minima
        .into_iter()
        .map(|m| m.ok_or_else(|| Error::Precondition("a class has no vertices".into())))
        .collect::<Result<_, _>>()?;
    let mean = minima
        .iter()
        .fold(Rational::zero(), |acc, m| acc + m)
        / rat_int(t as i64);
    if !mean.is_negative() {
        // Would contradict the strict global sum; reject degenerate inputs.
        return Err(Error::Precondition(
            "degenerate certificate: class minima are not negative on average".into(),
        ));
    }
    let scale = -mean.clone().recip(); // scale by -1/mean > 0
    let cap = rat_int(t as i64 - 1);
    let t_rat = rat_int(t as i64);
    let one = Rational::one();
    let weights: BTreeMap<Vertex, Rational> = cert
        .weights
        .iter()
        .map(|(&v, w)| {
            let shifted = w + (&mean - &minima[v.class as usize]);
            let scaled = shifted * &scale;
            let clamped = if scaled > cap { cap.clone() } else { scaled };
            (v, (clamped + &one) / &t_rat)
        })
        .collect();
    let out = FarkasCertificate {
        weights,
        form: CertificateForm::Normalized,
    };
    debug_assert!(verify_certificate(h, &out).valid);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete_partite;

    #[test]
    fn complete_bipartite_uniform_weights() {
        let h = complete_partite(2, 2, 3).unwrap();
        let sol = solve_fractional(&h).unwrap();
        assert_eq!(sol.clique_count, 9);
        match sol.outcome {
            LpOutcome::Feasible(a) => {
                assert!(verify_assignment(&h, &a, true).valid);
                assert_eq!(a.size(), rat_int(3));
                // The uniform 1/3 weighting is itself valid too.
                let uniform = FractionalAssignment::new(
                    h.enumerate_cliques(None)
                        .unwrap()
                        .into_iter()
                        .map(|c| (c, rat(1, 3)))
                        .collect(),
                );
                assert!(verify_assignment(&h, &uniform, true).valid);
            }
            LpOutcome::Infeasible(_) => panic!("complete instance must be feasible"),
        }
    }

    #[test]
    fn extremal_instance_infeasible_with_valid_certificate() {
        let h = extremal_fractional(3, 2, 3).unwrap();
        let sol = solve_fractional(&h).unwrap();
        match sol.outcome {
            LpOutcome::Infeasible(c) => {
                assert_eq!(c.form, CertificateForm::Raw);
                assert!(verify_certificate(&h, &c).valid);
            }
            LpOutcome::Feasible(_) => panic!("extremal instance must be infeasible"),
        }
    }

    #[test]
    fn extremal_certificate_matches_paper_values() {
        // (3,2,3): 1/2 on the single blocker per class, -1 on the rest;
        // global sum 3·(1/2) - 6 = -9/2.
        let c = extremal_certificate(3, 2, 3).unwrap();
        assert_eq!(c.total(), rat(-9, 2));
        let h = extremal_fractional(3, 2, 3).unwrap();
        for t in h.enumerate_cliques(None).unwrap() {
            assert!(!c.clique_sum(&t).is_negative());
        }
        assert!(verify_certificate(&h, &c).valid);

        let c = extremal_certificate(4, 3, 4).unwrap();
        let h = extremal_fractional(4, 3, 4).unwrap();
        assert!(verify_certificate(&h, &c).valid);
    }

    #[test]
    fn all_zero_objects() {
        let h = complete_partite(3, 2, 2).unwrap();
        let zero_assignment = FractionalAssignment::default();
        let rep = verify_assignment(&h, &zero_assignment, false);
        assert!(rep.valid);
        assert_eq!(zero_assignment.size(), Rational::zero());

        let zero_cert = FarkasCertificate {
            weights: h.vertices().map(|v| (v, Rational::zero())).collect(),
            form: CertificateForm::Raw,
        };
        assert!(!verify_certificate(&h, &zero_cert).valid);
    }

    #[test]
    fn normalization_maps_extremal_into_unit_interval() {
        let h = extremal_fractional(3, 2, 3).unwrap();
        let raw = extremal_certificate(3, 2, 3).unwrap();
        let norm = normalize_certificate(&h, &raw).unwrap();
        assert!(verify_certificate(&h, &norm).valid);
        // (1/2 + 1)/3 = 1/2 on blockers, 0 elsewhere.
        for (v, w) in &norm.weights {
            if v.index < 1 {
                assert_eq!(w, &rat(1, 2));
            } else {
                assert_eq!(w, &Rational::zero());
            }
        }
    }

    #[test]
    fn normalization_endpoint_mapping() {
        // Raw values already in {-1, t-1} land exactly on {0, 1}.
        let v = Vertex::new;
        let h = PartiteHypergraph::new(
            2,
            2,
            vec![2, 2],
            vec![vec![v(0, 0), v(1, 0)], vec![v(0, 0), v(1, 1)]],
        )
        .unwrap();
        let endpoint = FarkasCertificate {
            weights: h
                .vertices()
                .map(|u| {
                    let w = if u == v(0, 0) { rat_int(1) } else { rat_int(-1) };
                    (u, w)
                })
                .collect(),
            form: CertificateForm::Raw,
        };
        assert!(verify_certificate(&h, &endpoint).valid);
        let norm = normalize_certificate(&h, &endpoint).unwrap();
        for w in norm.weights.values() {
            assert!(w == &Rational::zero() || w == &Rational::one());
        }
    }

    #[test]
    fn empty_clique_set_short_circuits() {
        let h = PartiteHypergraph::new(3, 2, vec![2, 2, 2], vec![]).unwrap();
        let sol = solve_fractional(&h).unwrap();
        match sol.outcome {
            LpOutcome::Infeasible(c) => {
                assert!(c.weights.values().all(|w| w == &rat_int(-1)));
                assert!(verify_certificate(&h, &c).valid);
            }
            LpOutcome::Feasible(_) => panic!("no cliques cannot be feasible"),
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_str(&rat(-9, 2)), "-9/2");
        assert_eq!(rat_str(&rat_int(3)), "3/1");
        assert_eq!(rat_parse("-9/2").unwrap(), rat(-9, 2));
        assert_eq!(rat_parse("3").unwrap(), rat_int(3));
        assert!(rat_parse("1/0").is_err());
    }
}
