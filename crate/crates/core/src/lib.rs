//! Clique factors in balanced `t`-partite `k`-uniform hypergraphs.
//!
//! The crate turns codegree-threshold existence arguments for perfect
//! `K_t^k`-matchings into executable, desk-scale algorithms:
//!
//! - exact perfect-factor search and counting (exact-cover style);
//! - perfect *fractional* matchings by exact rational LP, with vertex-weight
//!   infeasibility certificates that verify independently;
//! - extremal constructions sitting one below the fractional threshold;
//! - absorbing-family machinery that upgrades near-perfect matchings to
//!   perfect ones;
//! - two-round randomised sparsification plus a semi-random (nibble)
//!   matcher for near-perfect matchings;
//! - a degree-preserving random equipartition of general `k`-graphs.
//!
//! Everything randomised flows from a single 64-bit seed through named
//! sub-streams, so every run replays bit-for-bit.

pub mod absorb;
pub mod approx;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod hypergraph;
pub mod io;
pub mod lp;
pub mod partition;
pub mod pipeline;
pub mod seeding;

pub use error::Error;
pub use hypergraph::{
    Clique, CodegreeReport, LegalSet, PartiteHypergraph, TGraph, ValidationReport, Vertex,
};
