use crate::hypergraph::{Clique, ValidationReport};

/// Crate-wide error type. Negative mathematical verdicts (infeasible,
/// no factor) are not errors; they are ordinary results.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid instance:\n{0}")]
    Invalid(ValidationReport),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Clique enumeration stopped at the cap; the partial list is kept.
    #[error("clique cap {cap} exceeded")]
    CliqueCapExceeded { cap: usize, partial: Vec<Clique> },

    #[error("search budget exhausted after {nodes} branch nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("retries exhausted after {attempts} attempts: {context}")]
    RetriesExhausted { attempts: usize, context: String },

    /// Some leftover `t`-set found no unused absorbing member.
    #[error("absorption failure: {0}")]
    AbsorptionFailure(String),

    /// Too many sampled copies failed their codegree check.
    #[error("degenerate copy family: {failed} of {total} copies failed the codegree check")]
    DegenerateCopies { failed: usize, total: usize },
}
