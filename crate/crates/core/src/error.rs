use thiserror::Error;

use crate::graph::Colour;

/// Errors raised by flipforge operations.
///
/// Failed flip verdicts are not errors; they are reported through
/// [`crate::analysis::FlipReport`].
#[derive(Debug, Error)]
pub enum FlipError {
    #[error("invalid group spec: {0}")]
    InvalidGroup(String),

    #[error("element has {found} residues but the group has {expected} factors")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands belong to different groups ({left} vs {right})")]
    SpecMismatch { left: String, right: String },

    #[error("group order {order} exceeds enumeration limit {limit}")]
    OrderLimit { order: u64, limit: u64 },

    #[error("operation requires a cyclic group, got {0}")]
    NotCyclic(String),

    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("colour {colour} out of range 1..={count}")]
    InvalidColour { colour: Colour, count: Colour },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid connecting set: {0}")]
    InvalidConnectingSet(String),

    #[error("colour counts differ: {left} vs {right}")]
    ColourCountMismatch { left: Colour, right: Colour },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameters out of range: {0}")]
    Range(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("gap condition fails: {lhs} > {rhs} required (slack {slack})")]
    GapCondition { lhs: i128, rhs: i128, slack: i128 },

    #[error("predicted {quantity} chain not monotone between colours {colour} and {next}: {left} vs {right}")]
    Monotonicity {
        quantity: &'static str,
        colour: usize,
        next: usize,
        left: i128,
        right: i128,
    },

    #[error("t = {given} is below the minimum {minimum}")]
    TBelowMinimum { given: u64, minimum: u64 },

    #[error("search budget of {budget} nodes exhausted (best size so far {best})")]
    BudgetExceeded { budget: u64, best: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = FlipError> = std::result::Result<T, E>;
