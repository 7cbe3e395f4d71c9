use std::io;

use thiserror::Error;

/// Errors produced by the analysis operations.
#[derive(Debug, Error)]
pub enum Error {
    /// The graph has no edges, so edge-normalized metrics are undefined.
    #[error("graph has no edges; reciprocity is undefined")]
    EmptyGraph,

    /// The out- and in-degree totals differ, so no digraph realizes the
    /// bi-sequence and its summary is undefined.
    #[error("degree sums differ: out {out_sum} vs in {in_sum}")]
    UnbalancedSums { out_sum: u128, in_sum: u128 },

    /// Two sequences that must have equal length do not.
    #[error("sequence length mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A packing sequence exceeds the bi-sequence it is subtracted from.
    #[error("packing degree exceeds bi-sequence at index {index}")]
    NegativeResidual { index: usize },

    /// The (bi-)sequence admits no simple realization.
    #[error("sequence is not graphic")]
    NotGraphic,

    /// A node id does not name a node of the graph.
    #[error("node {id} out of range for graph on {nodes} nodes")]
    NodeOutOfRange { id: u32, nodes: usize },

    /// An edge would connect a node to itself.
    #[error("self-loop at node {id}")]
    SelfLoop { id: u32 },

    /// An ordered pair appears more than once.
    #[error("duplicate edge ({from}, {to})")]
    DuplicateEdge { from: u32, to: u32 },

    /// The 3-path is Type IV or no longer matches the graph.
    #[error("3-path is not rewirable")]
    NotRewirable,

    /// The cycle length bound must be even and at least 4.
    #[error("invalid cycle length bound {len}; must be even and >= 4")]
    InvalidLength { len: usize },

    /// The instance exceeds the configured exhaustive-search limits.
    #[error("instance too large for exhaustive search ({nodes} nodes, {edges} edges)")]
    TooLarge { nodes: usize, edges: usize },

    /// The expansion budget ran out before the search finished.
    #[error("search budget exhausted before completion")]
    BudgetExhausted,

    /// The tomography instance violates its count invariants.
    #[error("invalid tomography instance: {reason}")]
    InvalidInstance { reason: String },

    /// The digraph is not a certificate that the bound is achieved.
    #[error("digraph does not achieve the bound required for decoding")]
    NotBoundAchieving,

    /// An edge-list line does not hold exactly two labels.
    #[error("malformed edge list line {line}: expected two labels")]
    MalformedLine { line: usize },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
