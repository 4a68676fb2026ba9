use thiserror::Error;

use crate::digraph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertexes")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: VertexId },
    #[error("duplicate arc {tail} -> {head}")]
    DuplicateArc { tail: VertexId, head: VertexId },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("matrix has role {found:?}, expected {expected:?}")]
    WrongRole {
        expected: crate::matrix::Role,
        found: crate::matrix::Role,
    },
    #[error("matrix is not quasi-canonical ({violations} violating arcs, {minor_failures} minor failures)")]
    NotQuasiCanonical {
        violations: usize,
        minor_failures: usize,
    },
    #[error("root graph would need parallel arcs {tail} -> {head}")]
    ParallelArcs { tail: VertexId, head: VertexId },
    #[error("reconstructed root graph does not reproduce the matrix")]
    NotLineDigraph,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("arc {0} -> {1} is not present")]
    ArcAbsent(VertexId, VertexId),
    #[error("no convergence after {insertions} insertions (cap {cap})")]
    NotConverged { insertions: usize, cap: usize },
    #[error(transparent)]
    Duality(#[from] DualityError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("{count} sources where at most one is allowed: {vertices:?}")]
    MultipleSources {
        count: usize,
        vertices: Vec<VertexId>,
    },
    #[error("{count} sinks where at most one is allowed: {vertices:?}")]
    MultipleSinks {
        count: usize,
        vertices: Vec<VertexId>,
    },
    #[error("graph has neither a source nor a sink")]
    NoTerminals,
    #[error("input violates the single-entrance/exit requirements: {0}")]
    Requirements(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("brute-force oracle limited to {bound} vertexes, got {n}")]
    BoundExceeded { n: usize, bound: usize },
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}
