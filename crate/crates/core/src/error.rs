use alloc::string::String;

use thiserror::Error;

use crate::instance::ProblemKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for an instance with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("invalid weight {what}: {value}")]
    InvalidWeight { what: String, value: f64 },

    #[error("{kind} requires {field} = 0, but edge ({u}, {v}) has {field} = {value}")]
    KindMismatch {
        kind: ProblemKind,
        field: &'static str,
        u: usize,
        v: usize,
        value: f64,
    },

    #[error("subset is infeasible for {kind}: edge ({u}, {v}) violates the restriction")]
    Infeasible { kind: ProblemKind, u: usize, v: usize },

    #[error("subset universe has {found} elements, expected {expected}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("instance too large for enumeration: {size} > {max}")]
    Capacity { size: usize, max: usize },

    #[error("edge ({u}, {v}) carries an infinite weight; the constant offset would be undefined")]
    InfiniteWeight { u: usize, v: usize },

    #[error("edge ({u}, {v}) does not cross the bipartition")]
    NotBipartite { u: usize, v: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("diagonal entry ({i}, {i}) must be zero")]
    NonzeroDiagonal { i: usize },

    #[error("generator configuration: {0}")]
    Config(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("linear program is infeasible (phase-1 residual {residual})")]
    LpInfeasible { residual: f64 },

    #[error("linear program is unbounded in column {column}")]
    LpUnbounded { column: usize },

    #[error("simplex did not converge within {0} iterations")]
    LpIterationLimit(usize),

    #[error("solution is not basic; extreme-point properties do not apply")]
    NotBasic,

    #[error("formulation mismatch: expected {expected}, found {found}")]
    FormulationMismatch {
        expected: ProblemKind,
        found: ProblemKind,
    },
}
