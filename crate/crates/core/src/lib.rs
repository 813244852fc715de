//! Generalized vertex cover: instances, exact oracles, objective-preserving
//! reductions, LP relaxations and the polynomial special cases.
//!
//! The crate is `no_std` and only needs an allocator. File formats, reports
//! and the command-line front end live in the `gvc` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod flow;
pub mod instance;
pub mod lp;
pub mod oracle;
pub mod reductions;
pub mod solvers;

pub use error::{Error, Result};
pub use instance::{
    big_m, edge_partition, evaluate, support_graph, BipartitePartition, Bqp01Instance, Edge,
    EdgePartition, EdgeWeights, Feasibility, GvcInstance, PartitionCounts, ProblemKind, Sense,
    Side, SubsetSolution, UbqpInstance, VertexSet, INF,
};
