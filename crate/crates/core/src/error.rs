use alloc::string::String;

use crate::model::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("timestep {t} out of range [1, {lifetime}]")]
    TimestepOutOfRange { t: usize, lifetime: usize },
    #[error("self-loop at vertex {0} is not allowed here")]
    SelfLoop(Vertex),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge {0} is not in the underlying graph")]
    EdgeNotInGraph(Edge),
    #[error("graph is disconnected: vertex {0} is unreachable")]
    Disconnected(Vertex),
    #[error("graph is disconnected, diameter is infinite")]
    InfiniteDiameter,
    #[error("directed graph is not symmetric: {0} has no reverse edge")]
    NotSymmetric(Edge),
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("walk is not chained at step {0}")]
    BrokenWalk(usize),
    #[error("lifetime exhausted: step {step} ({edge}) has no activation after timestep {after}")]
    LifetimeExhausted { step: usize, edge: Edge, after: usize },
    #[error("graph is not a broadcast network: {0}")]
    NotBroadcast(String),
    #[error("vertex {0} is never active")]
    NeverActive(Vertex),
    #[error("oracle refuses {n} vertices (limit {limit}); state space is 2^n * n * T")]
    OracleLimit { n: usize, limit: usize },
    #[error("invalid route: {0}")]
    InvalidRoute(String),
    #[error("schedule does not match the graph: {0}")]
    ScheduleMismatch(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}
