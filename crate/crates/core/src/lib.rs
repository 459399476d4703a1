//! Exploration of temporal graphs with frequent and regular edges.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`model`]: temporal graphs, static (weighted) graphs, walks and temporal walks.
//! * [`analysis`]: per-edge frequency and regularity, per-vertex broadcast frequency.
//! * [`planner`]: the frequency-weighted spanning tree pipeline that produces an
//!   exploration of length at most `2 * mst_weight` and `F_max * (2n - 3)`.
//! * [`validation`]: independent checkers for walks, explorations and graph classes.
//! * [`classes`]: generators for star lower-bound instances, public transport graphs,
//!   sequential connection graphs, broadcast networks and random `f`-frequent graphs.
//! * [`oracle`]: exact fastest exploration by search over `(vertex, visited)` states.
//!
//! Vertices are `0..n`; timesteps are `1..=lifetime`.

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
mod bitset;
pub mod classes;
mod error;
pub mod model;
pub mod oracle;
pub mod planner;
pub mod validation;

pub use bitset::Activation;
pub use error::Error;
pub use model::{Edge, StaticGraph, TemporalGraph, TemporalGraphBuilder, TemporalWalk, Vertex, Walk};

pub type Result<T, E = Error> = core::result::Result<T, E>;
