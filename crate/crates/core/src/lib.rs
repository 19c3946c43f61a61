//! Executable versions of the constructions behind anticomplete-subgraph
//! theorems: `p`-rocks, matching decompositions, randomized good partitions
//! and the two anticomplete-pair pipelines, together with exact oracles for
//! small graphs and tournaments and a reproducible experiment harness.

pub mod audit;
pub mod brute;
pub mod campaign;
pub mod canon;
pub mod densest;
pub mod error;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod params;
pub mod partition;
pub mod pipeline;
pub mod rock;
pub mod tournament;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{Caps, Graph, Rational};
pub use vertex_set::VertexSet;

/// Version tag carried by every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;
