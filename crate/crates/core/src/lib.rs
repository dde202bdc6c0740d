pub mod analysis;
pub mod caps;
pub mod critical;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod ke;
pub mod odd;
pub mod report;
pub mod solvers;
pub mod theorems;

pub use caps::Caps;
pub use error::{KefError, Result};
pub use graph::{Edge, EdgeSet, Graph, Relabel, VertexSet};
