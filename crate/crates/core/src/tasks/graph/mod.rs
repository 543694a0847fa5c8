//! Graph clustering tasks: Maximum Clique, Maximum Independent Set and
//! Graph Coloring.

pub mod clique;
pub mod coloring;
pub mod independent_set;

use serde::{Deserialize, Serialize};

use crate::graph::UndirectedGraph;

/// Payload shared by the three graph tasks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphPayload {
    pub graph: UndirectedGraph,
}

/// Default probability of a background edge around a planted structure.
pub const BACKGROUND_EDGE_PROBABILITY: f64 = 0.3;
