//! Hamiltonian Cycle, scored by the number of vertices on the submitted cycle.

use serde::{Deserialize, Serialize};

use crate::graph::UndirectedGraph;
use crate::rng::StreamRng;
use crate::solution::{Checker, VerifyResult};
use crate::task::Difficulty;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianPayload {
    pub graph: UndirectedGraph,
    pub density: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianParams {
    pub vertices: (usize, usize),
    pub density: f64,
}

pub fn params(difficulty: Difficulty) -> HamiltonianParams {
    let (vertices, density) = match difficulty {
        Difficulty::Easy => ((15, 20), 0.2),
        Difficulty::Medium => ((20, 30), 0.3),
        Difficulty::Hard => ((30, 40), 0.4),
        Difficulty::Benchmark => ((40, 50), 0.5),
    };
    HamiltonianParams { vertices, density }
}

/// Number of edges a graph on `n` vertices has at density `rho`.
pub fn target_edges(n: usize, rho: f64) -> usize {
    ((rho * (n * (n - 1) / 2) as f64).round() as usize).max(n)
}

/// Plants a random Hamiltonian cycle, then adds uniformly random extra edges
/// until the target density is reached.
pub fn generate(p: &HamiltonianParams, rng: &mut StreamRng) -> (HamiltonianPayload, Vec<u32>) {
    let n = rng.range_usize(p.vertices.0, p.vertices.1);
    let mut cycle: Vec<u32> = (0..n as u32).collect();
    rng.shuffle(&mut cycle);
    let mut graph = UndirectedGraph::empty(n);
    for i in 0..n {
        graph.add_edge(cycle[i], cycle[(i + 1) % n]);
    }
    let mut extra: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .filter(|&(u, v)| !graph.has_edge(u, v))
        .collect();
    rng.shuffle(&mut extra);
    let missing = target_edges(n, p.density).saturating_sub(graph.edge_count());
    for &(u, v) in extra.iter().take(missing) {
        graph.add_edge(u, v);
    }
    cycle.push(cycle[0]);
    (
        HamiltonianPayload {
            graph,
            density: p.density,
        },
        cycle,
    )
}

/// Accepts open (`[v0..vk]`) or closed (`[v0..vk, v0]`) cycles.
pub fn verify(payload: &HamiltonianPayload, route: &[u32]) -> VerifyResult {
    let g = &payload.graph;
    let cycle = match route {
        [first, .., last] if first == last => &route[..route.len() - 1],
        _ => route,
    };
    let mut c = Checker::new();
    if cycle.len() < 3 {
        c.fail("cycle_too_short", format!("a cycle needs at least 3 vertices, got {}", cycle.len()));
    }
    let mut seen = vec![false; g.len()];
    for &v in cycle {
        match seen.get_mut(v as usize) {
            None => c.fail("unknown_vertex", format!("vertex {v} does not exist")),
            Some(true) => c.fail("vertex_revisited", format!("vertex {v} revisited")),
            Some(s) => *s = true,
        }
    }
    if c.ok() {
        for i in 0..cycle.len() {
            let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if !g.has_edge(u, v) {
                c.fail("missing_edge", format!("no edge between {u} and {v}"));
            }
        }
    }
    c.finish(|| cycle.len() as u64)
}

/// The planted cycle covers every vertex, so it is optimal.
pub fn solve(planted: &[u32]) -> Vec<u32> {
    planted.to_vec()
}
