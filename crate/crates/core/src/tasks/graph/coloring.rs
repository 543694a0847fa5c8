use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::GraphPayload;
use crate::graph::UndirectedGraph;
use crate::rng::StreamRng;
use crate::solution::{Checker, VerifyResult};
use crate::task::Difficulty;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColoringParams {
    pub vertices: (usize, usize),
    pub colors: (usize, usize),
    /// Probability of an edge between vertices of different classes.
    pub density: f64,
}

pub fn params(difficulty: Difficulty) -> ColoringParams {
    let (vertices, colors, density) = match difficulty {
        Difficulty::Easy => ((8, 12), (3, 4), 0.2),
        Difficulty::Medium => ((15, 22), (4, 6), 0.35),
        Difficulty::Hard => ((25, 32), (6, 8), 0.5),
        Difficulty::Benchmark => ((32, 40), (6, 8), 0.5),
    };
    ColoringParams {
        vertices,
        colors,
        density,
    }
}

/// Partitions the vertices into `k` non-empty classes and samples edges
/// between classes only. Every pair of classes gets at least one edge.
pub fn generate(p: &ColoringParams, rng: &mut StreamRng) -> (GraphPayload, Vec<u32>) {
    let n = rng.range_usize(p.vertices.0, p.vertices.1);
    let k = rng.range_usize(p.colors.0.min(n), p.colors.1.min(n));
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut colors = vec![0u32; n];
    for (slot, &v) in order.iter().enumerate() {
        colors[v] = if slot < k {
            slot as u32 + 1
        } else {
            rng.range(1, k as u64) as u32
        };
    }
    let mut graph = UndirectedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] && rng.chance(p.density) {
                graph.add_edge(u as u32, v as u32);
            }
        }
    }
    let classes: Vec<Vec<u32>> = (1..=k as u32)
        .map(|c| (0..n as u32).filter(|&v| colors[v as usize] == c).collect())
        .collect();
    for a in 0..k {
        for b in a + 1..k {
            let linked = classes[a]
                .iter()
                .any(|&u| classes[b].iter().any(|&v| graph.has_edge(u, v)));
            if !linked {
                let u = *rng.choose(&classes[a]).expect("classes are non-empty");
                let v = *rng.choose(&classes[b]).expect("classes are non-empty");
                graph.add_edge(u, v);
            }
        }
    }
    (GraphPayload { graph }, colors)
}

pub fn verify(payload: &GraphPayload, colors: &[u32]) -> VerifyResult {
    let g = &payload.graph;
    let mut c = Checker::new();
    if colors.len() != g.len() {
        c.fail(
            "color_vector_length",
            format!("color vector has {} entries for {} vertices", colors.len(), g.len()),
        );
    } else {
        for (v, &col) in colors.iter().enumerate() {
            if col == 0 {
                c.fail("invalid_color", format!("vertex {v} has color 0; colors start at 1"));
            }
        }
        for (u, v) in g.edges() {
            if colors[u as usize] == colors[v as usize] {
                c.fail(
                    "same_color",
                    format!("edge {u}-{v} joins two vertices of color {}", colors[u as usize]),
                );
            }
        }
    }
    c.finish(|| colors.iter().collect::<BTreeSet<_>>().len() as u64)
}

/// DSATUR: color next the vertex with the most distinct neighbor colors,
/// breaking ties by uncolored degree and then lowest id; assign the smallest
/// free color (1-based).
pub fn dsatur(graph: &UndirectedGraph) -> Vec<u32> {
    let n = graph.len();
    let mut colors = vec![0u32; n];
    let mut saturation: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == 0)
            .max_by(|&a, &b| {
                let key = |v: usize| {
                    let free_deg = graph
                        .neighbors(v as u32)
                        .iter()
                        .filter(|&&u| colors[u as usize] == 0)
                        .count();
                    (saturation[v].len(), free_deg)
                };
                key(a).cmp(&key(b)).then(b.cmp(&a))
            })
            .expect("an uncolored vertex remains");
        let col = (1..).find(|c| !saturation[v].contains(c)).unwrap();
        colors[v] = col;
        for &u in graph.neighbors(v as u32) {
            saturation[u as usize].insert(col);
        }
    }
    colors
}

/// The planted coloring unless DSATUR needs strictly fewer colors.
pub fn solve(payload: &GraphPayload, planted: &[u32]) -> Vec<u32> {
    let d = dsatur(&payload.graph);
    let count = |c: &[u32]| c.iter().collect::<BTreeSet<_>>().len();
    if count(&d) < count(planted) {
        d
    } else {
        planted.to_vec()
    }
}
