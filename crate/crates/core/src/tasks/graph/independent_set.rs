use serde::{Deserialize, Serialize};

use super::{GraphPayload, BACKGROUND_EDGE_PROBABILITY};
use crate::graph::{maximum_clique, UndirectedGraph};
use crate::rng::StreamRng;
use crate::solution::{check_ids, Checker, VerifyResult};
use crate::task::Difficulty;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndependentSetParams {
    pub vertices: (usize, usize),
    pub set_size: (usize, usize),
    pub edge_probability: f64,
}

pub fn params(difficulty: Difficulty) -> IndependentSetParams {
    let (vertices, set_size) = match difficulty {
        Difficulty::Easy => ((12, 20), (4, 8)),
        Difficulty::Medium => ((20, 30), (8, 12)),
        Difficulty::Hard => ((30, 40), (12, 16)),
        Difficulty::Benchmark => ((40, 50), (16, 20)),
    };
    IndependentSetParams {
        vertices,
        set_size,
        edge_probability: BACKGROUND_EDGE_PROBABILITY,
    }
}

/// Cap on repair edges; beyond it the planted set is only guaranteed feasible.
const MAX_REPAIRS: usize = 2_000;

/// Plants an independent set and adds random edges touching at least one
/// vertex outside it. Any strictly larger independent set is then broken by
/// an extra edge, so the planted set ends up maximum.
pub fn generate(p: &IndependentSetParams, rng: &mut StreamRng) -> (GraphPayload, Vec<u32>) {
    let n = rng.range_usize(p.vertices.0, p.vertices.1);
    let k = rng.range_usize(p.set_size.0.min(n), p.set_size.1.min(n));
    let mut planted: Vec<u32> = rng.sample_distinct(n, k).into_iter().map(|v| v as u32).collect();
    planted.sort_unstable();
    let in_planted = |v: u32| planted.binary_search(&v).is_ok();

    let mut graph = UndirectedGraph::empty(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if !(in_planted(u) && in_planted(v)) && rng.chance(p.edge_probability) {
                graph.add_edge(u, v);
            }
        }
    }
    for _ in 0..MAX_REPAIRS {
        let larger = maximum_clique(&graph.complement());
        if larger.len() <= k {
            break;
        }
        let pairs: Vec<(u32, u32)> = larger
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| larger[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !(in_planted(a) && in_planted(b)))
            .collect();
        let &(a, b) = rng.choose(&pairs).expect("a larger set leaves the planted one");
        graph.add_edge(a, b);
    }
    (GraphPayload { graph }, planted)
}

pub fn verify(payload: &GraphPayload, ids: &[u32]) -> VerifyResult {
    let g = &payload.graph;
    let mut c = Checker::new();
    if check_ids(&mut c, ids, g.len(), "vertex") {
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                if g.has_edge(a, b) {
                    c.fail("adjacent_pair", format!("vertices {a} and {b} are adjacent"));
                }
            }
        }
    }
    c.finish(|| ids.len() as u64)
}

/// Minimum-degree greedy: take the vertex of least remaining degree (lowest
/// id on ties) and delete its closed neighborhood.
pub fn greedy(graph: &UndirectedGraph) -> Vec<u32> {
    let n = graph.len();
    let mut alive = vec![true; n];
    let mut set = Vec::new();
    loop {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| {
                let deg = graph.neighbors(v as u32).iter().filter(|&&u| alive[u as usize]).count();
                (deg, v)
            });
        let Some(v) = pick else { break };
        set.push(v as u32);
        alive[v] = false;
        for &u in graph.neighbors(v as u32) {
            alive[u as usize] = false;
        }
    }
    set.sort_unstable();
    set
}

pub fn solve(payload: &GraphPayload, planted: &[u32]) -> Vec<u32> {
    let g = greedy(&payload.graph);
    if g.len() > planted.len() {
        g
    } else {
        planted.to_vec()
    }
}
