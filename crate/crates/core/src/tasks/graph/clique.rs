use serde::{Deserialize, Serialize};

use super::{GraphPayload, BACKGROUND_EDGE_PROBABILITY};
use crate::graph::{maximum_clique, UndirectedGraph};
use crate::rng::StreamRng;
use crate::solution::{check_ids, Checker, VerifyResult};
use crate::task::Difficulty;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CliqueParams {
    pub vertices: (usize, usize),
    pub clique_size: (usize, usize),
    pub edge_probability: f64,
}

pub fn params(difficulty: Difficulty) -> CliqueParams {
    let (vertices, clique_size) = match difficulty {
        Difficulty::Easy => ((4, 8), (2, 4)),
        Difficulty::Medium => ((8, 12), (2, 4)),
        Difficulty::Hard => ((12, 16), (2, 6)),
        Difficulty::Benchmark => ((16, 20), (4, 8)),
    };
    CliqueParams {
        vertices,
        clique_size,
        edge_probability: BACKGROUND_EDGE_PROBABILITY,
    }
}

/// Plants a clique in a random background graph, then deletes background
/// edges from any strictly larger clique until the planted one is maximum.
pub fn generate(p: &CliqueParams, rng: &mut StreamRng) -> (GraphPayload, Vec<u32>) {
    let n = rng.range_usize(p.vertices.0, p.vertices.1);
    let k = rng.range_usize(p.clique_size.0.min(n), p.clique_size.1.min(n));
    let mut planted: Vec<u32> = rng.sample_distinct(n, k).into_iter().map(|v| v as u32).collect();
    planted.sort_unstable();
    let in_planted = |v: u32| planted.binary_search(&v).is_ok();

    let mut graph = UndirectedGraph::empty(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if (in_planted(u) && in_planted(v)) || rng.chance(p.edge_probability) {
                graph.add_edge(u, v);
            }
        }
    }
    loop {
        let larger = maximum_clique(&graph);
        if larger.len() <= k {
            break;
        }
        let removable: Vec<(u32, u32)> = larger
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| larger[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !(in_planted(a) && in_planted(b)))
            .collect();
        let &(a, b) = rng.choose(&removable).expect("a larger clique has a background edge");
        graph.remove_edge(a, b);
    }
    (GraphPayload { graph }, planted)
}

pub fn verify(payload: &GraphPayload, ids: &[u32]) -> VerifyResult {
    let g = &payload.graph;
    let mut c = Checker::new();
    if check_ids(&mut c, ids, g.len(), "vertex") {
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                if !g.has_edge(a, b) {
                    c.fail("not_adjacent", format!("vertices {a} and {b} are not adjacent"));
                }
            }
        }
    }
    c.finish(|| ids.len() as u64)
}

/// Greedy clique: repeatedly add the candidate with the most neighbors among
/// the remaining candidates (lowest id on ties).
pub fn greedy(graph: &UndirectedGraph) -> Vec<u32> {
    let mut candidates: Vec<u32> = (0..graph.n).collect();
    let mut clique = Vec::new();
    while !candidates.is_empty() {
        let inner = |v: u32| {
            graph
                .neighbors(v)
                .iter()
                .filter(|u| candidates.binary_search(u).is_ok())
                .count()
        };
        let mut best = candidates[0];
        let mut best_deg = inner(best);
        for &v in &candidates[1..] {
            let d = inner(v);
            if d > best_deg {
                best = v;
                best_deg = d;
            }
        }
        clique.push(best);
        candidates.retain(|&u| graph.has_edge(best, u));
    }
    clique.sort_unstable();
    clique
}

/// Better of the planted clique and the greedy clique.
pub fn solve(payload: &GraphPayload, planted: &[u32]) -> Vec<u32> {
    let g = greedy(&payload.graph);
    if g.len() > planted.len() {
        g
    } else {
        planted.to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_graph() -> GraphPayload {
        let adj: [&[u32]; 5] = [&[1, 2, 3, 4], &[0, 3, 4], &[0, 3], &[0, 1, 2, 4], &[0, 1, 3]];
        let edges = adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().map(move |&v| (u as u32, v)));
        GraphPayload {
            graph: UndirectedGraph::from_edges(5, edges),
        }
    }

    #[test]
    fn worked_examples() {
        let p = example_graph();
        assert_eq!(verify(&p, &[0, 1, 3, 4]).objective, Some(4));
        let bad = verify(&p, &[0, 1, 2]);
        assert!(bad.has("not_adjacent"));
        for v in 0..5 {
            assert_eq!(verify(&p, &[v]).objective, Some(1));
        }
        assert_eq!(verify(&p, &[]).objective, Some(0));
        assert_eq!(greedy(&p.graph), vec![0, 1, 3, 4]);
        assert_eq!(maximum_clique(&p.graph).len(), 4);
    }

    #[test]
    fn planted_is_maximum_and_in_row() {
        for d in Difficulty::ALL {
            let p = params(d);
            for seed in 0..100 {
                let (payload, planted) = generate(&p, &mut StreamRng::from_key(seed));
                let n = payload.graph.len();
                assert!(payload.graph.is_well_formed());
                assert!((p.vertices.0..=p.vertices.1).contains(&n));
                assert!((p.clique_size.0..=p.clique_size.1).contains(&planted.len()));
                assert!(verify(&payload, &planted).feasible);
                assert_eq!(maximum_clique(&payload.graph).len(), planted.len());
            }
        }
    }
}
