//! Balanced Minimum Bisection on community-structured weighted graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rng::StreamRng;
use crate::solution::{Checker, VerifyResult};
use crate::task::Difficulty;

/// Weighted undirected graph: `graph[u][v] = w(u, v)` for both orientations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisectionPayload {
    pub n: u32,
    pub graph: BTreeMap<u32, BTreeMap<u32, u64>>,
}

impl BisectionPayload {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32, u64)>) -> Self {
        let mut graph: BTreeMap<u32, BTreeMap<u32, u64>> =
            (0..n as u32).map(|v| (v, BTreeMap::new())).collect();
        for (u, v, w) in edges {
            graph.get_mut(&u).unwrap().insert(v, w);
            graph.get_mut(&v).unwrap().insert(u, w);
        }
        Self {
            n: n as u32,
            graph,
        }
    }

    pub fn weight(&self, u: u32, v: u32) -> u64 {
        self.graph.get(&u).and_then(|row| row.get(&v)).copied().unwrap_or(0)
    }

    /// Each edge once, with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.graph
            .iter()
            .flat_map(|(&u, row)| row.iter().filter(move |(&v, _)| u < v).map(move |(&v, &w)| (u, v, w)))
    }

    fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n as usize;
        let mut m = vec![vec![0i64; n]; n];
        for (u, v, w) in self.edges() {
            m[u as usize][v as usize] = w as i64;
            m[v as usize][u as usize] = w as i64;
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BisectionParams {
    pub vertices: (usize, usize),
    pub intra_probability: f64,
    pub intra_weight: (u64, u64),
    /// Probability of an edge between the two communities.
    pub noise: f64,
    pub inter_weight: (u64, u64),
    /// Vertices per side whose edge profile is inverted.
    pub traitors_per_side: usize,
}

pub fn params(difficulty: Difficulty) -> BisectionParams {
    let base = BisectionParams {
        vertices: (28, 32),
        intra_probability: 0.6,
        intra_weight: (3, 9),
        noise: 0.1,
        inter_weight: (1, 3),
        traitors_per_side: 0,
    };
    match difficulty {
        Difficulty::Easy => base,
        Difficulty::Medium => BisectionParams {
            vertices: (40, 44),
            noise: 0.15,
            ..base
        },
        Difficulty::Hard => BisectionParams {
            vertices: (43, 47),
            intra_weight: (5, 9),
            traitors_per_side: 2,
            ..base
        },
        Difficulty::Benchmark => BisectionParams {
            vertices: (48, 52),
            intra_probability: 0.7,
            intra_weight: (5, 9),
            noise: 0.02,
            traitors_per_side: 2,
            ..base
        },
    }
}

/// Two balanced communities with dense heavy edges inside and sparse light
/// edges across. A traitor keeps its planted side but links to the other
/// community like an insider and to its own like an outsider. The graph is
/// made connected so every balanced cut has positive weight.
pub fn generate(p: &BisectionParams, rng: &mut StreamRng) -> (BisectionPayload, (Vec<u32>, Vec<u32>)) {
    let n = rng.range_usize(p.vertices.0, p.vertices.1);
    let mut order: Vec<u32> = (0..n as u32).collect();
    rng.shuffle(&mut order);
    let half = n / 2;
    let mut side = vec![false; n];
    for &v in &order[..half] {
        side[v as usize] = true;
    }
    let traitors = p.traitors_per_side.min(half / 2);
    let mut traitor = vec![false; n];
    for &v in order[..traitors].iter().chain(&order[half..half + traitors]) {
        traitor[v as usize] = true;
    }

    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let friendly = (side[u] == side[v]) ^ (traitor[u] ^ traitor[v]);
            let (prob, (lo, hi)) = if friendly {
                (p.intra_probability, p.intra_weight)
            } else {
                (p.noise, p.inter_weight)
            };
            if rng.chance(prob) {
                edges.push((u as u32, v as u32, rng.range(lo, hi)));
            }
        }
    }
    let mut payload = BisectionPayload::from_edges(n, edges);
    connect(&mut payload, p, rng);

    let mut a: Vec<u32> = order[..half].to_vec();
    let mut b: Vec<u32> = order[half..].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    (payload, (a, b))
}

fn connect(payload: &mut BisectionPayload, p: &BisectionParams, rng: &mut StreamRng) {
    let n = payload.n as usize;
    let mut comp = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(s as u32);
        comp[s] = id;
        let mut stack = vec![s as u32];
        while let Some(u) = stack.pop() {
            for &v in payload.graph[&u].keys() {
                if comp[v as usize] == usize::MAX {
                    comp[v as usize] = id;
                    stack.push(v);
                }
            }
        }
    }
    for pair in reps.windows(2) {
        let w = rng.range(p.inter_weight.0, p.inter_weight.1);
        payload.graph.get_mut(&pair[0]).unwrap().insert(pair[1], w);
        payload.graph.get_mut(&pair[1]).unwrap().insert(pair[0], w);
    }
}

pub fn verify(payload: &BisectionPayload, a: &[u32], b: &[u32]) -> VerifyResult {
    let n = payload.n as usize;
    let mut c = Checker::new();
    // 0 = unassigned, 1 = side a, 2 = side b
    let mut owner = vec![0u8; n];
    for (tag, side) in [(1u8, a), (2u8, b)] {
        for &v in side {
            match owner.get_mut(v as usize) {
                None => c.fail("unknown_vertex", format!("vertex {v} does not exist")),
                Some(o) if *o == tag => c.fail("duplicate_vertex", format!("vertex {v} listed twice")),
                Some(o) if *o != 0 => c.fail("vertex_on_both_sides", format!("vertex {v} on both sides")),
                Some(o) => *o = tag,
            }
        }
    }
    for (v, _) in owner.iter().enumerate().filter(|(_, o)| **o == 0) {
        c.fail("vertex_unassigned", format!("vertex {v} unassigned"));
    }
    if a.len().abs_diff(b.len()) > 1 {
        c.fail(
            "balance_violated",
            format!("side sizes {} and {} differ by more than one", a.len(), b.len()),
        );
    }
    c.finish(|| {
        payload
            .edges()
            .filter(|&(u, v, _)| owner[u as usize] != owner[v as usize])
            .map(|(_, _, w)| w)
            .sum()
    })
}

fn cut(m: &[Vec<i64>], side: &[bool]) -> i64 {
    let n = side.len();
    let mut total = 0;
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] {
                total += m[u][v];
            }
        }
    }
    total
}

/// Kernighan-Lin refinement. Each pass swaps the best remaining pair,
/// locks it, and commits the prefix of swaps with the largest positive total
/// gain. Stops after a pass without improvement. Never increases the cut.
pub fn kernighan_lin(payload: &BisectionPayload, side: &mut [bool]) {
    let m = payload.matrix();
    let n = side.len();
    loop {
        let mut d: Vec<i64> = (0..n)
            .map(|v| {
                (0..n)
                    .map(|u| if side[u] != side[v] { m[v][u] } else { -m[v][u] })
                    .sum()
            })
            .collect();
        let mut locked = vec![false; n];
        let mut swaps = Vec::new();
        let mut gains = Vec::new();
        let steps = side.iter().filter(|&&s| s).count().min(side.iter().filter(|&&s| !s).count());
        for _ in 0..steps {
            let mut best: Option<(i64, usize, usize)> = None;
            for a in (0..n).filter(|&a| side[a] && !locked[a]) {
                for b in (0..n).filter(|&b| !side[b] && !locked[b]) {
                    let g = d[a] + d[b] - 2 * m[a][b];
                    if best.is_none_or(|(bg, _, _)| g > bg) {
                        best = Some((g, a, b));
                    }
                }
            }
            let Some((g, a, b)) = best else { break };
            locked[a] = true;
            locked[b] = true;
            for x in (0..n).filter(|&x| !locked[x]) {
                if side[x] {
                    d[x] += 2 * m[x][a] - 2 * m[x][b];
                } else {
                    d[x] += 2 * m[x][b] - 2 * m[x][a];
                }
            }
            swaps.push((a, b));
            gains.push(g);
        }
        let mut best_k = 0;
        let mut best_gain = 0;
        let mut running = 0;
        for (k, g) in gains.iter().enumerate() {
            running += g;
            if running > best_gain {
                best_gain = running;
                best_k = k + 1;
            }
        }
        if best_k == 0 {
            return;
        }
        for &(a, b) in &swaps[..best_k] {
            side[a] = false;
            side[b] = true;
        }
    }
}

fn random_balanced(n: usize, rng: &mut StreamRng) -> Vec<bool> {
    let mut side = vec![false; n];
    for v in rng.sample_distinct(n, n / 2) {
        side[v] = true;
    }
    side
}

fn sides_to_lists(side: &[bool]) -> (Vec<u32>, Vec<u32>) {
    let a = (0..side.len() as u32).filter(|&v| side[v as usize]).collect();
    let b = (0..side.len() as u32).filter(|&v| !side[v as usize]).collect();
    (a, b)
}

/// Kernighan-Lin from the planted partition and from one random balanced
/// partition; the lower cut wins, the planted seed on ties.
pub fn solve(payload: &BisectionPayload, planted: (&[u32], &[u32]), rng: &mut StreamRng) -> (Vec<u32>, Vec<u32>) {
    let n = payload.n as usize;
    let m = payload.matrix();
    let mut from_planted = vec![false; n];
    for &v in planted.0 {
        from_planted[v as usize] = true;
    }
    kernighan_lin(payload, &mut from_planted);
    let mut from_random = random_balanced(n, rng);
    kernighan_lin(payload, &mut from_random);
    if cut(&m, &from_random) < cut(&m, &from_planted) {
        sides_to_lists(&from_random)
    } else {
        sides_to_lists(&from_planted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_instance() -> BisectionPayload {
        BisectionPayload::from_edges(4, [(0, 1, 3), (0, 2, 1), (1, 2, 2), (1, 3, 2), (2, 3, 3)])
    }

    /// Minimum balanced cut over all bipartitions.
    fn exhaustive(p: &BisectionPayload) -> u64 {
        let n = p.n as usize;
        (0u32..1 << n)
            .filter(|m| (m.count_ones() as usize).abs_diff(n - m.count_ones() as usize) <= 1)
            .map(|m| {
                p.edges()
                    .filter(|&(u, v, _)| (m >> u & 1) != (m >> v & 1))
                    .map(|(_, _, w)| w)
                    .sum()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn worked_examples() {
        let p = example_instance();
        assert_eq!(verify(&p, &[0, 1], &[2, 3]).objective, Some(5));
        assert_eq!(verify(&p, &[0, 2], &[1, 3]).objective, Some(8));
        assert!(verify(&p, &[0], &[1, 2, 3]).has("balance_violated"));
        assert!(verify(&p, &[0, 1], &[2]).has("vertex_unassigned"));
        assert!(verify(&p, &[0, 1], &[1, 2, 3]).has("vertex_on_both_sides"));
        assert_eq!(exhaustive(&p), 5);
        let (a, b) = solve(&p, (&[0, 2], &[1, 3]), &mut StreamRng::from_key(3));
        assert_eq!(verify(&p, &a, &b).objective, Some(5));
    }

    #[test]
    fn label_swap_is_symmetric() {
        let p = example_instance();
        assert_eq!(verify(&p, &[2, 3], &[0, 1]), verify(&p, &[0, 1], &[2, 3]));
    }

    #[test]
    fn disconnected_cliques_cut_to_zero() {
        let mut edges = Vec::new();
        for base in [0u32, 4] {
            for u in base..base + 4 {
                for v in u + 1..base + 4 {
                    edges.push((u, v, 5));
                }
            }
        }
        let p = BisectionPayload::from_edges(8, edges);
        let (a, b) = solve(&p, (&[0, 1, 4, 5], &[2, 3, 6, 7]), &mut StreamRng::from_key(0));
        assert_eq!(verify(&p, &a, &b).objective, Some(0));
    }

    #[test]
    fn refinement_never_worse_than_seed() {
        for seed in 0..50 {
            let mut rng = StreamRng::from_key(seed);
            let (payload, (a, b)) = generate(&params(Difficulty::Easy), &mut rng);
            let planted_cut = verify(&payload, &a, &b).objective.unwrap();
            let (sa, sb) = solve(&payload, (&a, &b), &mut rng);
            let r = verify(&payload, &sa, &sb);
            assert!(r.objective.unwrap() <= planted_cut);
        }
    }

    #[test]
    fn near_optimal_on_small_graphs() {
        let p = BisectionParams {
            vertices: (8, 12),
            traitors_per_side: 1,
            ..params(Difficulty::Hard)
        };
        let mut optimal = 0;
        for seed in 0..200 {
            let mut rng = StreamRng::from_key(seed);
            let (payload, (a, b)) = generate(&p, &mut rng);
            let (sa, sb) = solve(&payload, (&a, &b), &mut rng);
            let got = verify(&payload, &sa, &sb).objective.expect("balanced");
            let best = exhaustive(&payload);
            assert!(got >= best);
            optimal += usize::from(got == best);
        }
        assert!(optimal >= 180, "{optimal}/200 optimal");
    }

    #[test]
    fn generated_rows() {
        for d in Difficulty::ALL {
            let p = params(d);
            for seed in 0..30 {
                let (payload, (a, b)) = generate(&p, &mut StreamRng::from_key(seed));
                let n = payload.n as usize;
                assert!((p.vertices.0..=p.vertices.1).contains(&n));
                for (u, row) in &payload.graph {
                    for (v, w) in row {
                        assert_eq!(payload.weight(*v, *u), *w);
                        assert!(*w >= 1 && u != v);
                    }
                }
                let r = verify(&payload, &a, &b);
                assert!(r.objective.unwrap() > 0);
            }
        }
    }
}
