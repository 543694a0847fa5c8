//! Symmetric TSP on complete integer-weighted graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rng::StreamRng;
use crate::solution::{Checker, VerifyResult};
use crate::task::Difficulty;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TspPayload {
    pub n: u32,
    pub dist: BTreeMap<u32, BTreeMap<u32, u64>>,
}

impl TspPayload {
    pub fn from_matrix(matrix: &[Vec<u64>]) -> Self {
        let n = matrix.len();
        let dist = (0..n)
            .map(|u| {
                let row = (0..n).filter(|&v| v != u).map(|v| (v as u32, matrix[u][v])).collect();
                (u as u32, row)
            })
            .collect();
        Self { n: n as u32, dist }
    }

    /// Dense matrix with zeros on the diagonal.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        let n = self.n as usize;
        let mut m = vec![vec![0; n]; n];
        for (&u, row) in &self.dist {
            for (&v, &d) in row {
                m[u as usize][v as usize] = d;
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TspParams {
    pub cities: (usize, usize),
    pub distance: (u64, u64),
}

pub const DISTANCE_RANGE: (u64, u64) = (1, 100);

pub fn params(difficulty: Difficulty) -> TspParams {
    let cities = match difficulty {
        Difficulty::Easy => (10, 20),
        Difficulty::Medium => (20, 30),
        Difficulty::Hard => (35, 45),
        Difficulty::Benchmark => (45, 55),
    };
    TspParams {
        cities,
        distance: DISTANCE_RANGE,
    }
}

#[allow(clippy::needless_range_loop)]
pub fn generate(p: &TspParams, rng: &mut StreamRng) -> (TspPayload, Vec<u32>) {
    let n = rng.range_usize(p.cities.0, p.cities.1);
    let mut m = vec![vec![0u64; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let d = rng.range(p.distance.0, p.distance.1);
            m[u][v] = d;
            m[v][u] = d;
        }
    }
    let mut tour: Vec<u32> = (0..n as u32).collect();
    rng.shuffle(&mut tour);
    tour.push(tour[0]);
    (TspPayload::from_matrix(&m), tour)
}

pub fn verify(payload: &TspPayload, route: &[u32]) -> VerifyResult {
    let n = payload.n as usize;
    let mut c = Checker::new();
    if route.len() != n + 1 {
        c.fail(
            "route_length",
            format!("route has {} entries, expected {}", route.len(), n + 1),
        );
    }
    let interior = match route {
        [first, .., last] if first == last => &route[..route.len() - 1],
        [] => route,
        _ => {
            c.fail("not_closed", "route must start and end at the same city");
            route
        }
    };
    let mut seen = vec![false; n];
    for &city in interior {
        match seen.get_mut(city as usize) {
            None => c.fail("unknown_city", format!("city {city} does not exist")),
            Some(true) => c.fail("city_revisited", format!("city {city} revisited")),
            Some(s) => *s = true,
        }
    }
    for (city, _) in seen.iter().enumerate().filter(|(_, s)| !**s) {
        c.fail("city_not_visited", format!("city {city} not visited"));
    }
    c.finish(|| {
        route
            .windows(2)
            .map(|w| payload.dist[&w[0]][&w[1]])
            .sum()
    })
}

fn tour_cost(m: &[Vec<u64>], tour: &[usize]) -> u64 {
    let n = tour.len();
    (0..n).map(|i| m[tour[i]][tour[(i + 1) % n]]).sum()
}

/// Open tour (no repeated start) built by nearest neighbor; lowest id on ties.
pub fn nearest_neighbor(m: &[Vec<u64>], start: usize) -> Vec<usize> {
    let n = m.len();
    let mut visited = vec![false; n];
    let mut tour = Vec::with_capacity(n);
    let mut at = start;
    visited[at] = true;
    tour.push(at);
    for _ in 1..n {
        let next = (0..n)
            .filter(|&v| !visited[v])
            .min_by_key(|&v| (m[at][v], v))
            .unwrap();
        visited[next] = true;
        tour.push(next);
        at = next;
    }
    tour
}

/// First-improvement 2-opt until no move improves or `budget` moves are spent.
/// Returns the number of applied moves.
pub fn two_opt(m: &[Vec<u64>], tour: &mut [usize], budget: usize) -> usize {
    let n = tour.len();
    if n < 4 {
        return 0;
    }
    let mut moves = 0;
    loop {
        let mut improved = false;
        for i in 0..n - 1 {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (tour[i], tour[i + 1]);
                let (c, d) = (tour[j], tour[(j + 1) % n]);
                if m[a][c] + m[b][d] < m[a][b] + m[c][d] {
                    tour[i + 1..=j].reverse();
                    moves += 1;
                    improved = true;
                    if moves >= budget {
                        return moves;
                    }
                }
            }
        }
        if !improved {
            return moves;
        }
    }
}

/// Whether some single 2-opt move would shorten the tour.
pub fn has_improving_move(m: &[Vec<u64>], tour: &[usize]) -> bool {
    let n = tour.len();
    (0..n.saturating_sub(1)).any(|i| {
        (i + 2..n).any(|j| {
            !(i == 0 && j == n - 1) && {
                let (a, b, c, d) = (tour[i], tour[i + 1], tour[j], tour[(j + 1) % n]);
                m[a][c] + m[b][d] < m[a][b] + m[c][d]
            }
        })
    })
}

/// Number of nearest-neighbor starts.
pub const MAX_STARTS: usize = 8;

/// Distinct start cities for the multi-start search, ascending.
pub fn start_cities(n: usize, rng: &mut StreamRng) -> Vec<usize> {
    let mut starts = rng.sample_distinct(n, n.min(MAX_STARTS));
    starts.sort_unstable();
    starts
}

/// Multi-start nearest neighbor followed by 2-opt; returns a closed route
/// rotated to begin at city 0.
pub fn solve(payload: &TspPayload, rng: &mut StreamRng) -> Vec<u32> {
    let m = payload.matrix();
    let n = m.len();
    if n == 0 {
        return Vec::new();
    }
    let starts = start_cities(n, rng);
    let budget = 50 * n * n;
    let mut best: Option<(u64, Vec<usize>)> = None;
    for start in starts {
        let mut tour = nearest_neighbor(&m, start);
        two_opt(&m, &mut tour, budget);
        let cost = tour_cost(&m, &tour);
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, tour));
        }
    }
    let (_, tour) = best.unwrap();
    let zero = tour.iter().position(|&c| c == 0).unwrap();
    let mut route: Vec<u32> = tour[zero..].iter().chain(&tour[..zero]).map(|&c| c as u32).collect();
    route.push(0);
    route
}
