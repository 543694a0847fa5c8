//! Simple undirected graphs and the exact clique search used by the
//! generators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndirectedGraph {
    pub n: u32,
    pub adjacency: BTreeMap<u32, Vec<u32>>,
}

impl UndirectedGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n: n as u32,
            adjacency: (0..n as u32).map(|v| (v, Vec::new())).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        self.adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Inserts `{u, v}`; self-loops and existing edges are ignored.
    pub fn add_edge(&mut self, u: u32, v: u32) -> bool {
        if u == v || self.has_edge(u, v) {
            return false;
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = self.adjacency.entry(a).or_default();
            let pos = list.binary_search(&b).unwrap_err();
            list.insert(pos, b);
        }
        true
    }

    pub fn remove_edge(&mut self, u: u32, v: u32) -> bool {
        let mut removed = false;
        for (a, b) in [(u, v), (v, u)] {
            if let Some(list) = self.adjacency.get_mut(&a) {
                if let Ok(pos) = list.binary_search(&b) {
                    list.remove(pos);
                    removed = true;
                }
            }
        }
        removed
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(Vec::len).sum::<usize>() / 2
    }

    /// Each edge once, with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency
            .iter()
            .flat_map(|(&u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Structural invariants: vertex keys `0..n`, symmetric, loop-free, sorted.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n;
        if self.adjacency.len() != n as usize || self.adjacency.keys().copied().ne(0..n) {
            return false;
        }
        self.adjacency.iter().all(|(&u, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list.iter().all(|&v| v < n && v != u && self.has_edge(v, u))
        })
    }

    /// Adjacency as bitmasks; requires `n <= 64`.
    pub fn bitsets(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitset graphs hold at most 64 vertices");
        (0..self.n)
            .map(|v| self.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect()
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        let mut g = Self::empty(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

/// Exact maximum clique by branch and bound over bitmasks (`n <= 64`).
/// Returns the sorted vertex list of one maximum clique.
pub fn maximum_clique(graph: &UndirectedGraph) -> Vec<u32> {
    let adj = graph.bitsets();
    let all = if graph.n == 64 {
        u64::MAX
    } else {
        (1u64 << graph.n) - 1
    };
    let mut best = 0u64;
    expand(&adj, 0, all, &mut best);
    mask_to_vec(best)
}

fn expand(adj: &[u64], current: u64, mut candidates: u64, best: &mut u64) {
    if candidates == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    while candidates != 0 {
        if current.count_ones() + candidates.count_ones() <= best.count_ones() {
            return;
        }
        if current.count_ones() + greedy_color_bound(adj, candidates) <= best.count_ones() {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= !(1 << v);
        expand(adj, current | (1 << v), candidates & adj[v], best);
    }
    if current.count_ones() > best.count_ones() {
        *best = current;
    }
}

/// Number of greedy color classes of `set`; an upper bound on its clique number.
fn greedy_color_bound(adj: &[u64], mut set: u64) -> u32 {
    let mut colors = 0;
    while set != 0 {
        colors += 1;
        let mut avail = set;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            set &= !(1 << v);
        }
    }
    colors
}

pub(crate) fn mask_to_vec(mut mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let v = mask.trailing_zeros();
        out.push(v);
        mask &= mask - 1;
    }
    out
}

/// Connected components as sorted vertex lists, ordered by smallest member.
pub fn components(graph: &UndirectedGraph) -> Vec<Vec<u32>> {
    let n = graph.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s as u32];
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &v in graph.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_clique(g: &UndirectedGraph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|&m| {
                let vs = mask_to_vec(m as u64);
                vs.iter()
                    .enumerate()
                    .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn adjacency_stays_symmetric() {
        let mut g = UndirectedGraph::empty(4);
        assert!(g.add_edge(0, 1));
        assert!(!g.add_edge(1, 0));
        assert!(!g.add_edge(2, 2));
        g.add_edge(3, 1);
        assert!(g.is_well_formed());
        assert_eq!(g.neighbors(1), &[0, 3]);
        assert!(g.remove_edge(1, 0));
        assert!(!g.has_edge(0, 1));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn clique_search_matches_enumeration() {
        let mut rng = crate::rng::StreamRng::from_key(11);
        for _ in 0..60 {
            let n = rng.range_usize(1, 12);
            let p = rng.uniform(0.1, 0.9);
            let mut g = UndirectedGraph::empty(n);
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.chance(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            let c = maximum_clique(&g);
            assert_eq!(c.len(), brute_clique(&g));
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    assert!(g.has_edge(a, b));
                }
            }
        }
    }

    #[test]
    fn components_of_two_triangles() {
        let g = UndirectedGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(components(&g), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
