//! 0/1 Knapsack.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rng::StreamRng;
use crate::solution::{check_ids, Checker, VerifyResult};
use crate::task::Difficulty;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub weight: u64,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackPayload {
    pub items: BTreeMap<u32, Item>,
    pub capacity: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KnapsackParams {
    pub solution_size: (usize, usize),
    pub total: (usize, usize),
    pub weight: (u64, u64),
    pub ratio: (f64, f64),
    pub capacity_factor: (f64, f64),
}

pub fn params(difficulty: Difficulty) -> KnapsackParams {
    match difficulty {
        Difficulty::Easy => KnapsackParams {
            solution_size: (6, 10),
            total: (15, 25),
            weight: (5, 25),
            ratio: (1.8, 2.5),
            capacity_factor: (1.1, 1.4),
        },
        Difficulty::Medium => KnapsackParams {
            solution_size: (8, 12),
            total: (25, 35),
            weight: (20, 80),
            ratio: (1.5, 2.0),
            capacity_factor: (1.05, 1.25),
        },
        Difficulty::Hard => KnapsackParams {
            solution_size: (15, 25),
            total: (35, 60),
            weight: (50, 200),
            ratio: (1.2, 1.6),
            capacity_factor: (1.02, 1.15),
        },
        Difficulty::Benchmark => KnapsackParams {
            solution_size: (25, 35),
            total: (55, 80),
            weight: (50, 200),
            ratio: (1.2, 1.6),
            capacity_factor: (1.02, 1.15),
        },
    }
}

/// Distractor value-to-weight ratios are drawn from `[DISTRACTOR_FLOOR * lo, lo)`.
const DISTRACTOR_FLOOR: f64 = 0.5;

pub fn generate(p: &KnapsackParams, rng: &mut StreamRng) -> (KnapsackPayload, Vec<u32>) {
    let k = rng.range_usize(p.solution_size.0, p.solution_size.1);
    let n = rng.range_usize(p.total.0.max(k), p.total.1.max(k));
    let mut pool = Vec::with_capacity(n);
    for _ in 0..k {
        let weight = rng.range(p.weight.0, p.weight.1);
        let ratio = rng.uniform(p.ratio.0, p.ratio.1);
        let value = ((weight as f64 * ratio).round() as u64).max(1);
        pool.push((Item { weight, value }, true));
    }
    for _ in k..n {
        let weight = rng.range(p.weight.0, p.weight.1);
        let ratio = rng.uniform(DISTRACTOR_FLOOR * p.ratio.0, p.ratio.0);
        // floor keeps value / weight strictly below the solution band
        let value = ((weight as f64 * ratio).floor() as u64).max(1);
        pool.push((Item { weight, value }, false));
    }
    rng.shuffle(&mut pool);
    let planted_weight: u64 = pool.iter().filter(|(_, s)| *s).map(|(it, _)| it.weight).sum();
    let factor = rng.uniform(p.capacity_factor.0, p.capacity_factor.1);
    let capacity = ((planted_weight as f64 * factor).floor() as u64).max(planted_weight);
    let planted = pool
        .iter()
        .enumerate()
        .filter(|(_, (_, s))| *s)
        .map(|(i, _)| i as u32)
        .collect();
    let items = pool
        .into_iter()
        .enumerate()
        .map(|(i, (it, _))| (i as u32, it))
        .collect();
    (KnapsackPayload { items, capacity }, planted)
}

pub fn verify(payload: &KnapsackPayload, ids: &[u32]) -> VerifyResult {
    let mut c = Checker::new();
    let mut value = 0;
    if check_ids(&mut c, ids, payload.items.len(), "item") {
        let weight: u64 = ids.iter().map(|i| payload.items[i].weight).sum();
        value = ids.iter().map(|i| payload.items[i].value).sum();
        if weight > payload.capacity {
            c.fail(
                "capacity_exceeded",
                format!("total weight {weight} exceeds capacity {}", payload.capacity),
            );
        }
    }
    c.finish(|| value)
}

/// Exact optimum by dynamic programming over capacities.
pub fn solve(payload: &KnapsackPayload) -> Vec<u32> {
    let items: Vec<Item> = payload.items.values().copied().collect();
    let cap = payload.capacity as usize;
    let mut best = vec![0u64; cap + 1];
    let mut take = vec![vec![false; cap + 1]; items.len()];
    for (i, it) in items.iter().enumerate() {
        let w = it.weight as usize;
        if w > cap {
            continue;
        }
        for c in (w..=cap).rev() {
            let cand = best[c - w] + it.value;
            if cand > best[c] {
                best[c] = cand;
                take[i][c] = true;
            }
        }
    }
    let mut chosen = Vec::new();
    let mut c = cap;
    for i in (0..items.len()).rev() {
        if take[i][c] {
            chosen.push(i as u32);
            c -= items[i].weight as usize;
        }
    }
    chosen.reverse();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_instance() -> KnapsackPayload {
        let items = [(3, 4), (4, 5), (7, 10), (8, 11)]
            .into_iter()
            .enumerate()
            .map(|(i, (weight, value))| (i as u32, Item { weight, value }))
            .collect();
        KnapsackPayload {
            items,
            capacity: 20,
        }
    }

    fn brute_force(p: &KnapsackPayload) -> u64 {
        let n = p.items.len();
        (0u32..1 << n)
            .filter_map(|m| {
                let ids: Vec<u32> = (0..n as u32).filter(|i| m >> i & 1 == 1).collect();
                verify(p, &ids).objective
            })
            .max()
            .unwrap()
    }

    #[test]
    fn worked_examples() {
        let p = example_instance();
        assert_eq!(verify(&p, &[0, 2, 3]).objective, Some(25));
        let over = verify(&p, &[0, 1, 2, 3]);
        assert!(over.has("capacity_exceeded"));
        assert_eq!(brute_force(&p), 26);
        let dp = solve(&p);
        assert_eq!(dp, vec![1, 2, 3]);
        assert_eq!(verify(&p, &dp).objective, Some(26));
    }

    #[test]
    fn dp_equals_brute_force_on_small_instances() {
        let p = KnapsackParams {
            solution_size: (3, 7),
            total: (8, 15),
            ..params(Difficulty::Easy)
        };
        for seed in 0..200 {
            let (payload, planted) = generate(&p, &mut StreamRng::from_key(seed));
            assert!(verify(&payload, &planted).feasible);
            let dp = solve(&payload);
            assert_eq!(verify(&payload, &dp).objective, Some(brute_force(&payload)), "seed {seed}");
        }
    }

    #[test]
    fn generated_rows() {
        for d in Difficulty::ALL {
            let p = params(d);
            for seed in 0..100 {
                let (payload, planted) = generate(&p, &mut StreamRng::from_key(seed));
                let n = payload.items.len();
                assert!((p.total.0..=p.total.1).contains(&n));
                assert!((p.solution_size.0..=p.solution_size.1).contains(&planted.len()));
                let pw: u64 = planted.iter().map(|i| payload.items[i].weight).sum();
                assert!(payload.capacity >= pw);
                assert!(payload.capacity as f64 <= pw as f64 * p.capacity_factor.1);
                for (id, it) in &payload.items {
                    assert!((p.weight.0..=p.weight.1).contains(&it.weight));
                    if !planted.contains(id) {
                        assert!((it.value as f64) < it.weight as f64 * p.ratio.0);
                    }
                }
                assert!(verify(&payload, &planted).feasible);
            }
        }
    }
}
