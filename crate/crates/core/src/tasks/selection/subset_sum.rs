//! Subset Sum, maximum-cardinality variant: pick indices whose values sum
//! exactly to the target, using as many numbers as possible.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rng::StreamRng;
use crate::solution::{check_ids, Checker, VerifyResult};
use crate::task::Difficulty;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSumPayload {
    pub numbers: BTreeMap<u32, u64>,
    pub target: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSumParams {
    pub total: (usize, usize),
    pub solution_size: (usize, usize),
    pub values: (u64, u64),
}

pub fn params(difficulty: Difficulty) -> SubsetSumParams {
    let (total, solution_size, values) = match difficulty {
        Difficulty::Easy => ((5, 10), (4, 8), (1, 5)),
        Difficulty::Medium => ((8, 12), (4, 8), (1, 10)),
        Difficulty::Hard => ((12, 15), (8, 12), (1, 15)),
        Difficulty::Benchmark => ((15, 20), (10, 15), (1, 15)),
    };
    SubsetSumParams {
        total,
        solution_size,
        values,
    }
}

pub fn generate(p: &SubsetSumParams, rng: &mut StreamRng) -> (SubsetSumPayload, Vec<u32>) {
    let (n, k) = loop {
        let n = rng.range_usize(p.total.0, p.total.1);
        if p.solution_size.0 <= n {
            break (n, rng.range_usize(p.solution_size.0, p.solution_size.1.min(n)));
        }
    };
    let numbers: BTreeMap<u32, u64> = (0..n as u32)
        .map(|i| (i, rng.range(p.values.0, p.values.1)))
        .collect();
    let mut planted: Vec<u32> = rng.sample_distinct(n, k).into_iter().map(|i| i as u32).collect();
    planted.sort_unstable();
    let target = planted.iter().map(|i| numbers[i]).sum();
    (SubsetSumPayload { numbers, target }, planted)
}

pub fn verify(payload: &SubsetSumPayload, ids: &[u32]) -> VerifyResult {
    let mut c = Checker::new();
    if check_ids(&mut c, ids, payload.numbers.len(), "number") {
        let sum: u64 = ids.iter().map(|i| payload.numbers[i]).sum();
        if sum != payload.target {
            c.fail(
                "wrong_sum",
                format!("selected numbers sum to {sum}, target is {}", payload.target),
            );
        }
    }
    c.finish(|| ids.len() as u64)
}

/// Exact maximum-cardinality subset by dynamic programming over sums.
/// Returns `None` only when the target is unreachable.
pub fn solve(payload: &SubsetSumPayload) -> Option<Vec<u32>> {
    let values: Vec<u64> = payload.numbers.values().copied().collect();
    let target = payload.target as usize;
    const NONE: i32 = -1;
    // best[i][s]: max count using the first i numbers to reach sum s.
    let mut best = vec![vec![NONE; target + 1]; values.len() + 1];
    best[0][0] = 0;
    for (i, &v) in values.iter().enumerate() {
        let v = v as usize;
        for s in 0..=target {
            let skip = best[i][s];
            let take = if s >= v && best[i][s - v] != NONE {
                best[i][s - v] + 1
            } else {
                NONE
            };
            best[i + 1][s] = skip.max(take);
        }
    }
    if best[values.len()][target] == NONE {
        return None;
    }
    let mut chosen = Vec::new();
    let mut s = target;
    for i in (0..values.len()).rev() {
        let v = values[i] as usize;
        if s >= v && best[i][s - v] != NONE && best[i][s - v] + 1 == best[i + 1][s] {
            chosen.push(i as u32);
            s -= v;
        }
    }
    chosen.reverse();
    Some(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_instance() -> SubsetSumPayload {
        SubsetSumPayload {
            numbers: [(0, 2), (1, 3), (2, 7), (3, 8), (4, 5)].into_iter().collect(),
            target: 10,
        }
    }

    fn brute_force(p: &SubsetSumPayload) -> Option<usize> {
        let n = p.numbers.len();
        (0u32..1 << n)
            .filter(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| p.numbers[&(i as u32)])
                    .sum::<u64>()
                    == p.target
            })
            .map(|m| m.count_ones() as usize)
            .max()
    }

    #[test]
    fn worked_examples() {
        let p = example_instance();
        assert_eq!(verify(&p, &[0, 1, 4]).objective, Some(3));
        assert_eq!(verify(&p, &[2, 1]).objective, Some(2));
        assert!(!verify(&p, &[]).feasible);
        let dup = verify(&p, &[0, 0, 1, 4]);
        assert!(dup.has("duplicate_id"));
        assert!(verify(&p, &[9]).has("unknown_id"));
    }

    #[test]
    fn dp_matches_brute_force_on_example_data() {
        let p = example_instance();
        assert_eq!(brute_force(&p), Some(3));
        let sol = solve(&p).unwrap();
        assert_eq!(sol.len(), 3);
        assert!(verify(&p, &sol).feasible);
    }

    #[test]
    fn singleton() {
        let p = SubsetSumPayload {
            numbers: [(0, 5)].into_iter().collect(),
            target: 5,
        };
        assert_eq!(solve(&p), Some(vec![0]));
    }

    #[test]
    fn generated_rows_and_dp_dominate_planted() {
        for d in Difficulty::ALL {
            let p = params(d);
            for seed in 0..100 {
                let mut rng = StreamRng::from_key(seed);
                let (payload, planted) = generate(&p, &mut rng);
                let n = payload.numbers.len();
                assert!((p.total.0..=p.total.1).contains(&n));
                assert!((p.solution_size.0..=p.solution_size.1).contains(&planted.len()));
                assert!(payload.numbers.values().all(|v| (p.values.0..=p.values.1).contains(v)));
                assert!(verify(&payload, &planted).feasible);
                let dp = solve(&payload).unwrap();
                assert!(verify(&payload, &dp).feasible);
                assert!(dp.len() >= planted.len());
                if n <= 12 {
                    assert_eq!(Some(dp.len()), brute_force(&payload));
                }
            }
        }
    }
}
