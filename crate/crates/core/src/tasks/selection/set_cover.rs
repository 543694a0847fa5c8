//! Minimum Set Cover.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::rng::StreamRng;
use crate::solution::{check_ids, Checker, VerifyResult};
use crate::task::Difficulty;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverPayload {
    pub universe: BTreeSet<u32>,
    pub subsets: BTreeMap<u32, BTreeSet<u32>>,
}

impl SetCoverPayload {
    pub fn coverable(&self) -> bool {
        let union: BTreeSet<u32> = self.subsets.values().flatten().copied().collect();
        self.universe.is_subset(&union)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetCoverParams {
    pub universe: (usize, usize),
    pub subsets: (usize, usize),
    pub subset_size_factor: f64,
}

pub fn params(difficulty: Difficulty) -> SetCoverParams {
    let (universe, subsets) = match difficulty {
        Difficulty::Easy => ((10, 20), (5, 10)),
        Difficulty::Medium => ((20, 25), (10, 15)),
        Difficulty::Hard => ((25, 30), (15, 25)),
        Difficulty::Benchmark => ((30, 40), (20, 30)),
    };
    SetCoverParams {
        universe,
        subsets,
        subset_size_factor: 0.4,
    }
}

/// Plants a cover made of disjoint blocks of about `factor * |U|` elements,
/// then fills the family with random subsets of about the same size.
pub fn generate(p: &SetCoverParams, rng: &mut StreamRng) -> (SetCoverPayload, Vec<u32>) {
    let u = rng.range_usize(p.universe.0, p.universe.1);
    let size = ((p.subset_size_factor * u as f64).round() as usize).max(1);
    let blocks = u.div_ceil(size);
    let m = rng.range_usize(p.subsets.0.max(blocks), p.subsets.1.max(blocks));

    let mut elements: Vec<u32> = (0..u as u32).collect();
    rng.shuffle(&mut elements);
    let mut family: Vec<BTreeSet<u32>> = Vec::with_capacity(m);
    // near-equal chunks so that no block is tiny
    let base = u / blocks;
    let extra = u % blocks;
    let mut at = 0;
    for b in 0..blocks {
        let len = base + usize::from(b < extra);
        family.push(elements[at..at + len].iter().copied().collect());
        at += len;
    }
    while family.len() < m {
        let len = rng.range_usize(size.saturating_sub(1).max(1), (size + 1).min(u));
        let picked = rng.sample_distinct(u, len);
        family.push(picked.into_iter().map(|e| e as u32).collect());
    }
    // hide the planted blocks among the random subsets
    let mut order: Vec<usize> = (0..m).collect();
    rng.shuffle(&mut order);
    let mut subsets = BTreeMap::new();
    let mut planted = Vec::with_capacity(blocks);
    for (id, &slot) in order.iter().enumerate() {
        if slot < blocks {
            planted.push(id as u32);
        }
        subsets.insert(id as u32, family[slot].clone());
    }
    planted.sort_unstable();
    (
        SetCoverPayload {
            universe: (0..u as u32).collect(),
            subsets,
        },
        planted,
    )
}

pub fn verify(payload: &SetCoverPayload, ids: &[u32]) -> VerifyResult {
    let mut c = Checker::new();
    if check_ids(&mut c, ids, payload.subsets.len(), "subset") {
        let covered: BTreeSet<u32> = ids.iter().flat_map(|i| &payload.subsets[i]).copied().collect();
        for e in payload.universe.difference(&covered) {
            c.fail("uncovered_element", format!("element {e} uncovered"));
        }
    }
    c.finish(|| ids.len() as u64)
}

/// `Impossible` is only correct when the whole family fails to cover `U`.
pub fn verify_impossible(payload: &SetCoverPayload) -> VerifyResult {
    let mut c = Checker::new();
    if payload.coverable() {
        c.fail("cover_exists", "the union of all subsets covers the universe");
    }
    c.finish(|| 0)
}

/// Greedy cover: repeatedly take the subset covering the most uncovered
/// elements, lowest id on ties.
pub fn solve(payload: &SetCoverPayload) -> Vec<u32> {
    let mut uncovered = payload.universe.clone();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, u32)> = None;
        for (&id, set) in &payload.subsets {
            let gain = set.intersection(&uncovered).count();
            if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, id));
            }
        }
        let Some((_, id)) = best else { break };
        for e in &payload.subsets[&id] {
            uncovered.remove(e);
        }
        chosen.push(id);
    }
    chosen.sort_unstable();
    chosen
}
