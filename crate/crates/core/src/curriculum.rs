//! Tier apportionment, curriculum replay plans, corpus emission and
//! difficulty calibration.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::{self, TaskParams};
use crate::error::{EngineError, Result};
use crate::instance::{Instance, GENERATOR_VERSION};
use crate::io;
use crate::par;
use crate::prompt::{PromptView, TEMPLATE_VERSION};
use crate::reward;
use crate::solution::Solution;
use crate::task::{Difficulty, TaskId};

pub const DEFAULT_STAGES: usize = 3;
pub const DEFAULT_PER_STAGE: usize = 5000;
pub const DEFAULT_PROPORTIONS: (u32, u32, u32) = (5, 4, 1);

/// Target success band for a training tier.
pub fn target_band(tier: Difficulty) -> Option<(f64, f64)> {
    match tier {
        Difficulty::Easy => Some((0.70, 0.90)),
        Difficulty::Medium => Some((0.40, 0.70)),
        Difficulty::Hard => Some((0.10, 0.40)),
        Difficulty::Benchmark => None,
    }
}

/// Splits `total` by `weights` using largest remainders; ties go to the
/// earlier weight.
pub fn apportion(total: usize, weights: &[u32]) -> Vec<usize> {
    let sum: u128 = weights.iter().map(|&w| u128::from(w)).sum();
    if sum == 0 {
        return vec![0; weights.len()];
    }
    let t = total as u128;
    let mut counts: Vec<usize> = weights.iter().map(|&w| (t * u128::from(w) / sum) as usize).collect();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    // Remainders compared as exact numerators over the common denominator.
    order.sort_by_key(|&i| std::cmp::Reverse(t * u128::from(weights[i]) % sum));
    let missing = total - counts.iter().sum::<usize>();
    for &i in order.iter().take(missing) {
        counts[i] += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagePlan {
    /// Tiers in ascending order with their instance counts.
    pub tiers: Vec<(Difficulty, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurriculumPlan {
    pub stages: Vec<StagePlan>,
    pub proportions: (u32, u32, u32),
    pub per_stage_total: usize,
    pub tasks: Vec<TaskId>,
    pub base_seed: u64,
}

/// One planned instance, in emission order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub stage: usize,
    pub tier: Difficulty,
    pub task: TaskId,
    pub seed: u64,
}

pub fn plan_curriculum(
    tasks: &[TaskId],
    stages: usize,
    per_stage_total: usize,
    proportions: (u32, u32, u32),
    base_seed: u64,
) -> Result<CurriculumPlan> {
    if tasks.is_empty() {
        return Err(EngineError::InvalidPlan("task set is empty".into()));
    }
    if stages == 0 {
        return Err(EngineError::InvalidPlan("at least one stage is required".into()));
    }
    let (e, m, h) = proportions;
    if e == 0 || m == 0 || h == 0 {
        return Err(EngineError::InvalidPlan(format!("proportions must be positive, got {e}:{m}:{h}")));
    }
    let counts = apportion(per_stage_total, &[e, m, h]);
    let stage = StagePlan {
        tiers: Difficulty::TRAINING.iter().copied().zip(counts).collect(),
    };
    Ok(CurriculumPlan {
        stages: vec![stage; stages],
        proportions,
        per_stage_total,
        tasks: tasks.to_vec(),
        base_seed,
    })
}

impl CurriculumPlan {
    pub fn len(&self) -> usize {
        self.stages.iter().flat_map(|s| &s.tiers).map(|&(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Stage by stage, tier by tier, tasks round-robin within a tier; the
    /// seed is `base_seed` plus the global emission index.
    pub fn entries(&self) -> Vec<PlanEntry> {
        let mut out = Vec::with_capacity(self.len());
        for (stage, plan) in self.stages.iter().enumerate() {
            for &(tier, count) in &plan.tiers {
                for j in 0..count {
                    let index = out.len() as u64;
                    out.push(PlanEntry {
                        stage,
                        tier,
                        task: self.tasks[j % self.tasks.len()],
                        seed: self.base_seed.wrapping_add(index),
                    });
                }
            }
        }
        out
    }
}

/// Generates instances for `slots` in order, replacing any instance whose id
/// was already produced. Replacements draw seeds past `reseed_from`, in
/// order, so the result stays deterministic.
pub(crate) fn generate_unique(
    slots: &[(TaskId, Difficulty, u64)],
    reseed_from: u64,
) -> Vec<Instance> {
    let mut instances = par::map(slots, |&(task, d, seed)| engine::generate(task, d, seed));
    let mut seen = HashSet::with_capacity(instances.len());
    let mut next = reseed_from;
    for inst in instances.iter_mut() {
        while !seen.insert(inst.instance_id.clone()) {
            *inst = engine::generate(inst.task, inst.difficulty, next);
            next = next.wrapping_add(1);
        }
    }
    instances
}

pub fn generate_plan(plan: &CurriculumPlan) -> Vec<(PlanEntry, Instance)> {
    let entries = plan.entries();
    let slots: Vec<_> = entries.iter().map(|e| (e.task, e.tier, e.seed)).collect();
    let reseed_from = plan.base_seed.wrapping_add(entries.len() as u64);
    let instances = generate_unique(&slots, reseed_from);
    entries
        .into_iter()
        .zip(instances)
        .map(|(mut e, inst)| {
            e.seed = inst.seed;
            (e, inst)
        })
        .collect()
}

/// Training record: what a trainer feeds the policy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub instance_id: String,
    pub prompt: String,
    pub task: TaskId,
    pub tier: Difficulty,
    pub stage: usize,
}

/// Sidecar record holding what the prompt withholds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerRecord {
    pub instance_id: String,
    pub planted: Solution,
    pub heuristic_objective: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub instance_id: String,
    pub task: TaskId,
    pub tier: Difficulty,
    pub stage: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub generator_version: String,
    pub template_version: String,
    pub plan: CurriculumPlan,
    pub entries: Vec<ManifestEntry>,
    pub corpus_digest: String,
    pub answers_digest: String,
    pub instances_digest: String,
}

pub const CORPUS_FILE: &str = "corpus.jsonl";
pub const ANSWERS_FILE: &str = "answers.jsonl";
pub const INSTANCES_FILE: &str = "instances.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes the corpus, the answer sidecar, the full instances and the
/// manifest into `dir`, in plan order.
pub fn emit_corpus(plan: &CurriculumPlan, dir: &Path) -> Result<CorpusManifest> {
    let generated = generate_plan(plan);
    let records: Vec<CorpusRecord> = par::map(&generated, |(e, inst)| CorpusRecord {
        instance_id: inst.instance_id.clone(),
        prompt: PromptView::of(inst).prompt,
        task: e.task,
        tier: e.tier,
        stage: e.stage,
    });
    let answers: Vec<AnswerRecord> = generated
        .iter()
        .map(|(_, inst)| AnswerRecord {
            instance_id: inst.instance_id.clone(),
            planted: inst.planted.clone(),
            heuristic_objective: inst.heuristic_objective,
        })
        .collect();
    let instances: Vec<&Instance> = generated.iter().map(|(_, inst)| inst).collect();

    let corpus_bytes = io::to_jsonl(&records);
    let answers_bytes = io::to_jsonl(&answers);
    let instances_bytes = io::to_jsonl(&instances);
    let manifest = CorpusManifest {
        generator_version: GENERATOR_VERSION.to_string(),
        template_version: TEMPLATE_VERSION.to_string(),
        plan: plan.clone(),
        entries: generated
            .iter()
            .map(|(e, inst)| ManifestEntry {
                instance_id: inst.instance_id.clone(),
                task: e.task,
                tier: e.tier,
                stage: e.stage,
                seed: e.seed,
            })
            .collect(),
        corpus_digest: sha256_hex(&corpus_bytes),
        answers_digest: sha256_hex(&answers_bytes),
        instances_digest: sha256_hex(&instances_bytes),
    };
    io::write_atomic(&dir.join(CORPUS_FILE), &corpus_bytes)?;
    io::write_atomic(&dir.join(ANSWERS_FILE), &answers_bytes)?;
    io::write_atomic(&dir.join(INSTANCES_FILE), &instances_bytes)?;
    let mut manifest_bytes = serde_json::to_vec_pretty(&manifest)?;
    manifest_bytes.push(b'\n');
    io::write_atomic(&dir.join(MANIFEST_FILE), &manifest_bytes)?;
    Ok(manifest)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandStatus {
    InBand,
    OutOfBand,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub params: TaskParams,
    pub samples: usize,
    pub successes: usize,
    pub success_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub task: TaskId,
    pub tier: Difficulty,
    pub band: (f64, f64),
    pub chosen: usize,
    pub status: BandStatus,
    pub measurements: Vec<Measurement>,
}

impl CalibrationReport {
    pub fn chosen_params(&self) -> &TaskParams {
        &self.measurements[self.chosen].params
    }
}

/// Measures the success rate of `solver` on `sample_size` instances per
/// candidate row and picks the row inside the tier's band closest to the
/// band midpoint. With no row in band, the row nearest the band is returned
/// flagged out-of-band.
pub fn calibrate(
    tier: Difficulty,
    candidates: &[TaskParams],
    solver: &mut dyn FnMut(&PromptView) -> String,
    sample_size: usize,
    base_seed: u64,
) -> Result<CalibrationReport> {
    let Some(first) = candidates.first() else {
        return Err(EngineError::InvalidCalibration("no candidate parameter rows".into()));
    };
    let task = first.task();
    if candidates.iter().any(|c| c.task() != task) {
        return Err(EngineError::InvalidCalibration("candidate rows mix tasks".into()));
    }
    let band = target_band(tier)
        .ok_or_else(|| EngineError::InvalidCalibration(format!("tier {} has no target band", tier.name())))?;
    if sample_size == 0 {
        return Err(EngineError::InvalidCalibration("sample size must be positive".into()));
    }
    let mut measurements = Vec::with_capacity(candidates.len());
    for params in candidates {
        let mut successes = 0;
        for k in 0..sample_size as u64 {
            let inst = engine::generate_with(params, tier, base_seed.wrapping_add(k));
            let completion = solver(&PromptView::of(&inst));
            if reward::score(&inst, &completion).optimality.is_some() {
                successes += 1;
            }
        }
        measurements.push(Measurement {
            params: params.clone(),
            samples: sample_size,
            successes,
            success_rate: successes as f64 / sample_size as f64,
        });
    }
    let (lo, hi) = band;
    let mid = (lo + hi) / 2.0;
    let in_band = |sr: f64| (lo..=hi).contains(&sr);
    let distance = |sr: f64| if sr < lo { lo - sr } else if sr > hi { sr - hi } else { 0.0 };
    let best_by = |key: &dyn Fn(f64) -> f64, filter: &dyn Fn(f64) -> bool| {
        measurements
            .iter()
            .enumerate()
            .filter(|(_, m)| filter(m.success_rate))
            .min_by(|(_, a), (_, b)| key(a.success_rate).total_cmp(&key(b.success_rate)))
            .map(|(i, _)| i)
    };
    let (chosen, status) = match best_by(&|sr| (sr - mid).abs(), &in_band) {
        Some(i) => (i, BandStatus::InBand),
        None => (best_by(&distance, &|_| true).unwrap_or(0), BandStatus::OutOfBand),
    };
    Ok(CalibrationReport {
        task,
        tier,
        band,
        chosen,
        status,
        measurements,
    })
}
