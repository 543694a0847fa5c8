//! Fixed benchmark corpus and success-rate / quality-ratio evaluation.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::answer;
use crate::curriculum::{generate_unique, sha256_hex};
use crate::engine;
use crate::instance::Instance;
use crate::io;
use crate::par;
use crate::reward::{self, QualityPath};
use crate::task::{Category, Difficulty, TaskId};

pub const PER_TASK: usize = 100;
pub const DEFAULT_BENCH_SEED: u64 = 20_250_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Benchmark {
    pub instances: Vec<Instance>,
    /// sha256 of the canonical JSONL serialization.
    pub digest: String,
}

/// 100 benchmark-tier instances per task, tasks in registry order, seeds
/// `base_seed + k` within each task.
pub fn build_benchmark(base_seed: u64) -> Benchmark {
    let slots: Vec<_> = TaskId::ALL
        .iter()
        .flat_map(|&t| (0..PER_TASK as u64).map(move |k| (t, Difficulty::Benchmark, base_seed.wrapping_add(k))))
        .collect();
    let instances = generate_unique(&slots, base_seed.wrapping_add(PER_TASK as u64));
    let digest = sha256_hex(&io::to_jsonl(&instances));
    Benchmark { instances, digest }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub sr: f64,
    pub qr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskMetric {
    pub sr: f64,
    pub qr: f64,
    pub instances: usize,
    pub feasible: usize,
    pub answered: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_task: BTreeMap<TaskId, TaskMetric>,
    pub per_category: BTreeMap<Category, Metric>,
    pub overall: Metric,
    pub n_instances: usize,
    /// Completion keys that match no corpus instance; ignored.
    pub unknown_ids: Vec<String>,
}

/// Per-instance outcome: feasibility and the unclamped quality ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceOutcome {
    pub answered: bool,
    pub feasible: bool,
    pub qr: f64,
}

pub fn evaluate_one(instance: &Instance, completion: Option<&str>) -> InstanceOutcome {
    let Some(text) = completion else {
        return InstanceOutcome { answered: false, feasible: false, qr: 0.0 };
    };
    let objective = reward::extract_lenient(instance.task, text)
        .and_then(|sol| engine::verify(instance, &sol).ok())
        .and_then(|v| v.objective);
    match objective {
        None => InstanceOutcome { answered: true, feasible: false, qr: 0.0 },
        Some(m_s) => InstanceOutcome {
            answered: true,
            feasible: true,
            qr: reward::compute_quality(instance, m_s, QualityPath::Benchmark)
                .map(|q| q.to_f64())
                .unwrap_or(0.0),
        },
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Scores completions keyed by instance id. Missing completions count as
/// infeasible; tasks absent from the corpus are left out of every average.
pub fn evaluate(corpus: &[Instance], completions: &BTreeMap<String, String>) -> EvalReport {
    let outcomes = par::map(corpus, |inst| {
        (inst.task, evaluate_one(inst, completions.get(&inst.instance_id).map(String::as_str)))
    });
    let mut per_task = BTreeMap::new();
    for task in TaskId::ALL {
        let mine: Vec<&InstanceOutcome> = outcomes.iter().filter(|(t, _)| *t == task).map(|(_, o)| o).collect();
        if mine.is_empty() {
            continue;
        }
        let feasible = mine.iter().filter(|o| o.feasible).count();
        per_task.insert(
            task,
            TaskMetric {
                sr: feasible as f64 / mine.len() as f64,
                qr: mean(mine.iter().map(|o| o.qr)),
                instances: mine.len(),
                feasible,
                answered: mine.iter().filter(|o| o.answered).count(),
            },
        );
    }
    let mut per_category = BTreeMap::new();
    for cat in Category::ALL {
        let ms: Vec<&TaskMetric> = cat.tasks().filter_map(|t| per_task.get(&t)).collect();
        if !ms.is_empty() {
            per_category.insert(
                cat,
                Metric {
                    sr: mean(ms.iter().map(|m| m.sr)),
                    qr: mean(ms.iter().map(|m| m.qr)),
                },
            );
        }
    }
    let overall = Metric {
        sr: mean(per_task.values().map(|m| m.sr)),
        qr: mean(per_task.values().map(|m| m.qr)),
    };
    let known: HashSet<&str> = corpus.iter().map(|i| i.instance_id.as_str()).collect();
    let unknown_ids = completions
        .keys()
        .filter(|k| !known.contains(k.as_str()))
        .cloned()
        .collect();
    EvalReport {
        per_task,
        per_category,
        overall,
        n_instances: corpus.len(),
        unknown_ids,
    }
}

fn title(cat: Category) -> &'static str {
    match cat {
        Category::Graph => "Graph",
        Category::Schedule => "Schedule",
        Category::Partition => "Partition",
        Category::Selection => "Selection",
        Category::Planning => "Planning",
    }
}

fn cell(m: Option<Metric>) -> String {
    match m {
        Some(m) => format!("{:>6.1} {:>6.3}", m.sr * 100.0, m.qr),
        None => format!("{:>6} {:>6}", "-", "-"),
    }
}

/// Category columns then Overall, each as SR (percent) and QR, followed by
/// the per-task breakdown.
pub fn render_table(report: &EvalReport, label: &str) -> String {
    let width = label.len().max(5);
    let mut out = String::new();
    let _ = write!(out, "{:<width$}", "");
    for cat in Category::ALL {
        let _ = write!(out, " | {:^13}", title(cat));
    }
    let _ = writeln!(out, " | {:^13}", "Overall");
    let _ = write!(out, "{:<width$}", "");
    for _ in 0..=Category::ALL.len() {
        let _ = write!(out, " | {:>6} {:>6}", "SR", "QR");
    }
    out.push('\n');
    let _ = write!(out, "{label:<width$}");
    for cat in Category::ALL {
        let _ = write!(out, " | {}", cell(report.per_category.get(&cat).copied()));
    }
    let _ = writeln!(out, " | {}", cell(Some(report.overall)));
    out.push('\n');
    let _ = writeln!(out, "{:<20} {:>6} {:>6} {:>9}", "task", "SR", "QR", "feasible");
    for (task, m) in &report.per_task {
        let _ = writeln!(
            out,
            "{:<20} {:>6.1} {:>6.3} {:>5}/{:<3}",
            task.name(),
            m.sr * 100.0,
            m.qr,
            m.feasible,
            m.instances
        );
    }
    if !report.unknown_ids.is_empty() {
        let _ = writeln!(out, "warning: {} completion(s) matched no instance", report.unknown_ids.len());
    }
    out
}

/// Minimal completions carrying each instance's baseline solution.
pub fn heuristic_completions(corpus: &[Instance]) -> crate::error::Result<BTreeMap<String, String>> {
    par::map(corpus, |inst| {
        engine::heuristic_solve(inst)
            .map(|(sol, _)| (inst.instance_id.clone(), reward::wrap_completion(&answer::render(&sol))))
    })
    .into_iter()
    .collect()
}

/// Completions carrying each instance's planted solution.
pub fn planted_completions(corpus: &[Instance]) -> BTreeMap<String, String> {
    corpus
        .iter()
        .map(|inst| (inst.instance_id.clone(), reward::wrap_completion(&answer::render(&inst.planted))))
        .collect()
}

/// One line of an external completions file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionRecord {
    pub instance_id: String,
    pub completion: String,
}

/// Reads a completions JSONL file; later lines win on repeated ids.
pub fn read_completions(path: &std::path::Path) -> crate::error::Result<BTreeMap<String, String>> {
    let records: Vec<CompletionRecord> = io::read_jsonl(path)?;
    Ok(records.into_iter().map(|r| (r.instance_id, r.completion)).collect())
}

pub fn completion_records(completions: &BTreeMap<String, String>) -> Vec<CompletionRecord> {
    completions
        .iter()
        .map(|(id, c)| CompletionRecord {
            instance_id: id.clone(),
            completion: c.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_has_category_columns_in_order() {
        let report = evaluate(&[], &BTreeMap::new());
        let table = render_table(&report, "model");
        let header = table.lines().next().unwrap();
        let pos: Vec<usize> = ["Graph", "Schedule", "Partition", "Selection", "Planning", "Overall"]
            .iter()
            .map(|h| header.find(h).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn missing_completions_are_infeasible() {
        let corpus: Vec<Instance> = (0..3).map(|s| engine::generate(TaskId::Knapsack, Difficulty::Easy, s)).collect();
        let report = evaluate(&corpus, &BTreeMap::new());
        let m = &report.per_task[&TaskId::Knapsack];
        assert_eq!((m.sr, m.qr, m.answered), (0.0, 0.0, 0));
        let mut completions = planted_completions(&corpus);
        completions.insert("nope".into(), "[1]".into());
        let report = evaluate(&corpus, &completions);
        assert_eq!(report.per_task[&TaskId::Knapsack].sr, 1.0);
        assert_eq!(report.unknown_ids, vec!["nope".to_string()]);
    }
}
