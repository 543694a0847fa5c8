use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};

use npgen::answer;
use npgen::bench::{self, CompletionRecord};
use npgen::curriculum::{self, sha256_hex, DEFAULT_PER_STAGE, DEFAULT_PROPORTIONS, DEFAULT_STAGES};
use npgen::io;
use npgen::reward::{self, RewardBreakdown};
use npgen::{engine, Difficulty, EngineError, Instance, Solution, TaskId, Violation};

use crate::{CliError, CliResult};

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate instances for one task and tier.
    Generate(GenerateArgs),
    /// Check solutions against their instances.
    Verify(VerifyArgs),
    /// Run the baseline solver on every instance.
    Solve(SolveArgs),
    /// Score completions with the training reward.
    Score(ScoreArgs),
    /// Evaluate completions against a benchmark corpus.
    Bench(BenchArgs),
    /// Build the fixed benchmark corpus.
    BuildBench(BuildBenchArgs),
    /// Emit a curriculum training corpus from a plan file.
    Emit(EmitArgs),
    /// Serve POST /score and GET /health.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub task: TaskId,
    #[arg(long)]
    pub difficulty: Difficulty,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, env = "FORGE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instances: PathBuf,
    /// JSONL of `{instance_id, solution}` or `{instance_id, answer}` records.
    #[arg(long)]
    pub solutions: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instances: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Write `{instance_id, completion}` records instead of solutions.
    #[arg(long)]
    pub completions: bool,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long)]
    pub instances: PathBuf,
    #[arg(long)]
    pub completions: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub completions: PathBuf,
    /// Structured report destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "model")]
    pub label: String,
}

#[derive(Debug, Args)]
pub struct BuildBenchArgs {
    #[arg(long, env = "FORGE_SEED", default_value_t = bench::DEFAULT_BENCH_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EmitArgs {
    #[arg(long)]
    pub plan_config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Base seed when the plan file does not set one.
    #[arg(long, env = "FORGE_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Instances to preload for `instance_id` lookups.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

pub fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Generate(a) => generate(&a),
        Command::Verify(a) => verify(&a),
        Command::Solve(a) => solve(&a),
        Command::Score(a) => score(&a),
        Command::Bench(a) => run_bench(&a),
        Command::BuildBench(a) => build_bench(&a),
        Command::Emit(a) => emit(&a),
        Command::Serve(a) => crate::service::serve_blocking(&a.host, a.port, a.corpus.as_deref()),
    }
}

fn write_records<T: Serialize>(path: &Path, records: &[T]) -> CliResult<String> {
    let bytes = io::to_jsonl(records);
    io::write_atomic(path, &bytes)?;
    Ok(sha256_hex(&bytes))
}

pub fn load_instances(path: &Path) -> CliResult<Vec<Instance>> {
    let instances: Vec<Instance> = io::read_jsonl(path)?;
    for (i, inst) in instances.iter().enumerate() {
        inst.check_integrity().map_err(|e| EngineError::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
    }
    Ok(instances)
}

fn index(instances: &[Instance]) -> HashMap<&str, &Instance> {
    instances.iter().map(|i| (i.instance_id.as_str(), i)).collect()
}

pub fn generate(a: &GenerateArgs) -> CliResult<String> {
    let end = a
        .seed
        .checked_add(a.count)
        .ok_or_else(|| CliError::usage("seed + count overflows"))?;
    let instances: Vec<Instance> = (a.seed..end).map(|s| engine::generate(a.task, a.difficulty, s)).collect();
    let digest = write_records(&a.out, &instances)?;
    Ok(format!(
        "wrote {} {} {} instances to {}\nsha256 {digest}",
        instances.len(),
        a.task,
        a.difficulty.name(),
        a.out.display()
    ))
}

#[derive(Debug, Deserialize)]
struct SolutionInput {
    instance_id: String,
    #[serde(default)]
    solution: Option<Solution>,
    #[serde(default)]
    answer: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub instance_id: String,
    pub feasible: bool,
    pub violations: Vec<Violation>,
    pub objective: Option<u64>,
}

pub fn verify(a: &VerifyArgs) -> CliResult<String> {
    let instances = load_instances(&a.instances)?;
    let by_id = index(&instances);
    let inputs: Vec<SolutionInput> = io::read_jsonl(&a.solutions)?;
    let mut records = Vec::new();
    let mut unknown = 0;
    for (line, input) in inputs.iter().enumerate() {
        let Some(inst) = by_id.get(input.instance_id.as_str()) else {
            unknown += 1;
            continue;
        };
        let solution = match (&input.solution, &input.answer) {
            (Some(s), _) => Some(s.clone()),
            (None, Some(text)) => answer::parse_answer(inst.task, text),
            (None, None) => {
                return Err(CliError::data(format!(
                    "line {}: record needs `solution` or `answer`",
                    line + 1
                )))
            }
        };
        let result = solution.map(|s| engine::verify(inst, &s));
        let record = match result {
            Some(Ok(r)) => VerifyRecord {
                instance_id: input.instance_id.clone(),
                feasible: r.feasible,
                violations: r.violations,
                objective: r.objective,
            },
            Some(Err(e)) => VerifyRecord {
                instance_id: input.instance_id.clone(),
                feasible: false,
                violations: vec![Violation {
                    code: "wrong_shape".into(),
                    detail: e.to_string(),
                }],
                objective: None,
            },
            None => VerifyRecord {
                instance_id: input.instance_id.clone(),
                feasible: false,
                violations: vec![Violation {
                    code: "unparseable".into(),
                    detail: "answer does not match the task grammar".into(),
                }],
                objective: None,
            },
        };
        records.push(record);
    }
    if let Some(out) = &a.out {
        write_records(out, &records)?;
    }
    let feasible = records.iter().filter(|r| r.feasible).count();
    let mut summary = format!("{feasible}/{} feasible", records.len());
    for r in records.iter().filter(|r| !r.feasible).take(10) {
        let first = r.violations.first().map(|v| v.detail.as_str()).unwrap_or("");
        let _ = write!(summary, "\n  {}: {first}", r.instance_id);
    }
    if unknown > 0 {
        let _ = write!(summary, "\nwarning: {unknown} record(s) matched no instance");
    }
    Ok(summary)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub instance_id: String,
    pub solution: Solution,
    pub objective: u64,
}

pub fn solve(a: &SolveArgs) -> CliResult<String> {
    let instances = load_instances(&a.instances)?;
    let solved = instances
        .iter()
        .map(|inst| engine::heuristic_solve(inst).map(|(s, o)| (inst.instance_id.clone(), s, o)))
        .collect::<Result<Vec<_>, _>>()?;
    let digest = if a.completions {
        let records: Vec<CompletionRecord> = solved
            .into_iter()
            .map(|(instance_id, s, _)| CompletionRecord {
                instance_id,
                completion: reward::wrap_completion(&answer::render(&s)),
            })
            .collect();
        write_records(&a.out, &records)?
    } else {
        let records: Vec<SolutionRecord> = solved
            .into_iter()
            .map(|(instance_id, solution, objective)| SolutionRecord {
                instance_id,
                solution,
                objective,
            })
            .collect();
        write_records(&a.out, &records)?
    };
    Ok(format!("solved {} instances into {}\nsha256 {digest}", instances.len(), a.out.display()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScoredRecord {
    pub instance_id: String,
    #[serde(flatten)]
    pub breakdown: RewardBreakdown,
}

pub fn score(a: &ScoreArgs) -> CliResult<String> {
    let instances = load_instances(&a.instances)?;
    let by_id = index(&instances);
    let completions: Vec<CompletionRecord> = io::read_jsonl(&a.completions)?;
    let mut records = Vec::new();
    let mut unknown = 0;
    for c in &completions {
        match by_id.get(c.instance_id.as_str()) {
            Some(inst) => records.push(ScoredRecord {
                instance_id: c.instance_id.clone(),
                breakdown: reward::score(inst, &c.completion),
            }),
            None => unknown += 1,
        }
    }
    write_records(&a.out, &records)?;
    let mean = if records.is_empty() {
        0.0
    } else {
        records.iter().map(|r| r.breakdown.total.to_f64()).sum::<f64>() / records.len() as f64
    };
    let feasible = records.iter().filter(|r| r.breakdown.optimality.is_some()).count();
    let mut summary = format!(
        "scored {} completions: {feasible} feasible, mean reward {mean:.4}",
        records.len()
    );
    if unknown > 0 {
        let _ = write!(summary, "\nwarning: {unknown} completion(s) matched no instance");
    }
    Ok(summary)
}

pub fn run_bench(a: &BenchArgs) -> CliResult<String> {
    let corpus = load_instances(&a.corpus)?;
    let completions: BTreeMap<String, String> = bench::read_completions(&a.completions)?;
    let report = bench::evaluate(&corpus, &completions);
    if let Some(out) = &a.out {
        let mut bytes = serde_json::to_vec_pretty(&report).map_err(EngineError::from)?;
        bytes.push(b'\n');
        io::write_atomic(out, &bytes)?;
    }
    Ok(bench::render_table(&report, &a.label))
}

pub fn build_bench(a: &BuildBenchArgs) -> CliResult<String> {
    let b = bench::build_benchmark(a.seed);
    let digest = write_records(&a.out, &b.instances)?;
    Ok(format!(
        "wrote {} benchmark instances to {}\nsha256 {digest}",
        b.instances.len(),
        a.out.display()
    ))
}

/// Plan file contents; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanConfig {
    pub stages: Option<usize>,
    pub per_stage_total: Option<usize>,
    pub proportions: Option<(u32, u32, u32)>,
    pub tasks: Option<Vec<String>>,
    pub base_seed: Option<u64>,
}

pub fn emit(a: &EmitArgs) -> CliResult<String> {
    let text = fs::read_to_string(&a.plan_config).map_err(|e| EngineError::io(&a.plan_config, e))?;
    let config: PlanConfig =
        toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", a.plan_config.display())))?;
    let tasks = match &config.tasks {
        Some(names) => names.iter().map(|n| n.parse()).collect::<Result<Vec<TaskId>, _>>()?,
        None => TaskId::ALL.to_vec(),
    };
    let plan = curriculum::plan_curriculum(
        &tasks,
        config.stages.unwrap_or(DEFAULT_STAGES),
        config.per_stage_total.unwrap_or(DEFAULT_PER_STAGE),
        config.proportions.unwrap_or(DEFAULT_PROPORTIONS),
        config.base_seed.unwrap_or(a.seed),
    )?;
    let manifest = curriculum::emit_corpus(&plan, &a.out)?;
    let mut summary = format!("emitted {} records to {}", manifest.entries.len(), a.out.display());
    for (stage, s) in plan.stages.iter().enumerate() {
        let tiers: Vec<String> = s.tiers.iter().map(|(d, c)| format!("{} {c}", d.name())).collect();
        let _ = write!(summary, "\n  stage {stage}: {}", tiers.join(", "));
    }
    let _ = write!(summary, "\ncorpus sha256 {}", manifest.corpus_digest);
    Ok(summary)
}
