//! Uniform generate / verify / solve dispatch over the ten tasks.

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::instance::{Instance, GENERATOR_VERSION};
use crate::rng::StreamRng;
use crate::solution::{Solution, VerifyResult};
use crate::task::{Difficulty, TaskId};
use crate::tasks::graph::{clique, coloring, independent_set, GraphPayload};
use crate::tasks::partition::{self, BisectionPayload};
use crate::tasks::planning::hamiltonian::{self, HamiltonianPayload};
use crate::tasks::planning::tsp::{self, TspPayload};
use crate::tasks::scheduling::{self, MspPayload};
use crate::tasks::selection::knapsack::{self, KnapsackPayload};
use crate::tasks::selection::set_cover::{self, SetCoverPayload};
use crate::tasks::selection::subset_sum::{self, SubsetSumPayload};

/// Problem data of one instance. Serialized without a tag: the owning
/// instance record names the task.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Tsp(TspPayload),
    HamiltonianCycle(HamiltonianPayload),
    MaxClique(GraphPayload),
    MaxIndependentSet(GraphPayload),
    GraphColoring(GraphPayload),
    BalancedBisection(BisectionPayload),
    SetCover(SetCoverPayload),
    SubsetSum(SubsetSumPayload),
    Knapsack(KnapsackPayload),
    MeetingScheduling(MspPayload),
}

impl Payload {
    pub fn task(&self) -> TaskId {
        match self {
            Payload::Tsp(_) => TaskId::Tsp,
            Payload::HamiltonianCycle(_) => TaskId::HamiltonianCycle,
            Payload::MaxClique(_) => TaskId::MaxClique,
            Payload::MaxIndependentSet(_) => TaskId::MaxIndependentSet,
            Payload::GraphColoring(_) => TaskId::GraphColoring,
            Payload::BalancedBisection(_) => TaskId::BalancedBisection,
            Payload::SetCover(_) => TaskId::SetCover,
            Payload::SubsetSum(_) => TaskId::SubsetSum,
            Payload::Knapsack(_) => TaskId::Knapsack,
            Payload::MeetingScheduling(_) => TaskId::MeetingScheduling,
        }
    }

    pub fn from_value(task: TaskId, value: serde_json::Value) -> Result<Self> {
        use serde_json::from_value as v;
        Ok(match task {
            TaskId::Tsp => Payload::Tsp(v(value)?),
            TaskId::HamiltonianCycle => Payload::HamiltonianCycle(v(value)?),
            TaskId::MaxClique => Payload::MaxClique(v(value)?),
            TaskId::MaxIndependentSet => Payload::MaxIndependentSet(v(value)?),
            TaskId::GraphColoring => Payload::GraphColoring(v(value)?),
            TaskId::BalancedBisection => Payload::BalancedBisection(v(value)?),
            TaskId::SetCover => Payload::SetCover(v(value)?),
            TaskId::SubsetSum => Payload::SubsetSum(v(value)?),
            TaskId::Knapsack => Payload::Knapsack(v(value)?),
            TaskId::MeetingScheduling => Payload::MeetingScheduling(v(value)?),
        })
    }
}

/// One row of a difficulty table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskParams {
    Tsp(tsp::TspParams),
    HamiltonianCycle(hamiltonian::HamiltonianParams),
    MaxClique(clique::CliqueParams),
    MaxIndependentSet(independent_set::IndependentSetParams),
    GraphColoring(coloring::ColoringParams),
    BalancedBisection(partition::BisectionParams),
    SetCover(set_cover::SetCoverParams),
    SubsetSum(subset_sum::SubsetSumParams),
    Knapsack(knapsack::KnapsackParams),
    MeetingScheduling(scheduling::MspParams),
}

impl TaskParams {
    /// The default row for `(task, difficulty)`.
    pub fn tier(task: TaskId, d: Difficulty) -> Self {
        match task {
            TaskId::Tsp => TaskParams::Tsp(tsp::params(d)),
            TaskId::HamiltonianCycle => TaskParams::HamiltonianCycle(hamiltonian::params(d)),
            TaskId::MaxClique => TaskParams::MaxClique(clique::params(d)),
            TaskId::MaxIndependentSet => TaskParams::MaxIndependentSet(independent_set::params(d)),
            TaskId::GraphColoring => TaskParams::GraphColoring(coloring::params(d)),
            TaskId::BalancedBisection => TaskParams::BalancedBisection(partition::params(d)),
            TaskId::SetCover => TaskParams::SetCover(set_cover::params(d)),
            TaskId::SubsetSum => TaskParams::SubsetSum(subset_sum::params(d)),
            TaskId::Knapsack => TaskParams::Knapsack(knapsack::params(d)),
            TaskId::MeetingScheduling => TaskParams::MeetingScheduling(scheduling::params(d)),
        }
    }

    pub fn task(&self) -> TaskId {
        match self {
            TaskParams::Tsp(_) => TaskId::Tsp,
            TaskParams::HamiltonianCycle(_) => TaskId::HamiltonianCycle,
            TaskParams::MaxClique(_) => TaskId::MaxClique,
            TaskParams::MaxIndependentSet(_) => TaskId::MaxIndependentSet,
            TaskParams::GraphColoring(_) => TaskId::GraphColoring,
            TaskParams::BalancedBisection(_) => TaskId::BalancedBisection,
            TaskParams::SetCover(_) => TaskId::SetCover,
            TaskParams::SubsetSum(_) => TaskId::SubsetSum,
            TaskParams::Knapsack(_) => TaskId::Knapsack,
            TaskParams::MeetingScheduling(_) => TaskId::MeetingScheduling,
        }
    }

    /// Runs the task generator; returns the payload and its planted solution.
    pub fn generate(&self, rng: &mut StreamRng) -> (Payload, Solution) {
        match self {
            TaskParams::Tsp(p) => {
                let (payload, route) = tsp::generate(p, rng);
                (Payload::Tsp(payload), Solution::Route(route))
            }
            TaskParams::HamiltonianCycle(p) => {
                let (payload, route) = hamiltonian::generate(p, rng);
                (Payload::HamiltonianCycle(payload), Solution::Route(route))
            }
            TaskParams::MaxClique(p) => {
                let (payload, ids) = clique::generate(p, rng);
                (Payload::MaxClique(payload), Solution::IndexList(ids))
            }
            TaskParams::MaxIndependentSet(p) => {
                let (payload, ids) = independent_set::generate(p, rng);
                (Payload::MaxIndependentSet(payload), Solution::IndexList(ids))
            }
            TaskParams::GraphColoring(p) => {
                let (payload, colors) = coloring::generate(p, rng);
                (Payload::GraphColoring(payload), Solution::ColorVector(colors))
            }
            TaskParams::BalancedBisection(p) => {
                let (payload, (a, b)) = partition::generate(p, rng);
                (Payload::BalancedBisection(payload), Solution::PartitionPair(a, b))
            }
            TaskParams::SetCover(p) => {
                let (payload, ids) = set_cover::generate(p, rng);
                (Payload::SetCover(payload), Solution::IndexList(ids))
            }
            TaskParams::SubsetSum(p) => {
                let (payload, ids) = subset_sum::generate(p, rng);
                (Payload::SubsetSum(payload), Solution::IndexList(ids))
            }
            TaskParams::Knapsack(p) => {
                let (payload, ids) = knapsack::generate(p, rng);
                (Payload::Knapsack(payload), Solution::IndexList(ids))
            }
            TaskParams::MeetingScheduling(p) => {
                let (payload, entries) = scheduling::generate(p, rng);
                (Payload::MeetingScheduling(payload), Solution::Schedule(entries))
            }
        }
    }
}

/// Generates the instance for `(task, difficulty, seed)` from the default
/// difficulty table.
pub fn generate(task: TaskId, difficulty: Difficulty, seed: u64) -> Instance {
    generate_with(&TaskParams::tier(task, difficulty), difficulty, seed)
}

/// Generates from an explicit parameter row, tagged with `difficulty`.
pub fn generate_with(params: &TaskParams, difficulty: Difficulty, seed: u64) -> Instance {
    let task = params.task();
    let root = StreamRng::for_instance(task, difficulty, seed);
    let (payload, planted) = params.generate(&mut root.split("generate"));
    let heuristic = solve_payload(&payload, &planted, &mut root.split("solve"))
        .expect("generator output matches its own task");
    let heuristic_objective = verify_payload(&payload, &heuristic)
        .ok()
        .and_then(|r| r.objective)
        .expect("baseline solutions are feasible");
    Instance::new(task, difficulty, seed, payload, planted, heuristic_objective, GENERATOR_VERSION)
}

fn mismatch(task: TaskId) -> EngineError {
    let expected = match task {
        TaskId::Tsp | TaskId::HamiltonianCycle => "a route",
        TaskId::GraphColoring => "a color vector",
        TaskId::BalancedBisection => "a partition pair",
        TaskId::MeetingScheduling => "a schedule",
        TaskId::SetCover => "an index list or Impossible",
        _ => "an index list",
    };
    EngineError::WrongAnswerShape { task, expected }
}

/// Checks `candidate` against the payload's constraints. Pure.
pub fn verify_payload(payload: &Payload, candidate: &Solution) -> Result<VerifyResult> {
    use Solution as S;
    Ok(match (payload, candidate) {
        (Payload::Tsp(p), S::Route(r)) => tsp::verify(p, r),
        (Payload::HamiltonianCycle(p), S::Route(r)) => hamiltonian::verify(p, r),
        (Payload::MaxClique(p), S::IndexList(ids)) => clique::verify(p, ids),
        (Payload::MaxIndependentSet(p), S::IndexList(ids)) => independent_set::verify(p, ids),
        (Payload::GraphColoring(p), S::ColorVector(c)) => coloring::verify(p, c),
        (Payload::BalancedBisection(p), S::PartitionPair(a, b)) => partition::verify(p, a, b),
        (Payload::SetCover(p), S::IndexList(ids)) => set_cover::verify(p, ids),
        (Payload::SetCover(p), S::Impossible) => set_cover::verify_impossible(p),
        (Payload::SubsetSum(p), S::IndexList(ids)) => subset_sum::verify(p, ids),
        (Payload::Knapsack(p), S::IndexList(ids)) => knapsack::verify(p, ids),
        (Payload::MeetingScheduling(p), S::Schedule(e)) => scheduling::verify(p, e),
        (p, _) => return Err(mismatch(p.task())),
    })
}

pub fn verify(instance: &Instance, candidate: &Solution) -> Result<VerifyResult> {
    verify_payload(&instance.payload, candidate)
}

/// Runs the task's baseline solver. `planted` seeds the solvers that start
/// from, or fall back to, the planted solution.
pub fn solve_payload(payload: &Payload, planted: &Solution, rng: &mut StreamRng) -> Result<Solution> {
    use Solution as S;
    Ok(match (payload, planted) {
        (Payload::Tsp(p), _) => S::Route(tsp::solve(p, rng)),
        (Payload::HamiltonianCycle(_), S::Route(r)) => S::Route(hamiltonian::solve(r)),
        (Payload::MaxClique(p), S::IndexList(ids)) => S::IndexList(clique::solve(p, ids)),
        (Payload::MaxIndependentSet(p), S::IndexList(ids)) => S::IndexList(independent_set::solve(p, ids)),
        (Payload::GraphColoring(p), S::ColorVector(c)) => S::ColorVector(coloring::solve(p, c)),
        (Payload::BalancedBisection(p), S::PartitionPair(a, b)) => {
            let (a, b) = partition::solve(p, (a, b), rng);
            S::PartitionPair(a, b)
        }
        (Payload::SetCover(p), _) => S::IndexList(set_cover::solve(p)),
        (Payload::SubsetSum(p), S::IndexList(ids)) => {
            S::IndexList(subset_sum::solve(p).unwrap_or_else(|| ids.clone()))
        }
        (Payload::Knapsack(p), _) => S::IndexList(knapsack::solve(p)),
        (Payload::MeetingScheduling(p), S::Schedule(e)) => S::Schedule(scheduling::solve(p, e)),
        (p, _) => return Err(mismatch(p.task())),
    })
}

/// Recomputes the stored baseline; deterministic per instance.
pub fn heuristic_solve(instance: &Instance) -> Result<(Solution, u64)> {
    let mut rng = StreamRng::for_instance(instance.task, instance.difficulty, instance.seed).split("solve");
    let solution = solve_payload(&instance.payload, &instance.planted, &mut rng)?;
    let objective = verify(instance, &solution)?
        .objective
        .ok_or(EngineError::PayloadMismatch(instance.task))?;
    Ok((solution, objective))
}
