use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EngineError;

/// The ten supported optimization tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskId {
    Tsp,
    HamiltonianCycle,
    MaxClique,
    MaxIndependentSet,
    GraphColoring,
    BalancedBisection,
    SetCover,
    SubsetSum,
    Knapsack,
    MeetingScheduling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Graph,
    Schedule,
    Partition,
    Selection,
    Planning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Minimize,
    Maximize,
}

impl TaskId {
    pub const ALL: [TaskId; 10] = [
        TaskId::Tsp,
        TaskId::HamiltonianCycle,
        TaskId::MaxClique,
        TaskId::MaxIndependentSet,
        TaskId::GraphColoring,
        TaskId::BalancedBisection,
        TaskId::SetCover,
        TaskId::SubsetSum,
        TaskId::Knapsack,
        TaskId::MeetingScheduling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskId::Tsp => "tsp",
            TaskId::HamiltonianCycle => "hamiltonian_cycle",
            TaskId::MaxClique => "max_clique",
            TaskId::MaxIndependentSet => "max_independent_set",
            TaskId::GraphColoring => "graph_coloring",
            TaskId::BalancedBisection => "balanced_bisection",
            TaskId::SetCover => "set_cover",
            TaskId::SubsetSum => "subset_sum",
            TaskId::Knapsack => "knapsack",
            TaskId::MeetingScheduling => "meeting_scheduling",
        }
    }

    pub fn category(self) -> Category {
        match self {
            TaskId::Tsp | TaskId::HamiltonianCycle => Category::Planning,
            TaskId::MaxClique | TaskId::MaxIndependentSet | TaskId::GraphColoring => {
                Category::Graph
            }
            TaskId::BalancedBisection => Category::Partition,
            TaskId::SetCover | TaskId::SubsetSum | TaskId::Knapsack => Category::Selection,
            TaskId::MeetingScheduling => Category::Schedule,
        }
    }

    /// Objective direction. Bisection minimizes the cut weight.
    pub fn sense(self) -> Sense {
        match self {
            TaskId::Tsp | TaskId::GraphColoring | TaskId::SetCover | TaskId::BalancedBisection => {
                Sense::Minimize
            }
            _ => Sense::Maximize,
        }
    }
}

impl Category {
    /// Column order of the evaluation report.
    pub const ALL: [Category; 5] = [
        Category::Graph,
        Category::Schedule,
        Category::Partition,
        Category::Selection,
        Category::Planning,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Graph => "graph",
            Category::Schedule => "schedule",
            Category::Partition => "partition",
            Category::Selection => "selection",
            Category::Planning => "planning",
        }
    }

    pub fn tasks(self) -> impl Iterator<Item = TaskId> {
        TaskId::ALL.into_iter().filter(move |t| t.category() == self)
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TaskId {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TaskId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| EngineError::UnknownTask(s.to_string()))
    }
}

/// Difficulty tier. Ordered `Easy < Medium < Hard < Benchmark`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
    Benchmark,
}

impl Difficulty {
    pub const ALL: [Difficulty; 4] = [
        Difficulty::Easy,
        Difficulty::Medium,
        Difficulty::Hard,
        Difficulty::Benchmark,
    ];

    /// The tiers a training curriculum cycles through.
    pub const TRAINING: [Difficulty; 3] = [Difficulty::Easy, Difficulty::Medium, Difficulty::Hard];

    pub fn name(self) -> &'static str {
        match self {
            Difficulty::Easy => "easy",
            Difficulty::Medium => "medium",
            Difficulty::Hard => "hard",
            Difficulty::Benchmark => "benchmark",
        }
    }
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Difficulty {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Difficulty::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| EngineError::UnknownDifficulty(s.to_string()))
    }
}
