//! Procedural instances for ten NP-hard optimization tasks, with
//! rule-based verifiers, heuristic baselines, a quality-aware reward,
//! curriculum corpus emission and a benchmark harness.
//!
//! ```
//! use npgen::{engine, reward, answer, Difficulty, TaskId};
//!
//! let inst = engine::generate(TaskId::Knapsack, Difficulty::Easy, 7);
//! let (best, _) = engine::heuristic_solve(&inst).unwrap();
//! let completion = reward::wrap_completion(&answer::render(&best));
//! assert_eq!(reward::score(&inst, &completion).total.to_f64(), 2.0);
//! ```

pub mod answer;
pub mod bench;
pub mod curriculum;
pub mod engine;
pub mod error;
pub mod graph;
pub mod instance;
pub mod io;
mod par;
pub mod prompt;
pub mod reward;
pub mod rng;
pub mod solution;
pub mod task;
pub mod tasks;

pub use engine::{generate, heuristic_solve, verify, Payload, TaskParams};
pub use error::{EngineError, Result};
pub use instance::{Instance, GENERATOR_VERSION};
pub use solution::{ScheduleEntry, Solution, Violation, VerifyResult};
pub use task::{Category, Difficulty, Sense, TaskId};
