use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::Payload;
use crate::error::{EngineError, Result};
use crate::solution::Solution;
use crate::task::{Difficulty, TaskId};

/// Stamped into every record; bumped whenever generator output changes.
pub const GENERATOR_VERSION: &str = "npgen-1";

/// A generated problem together with its planted solution and the
/// baseline objective. Field order is the canonical serialization order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub instance_id: String,
    pub task: TaskId,
    pub difficulty: Difficulty,
    pub seed: u64,
    pub payload: Payload,
    pub planted: Solution,
    pub heuristic_objective: u64,
    pub generator_version: String,
}

#[derive(Deserialize)]
struct RawInstance {
    instance_id: String,
    task: TaskId,
    difficulty: Difficulty,
    seed: u64,
    payload: serde_json::Value,
    planted: Solution,
    heuristic_objective: u64,
    generator_version: String,
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawInstance::deserialize(d)?;
        let payload = Payload::from_value(raw.task, raw.payload).map_err(serde::de::Error::custom)?;
        Ok(Instance {
            instance_id: raw.instance_id,
            task: raw.task,
            difficulty: raw.difficulty,
            seed: raw.seed,
            payload,
            planted: raw.planted,
            heuristic_objective: raw.heuristic_objective,
            generator_version: raw.generator_version,
        })
    }
}

/// Content hash over the task name and the canonical payload.
pub fn content_id(task: TaskId, payload: &Payload) -> String {
    #[derive(Serialize)]
    struct Keyed<'a> {
        task: TaskId,
        payload: &'a Payload,
    }
    let bytes = serde_json::to_vec(&Keyed { task, payload }).expect("payload serializes");
    hex::encode(Sha256::digest(&bytes))
}

impl Instance {
    pub fn new(
        task: TaskId,
        difficulty: Difficulty,
        seed: u64,
        payload: Payload,
        planted: Solution,
        heuristic_objective: u64,
        generator_version: &str,
    ) -> Self {
        Instance {
            instance_id: content_id(task, &payload),
            task,
            difficulty,
            seed,
            payload,
            planted,
            heuristic_objective,
            generator_version: generator_version.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        Ok(serde_json::from_str(line)?)
    }

    /// Rejects records whose id does not match their content or whose
    /// payload belongs to another task.
    pub fn check_integrity(&self) -> Result<()> {
        if self.payload.task() != self.task {
            return Err(EngineError::PayloadMismatch(self.task));
        }
        if content_id(self.task, &self.payload) != self.instance_id {
            return Err(EngineError::IdMismatch(self.instance_id.clone()));
        }
        Ok(())
    }
}
