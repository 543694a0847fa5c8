use std::path::PathBuf;

use thiserror::Error;

use crate::task::TaskId;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown task `{0}`")]
    UnknownTask(String),
    #[error("unknown difficulty `{0}`")]
    UnknownDifficulty(String),
    #[error("wrong answer shape for task {task}: expected {expected}")]
    WrongAnswerShape { task: TaskId, expected: &'static str },
    #[error("payload does not belong to task {0}")]
    PayloadMismatch(TaskId),
    #[error("instance id {0} does not match its content")]
    IdMismatch(String),
    #[error("degenerate objective: model objective is zero")]
    DegenerateObjective,
    #[error("invalid curriculum plan: {0}")]
    InvalidPlan(String),
    #[error("invalid calibration request: {0}")]
    InvalidCalibration(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl EngineError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        EngineError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = EngineError> = std::result::Result<T, E>;
