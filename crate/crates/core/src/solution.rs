use serde::{Deserialize, Serialize};

/// One entry of a meeting schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub meeting: u32,
    pub room: u32,
    pub start: i64,
}

impl ScheduleEntry {
    pub fn new(meeting: u32, room: u32, start: i64) -> Self {
        Self {
            meeting,
            room,
            start,
        }
    }
}

/// A task-specific answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solution {
    /// Vertex, item or subset ids.
    IndexList(Vec<u32>),
    /// City or vertex sequence.
    Route(Vec<u32>),
    PartitionPair(Vec<u32>, Vec<u32>),
    /// Entry `i` is the color of vertex `i`.
    ColorVector(Vec<u32>),
    Schedule(Vec<ScheduleEntry>),
    /// Set-cover claim that no cover exists.
    Impossible,
}

impl Solution {
    pub fn shape_name(&self) -> &'static str {
        match self {
            Solution::IndexList(_) => "index list",
            Solution::Route(_) => "route",
            Solution::PartitionPair(..) => "partition pair",
            Solution::ColorVector(_) => "color vector",
            Solution::Schedule(_) => "schedule",
            Solution::Impossible => "Impossible",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub detail: String,
}

/// Verdict of a verifier. `feasible` holds exactly when `violations` is
/// empty, and then `objective` is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub feasible: bool,
    pub violations: Vec<Violation>,
    pub objective: Option<u64>,
}

impl VerifyResult {
    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

/// Accumulates violations; `finish` enforces the feasibility invariant.
#[derive(Debug, Default)]
pub(crate) struct Checker {
    violations: Vec<Violation>,
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fail(&mut self, code: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            code: code.to_string(),
            detail: detail.into(),
        });
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn finish(self, objective: impl FnOnce() -> u64) -> VerifyResult {
        if self.violations.is_empty() {
            VerifyResult {
                feasible: true,
                violations: Vec::new(),
                objective: Some(objective()),
            }
        } else {
            VerifyResult {
                feasible: false,
                violations: self.violations,
                objective: None,
            }
        }
    }
}

/// Flags duplicate and out-of-range ids; returns true when all ids are usable.
pub(crate) fn check_ids(checker: &mut Checker, ids: &[u32], n: usize, what: &str) -> bool {
    let mut seen = vec![false; n];
    let mut clean = true;
    for &id in ids {
        let i = id as usize;
        if i >= n {
            checker.fail("unknown_id", format!("{what} {id} does not exist"));
            clean = false;
        } else if seen[i] {
            checker.fail("duplicate_id", format!("duplicate id {id}"));
            clean = false;
        } else {
            seen[i] = true;
        }
    }
    clean
}
