//! Three-tier reward: format, feasibility, optimality.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::answer;
use crate::engine;
use crate::error::{EngineError, Result};
use crate::instance::Instance;
use crate::solution::{Solution, VerifyResult};
use crate::task::{Sense, TaskId};

/// Exact rational. Serialized as `{"exact": "p/q", "value": f64}`; only
/// `exact` is read back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.parse::<Ratio<i64>>().map(Rational).map_err(|e| format!("bad rational `{s}`: {e}"))
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    exact: String,
    #[serde(default, skip_deserializing)]
    value: f64,
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr {
            exact: self.to_string(),
            value: self.to_f64(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(d)?;
        repr.exact.parse().map_err(serde::de::Error::custom)
    }
}

pub const FORMAT_OK: i64 = 1;
pub const FORMAT_FAIL: i64 = -1;

/// Penalty applied whenever the answer cannot be shown feasible.
pub fn infeasible_penalty() -> Rational {
    Rational::new(-3, 2)
}

/// Outcome of the format check: the answer substring and its parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatCheck {
    pub answer_text: String,
    pub solution: Solution,
}

fn after_single_think_block(text: &str) -> Option<&str> {
    if text.matches("<think>").count() != 1 || text.matches("</think>").count() != 1 {
        return None;
    }
    let open = text.find("<think>")?;
    let close = text.find("</think>")?;
    if close < open {
        return None;
    }
    let tail = &text[close + "</think>".len()..];
    (!tail.trim().is_empty()).then_some(tail)
}

/// Exactly one `<think>` block followed by text whose last answer-shaped
/// substring parses under the task grammar.
pub fn check_format(task: TaskId, completion: &str) -> Option<FormatCheck> {
    let tail = after_single_think_block(completion)?;
    let (answer_text, solution) = answer::extract_answer(task, tail)?;
    Some(FormatCheck { answer_text, solution })
}

/// Lenient extraction used for benchmark scoring: text after `</think>` if
/// present, else the whole completion.
pub fn extract_lenient(task: TaskId, completion: &str) -> Option<Solution> {
    let tail = match completion.rfind("</think>") {
        Some(i) => &completion[i + "</think>".len()..],
        None => completion,
    };
    answer::extract_answer(task, tail).map(|(_, s)| s)
}

/// Whether the value is capped at 1 (training reward) or left as a raw
/// ratio (benchmark quality ratio).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QualityPath {
    Reward,
    Benchmark,
}

fn to_i64(x: u64) -> i64 {
    i64::try_from(x).unwrap_or(i64::MAX)
}

/// M_s/M_h for maximization tasks, M_h/M_s for minimization tasks.
pub fn compute_quality(instance: &Instance, objective_model: u64, path: QualityPath) -> Result<Rational> {
    let m_h = instance.heuristic_objective;
    if objective_model == 0 || m_h == 0 {
        return Err(EngineError::DegenerateObjective);
    }
    let (num, den) = match instance.task.sense() {
        Sense::Maximize => (objective_model, m_h),
        Sense::Minimize => (m_h, objective_model),
    };
    let q = Rational::new(to_i64(num), to_i64(den));
    Ok(match path {
        QualityPath::Reward => q.min(Rational::integer(1)),
        QualityPath::Benchmark => q,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewardBreakdown {
    pub format_score: i64,
    pub feasibility_component: Rational,
    pub optimality: Option<Rational>,
    pub total: Rational,
    pub answer_text: Option<String>,
    pub parsed_solution: Option<Solution>,
    pub verify: Option<VerifyResult>,
}

impl RewardBreakdown {
    fn format_failure() -> Self {
        RewardBreakdown {
            format_score: FORMAT_FAIL,
            feasibility_component: infeasible_penalty(),
            optimality: None,
            total: Rational::integer(FORMAT_FAIL) + infeasible_penalty(),
            answer_text: None,
            parsed_solution: None,
            verify: None,
        }
    }
}

/// Scores one completion. Feasible answers with a zero objective (an empty
/// clique, say) carry no quality and take the infeasible branch.
pub fn score(instance: &Instance, completion: &str) -> RewardBreakdown {
    let Some(FormatCheck { answer_text, solution }) = check_format(instance.task, completion) else {
        return RewardBreakdown::format_failure();
    };
    let verify = engine::verify(instance, &solution).ok();
    let optimality = verify
        .as_ref()
        .and_then(|v| v.objective)
        .and_then(|m_s| compute_quality(instance, m_s, QualityPath::Reward).ok());
    let feasibility_component = optimality.unwrap_or_else(infeasible_penalty);
    RewardBreakdown {
        format_score: FORMAT_OK,
        feasibility_component,
        optimality,
        total: Rational::integer(FORMAT_OK) + feasibility_component,
        answer_text: Some(answer_text),
        parsed_solution: Some(solution),
        verify,
    }
}

/// Wraps an answer in the minimal well-formed completion.
pub fn wrap_completion(answer_text: &str) -> String {
    format!("<think></think>\n{answer_text}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_serde_round_trip() {
        let r = Rational::new(80, 95);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"exact":"16/19","value":0.8421052631578947}"#);
        assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }

    #[test]
    fn format_rules() {
        let t = TaskId::SetCover;
        assert_eq!(check_format(t, "<think>...</think>\n[0, 3, 4]").unwrap().answer_text, "[0, 3, 4]");
        assert_eq!(
            check_format(t, "<think>x</think> The answer is [0,1,4].").unwrap().answer_text,
            "[0,1,4]"
        );
        assert!(check_format(t, "<think>... [0, 3, 4]").is_none());
        assert!(check_format(t, "<think>a</think><think>b</think>[0]").is_none());
        assert!(check_format(t, "</think><think>[0]").is_none());
        assert!(check_format(t, "<think>[0]</think>   ").is_none());
        assert!(check_format(t, "<think>[0]</think> no list here").is_none());
    }

    #[test]
    fn lenient_extraction() {
        assert_eq!(extract_lenient(TaskId::SubsetSum, "[1, 2]"), Some(Solution::IndexList(vec![1, 2])));
        assert_eq!(
            extract_lenient(TaskId::SubsetSum, "<think>[9]</think> [3]"),
            Some(Solution::IndexList(vec![3]))
        );
    }
}
