//! Surface syntax of final answers: parsing, extraction from free text,
//! and rendering.

use crate::solution::{ScheduleEntry, Solution};
use crate::task::TaskId;

const IMPOSSIBLE: &str = "Impossible";

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Int(u64),
    List(Vec<Value>),
    Tuple(Vec<Value>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn value(&mut self, depth: usize) -> Option<Value> {
        if depth > 4 {
            return None;
        }
        self.skip_ws();
        match *self.s.get(self.pos)? {
            b'[' => self.seq(b']', depth).map(Value::List),
            b'(' => self.seq(b')', depth).map(Value::Tuple),
            b'0'..=b'9' => {
                let mut n: u64 = 0;
                while let Some(&c @ b'0'..=b'9') = self.s.get(self.pos) {
                    n = n.checked_mul(10)?.checked_add(u64::from(c - b'0'))?;
                    self.pos += 1;
                }
                Some(Value::Int(n))
            }
            _ => None,
        }
    }

    fn seq(&mut self, close: u8, depth: usize) -> Option<Vec<Value>> {
        self.pos += 1;
        let mut items = Vec::new();
        self.skip_ws();
        if self.s.get(self.pos) == Some(&close) {
            self.pos += 1;
            return Some(items);
        }
        loop {
            items.push(self.value(depth + 1)?);
            self.skip_ws();
            match *self.s.get(self.pos)? {
                b',' => self.pos += 1,
                c if c == close => {
                    self.pos += 1;
                    return Some(items);
                }
                _ => return None,
            }
        }
    }
}

fn ints<T: TryFrom<u64>>(items: &[Value]) -> Option<Vec<T>> {
    items
        .iter()
        .map(|v| match v {
            Value::Int(n) => T::try_from(*n).ok(),
            _ => None,
        })
        .collect()
}

fn shape(task: TaskId, value: &Value) -> Option<Solution> {
    let Value::List(items) = value else {
        return None;
    };
    match task {
        TaskId::Tsp | TaskId::HamiltonianCycle => ints(items).map(Solution::Route),
        TaskId::GraphColoring => ints(items).map(Solution::ColorVector),
        TaskId::BalancedBisection => match items.as_slice() {
            [Value::List(a), Value::List(b)] => Some(Solution::PartitionPair(ints(a)?, ints(b)?)),
            _ => None,
        },
        TaskId::MeetingScheduling => items
            .iter()
            .map(|v| match v {
                Value::Tuple(t) if t.len() == 3 => {
                    let ids: Vec<u32> = ints(&t[..2])?;
                    let start: Vec<i64> = ints(&t[2..])?;
                    Some(ScheduleEntry::new(ids[0], ids[1], start[0]))
                }
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Solution::Schedule),
        _ => ints(items).map(Solution::IndexList),
    }
}

/// Parses `text` as a complete answer for `task`; surrounding whitespace is
/// ignored.
pub fn parse_answer(task: TaskId, text: &str) -> Option<Solution> {
    let t = text.trim();
    if task == TaskId::SetCover && t == IMPOSSIBLE {
        return Some(Solution::Impossible);
    }
    let mut p = Parser { s: t.as_bytes(), pos: 0 };
    if !t.starts_with('[') {
        return None;
    }
    let v = p.value(0)?;
    p.skip_ws();
    if p.pos != t.len() {
        return None;
    }
    shape(task, &v)
}

fn is_word_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// Finds the last answer-shaped substring in `text`: the candidate that ends
/// furthest right, the outermost one on ties.
pub fn extract_answer(task: TaskId, text: &str) -> Option<(String, Solution)> {
    let bytes = text.as_bytes();
    let mut best: Option<(usize, usize, Solution)> = None;
    let mut consider = |start: usize, end: usize, sol: Solution| {
        let better = match &best {
            None => true,
            Some((s, e, _)) => end > *e || (end == *e && start < *s),
        };
        if better {
            best = Some((start, end, sol));
        }
    };
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'[' {
            let mut p = Parser { s: bytes, pos: i };
            if let Some(v) = p.value(0) {
                if let Some(sol) = shape(task, &v) {
                    consider(i, p.pos, sol);
                }
            }
        }
    }
    if task == TaskId::SetCover {
        for (i, _) in text.match_indices(IMPOSSIBLE) {
            let end = i + IMPOSSIBLE.len();
            let left_ok = i == 0 || !is_word_byte(bytes[i - 1]);
            let right_ok = end == bytes.len() || !is_word_byte(bytes[end]);
            if left_ok && right_ok {
                consider(i, end, Solution::Impossible);
            }
        }
    }
    best.map(|(s, e, sol)| (text[s..e].to_string(), sol))
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Canonical surface form; `parse_answer` accepts it for the matching task.
pub fn render(solution: &Solution) -> String {
    match solution {
        Solution::IndexList(v) | Solution::Route(v) | Solution::ColorVector(v) => format!("[{}]", join(v)),
        Solution::PartitionPair(a, b) => format!("[[{}], [{}]]", join(a), join(b)),
        Solution::Schedule(entries) => {
            let parts: Vec<String> = entries
                .iter()
                .map(|e| format!("({}, {}, {})", e.meeting, e.room, e.start))
                .collect();
            format!("[{}]", parts.join(", "))
        }
        Solution::Impossible => IMPOSSIBLE.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_grammar() {
        assert_eq!(parse_answer(TaskId::SetCover, " [0, 3,4] "), Some(Solution::IndexList(vec![0, 3, 4])));
        assert_eq!(parse_answer(TaskId::SetCover, "Impossible"), Some(Solution::Impossible));
        assert_eq!(parse_answer(TaskId::Knapsack, "Impossible"), None);
        assert_eq!(parse_answer(TaskId::Tsp, "[0,1,3,2,0]"), Some(Solution::Route(vec![0, 1, 3, 2, 0])));
        assert_eq!(
            parse_answer(TaskId::BalancedBisection, "[[0,1],\n [2,3]]"),
            Some(Solution::PartitionPair(vec![0, 1], vec![2, 3]))
        );
        assert_eq!(
            parse_answer(TaskId::MeetingScheduling, "[(0, 0, 900), (1,1,1020)]"),
            Some(Solution::Schedule(vec![ScheduleEntry::new(0, 0, 900), ScheduleEntry::new(1, 1, 1020)]))
        );
        assert_eq!(parse_answer(TaskId::MaxClique, "[]"), Some(Solution::IndexList(vec![])));
    }

    #[test]
    fn rejects_malformed() {
        for (task, text) in [
            (TaskId::SetCover, "[0, 3,]"),
            (TaskId::SetCover, "[0, -3]"),
            (TaskId::SetCover, "[0, 3] x"),
            (TaskId::SetCover, "impossible"),
            (TaskId::BalancedBisection, "[0, 1]"),
            (TaskId::MeetingScheduling, "[(0, 0)]"),
            (TaskId::MeetingScheduling, "[[0, 0, 900]]"),
            (TaskId::MaxClique, "[99999999999]"),
            (TaskId::MaxClique, "[1.5]"),
        ] {
            assert_eq!(parse_answer(task, text), None, "{text}");
        }
    }

    #[test]
    fn last_candidate_wins() {
        let (text, sol) = extract_answer(TaskId::SetCover, " The answer is [0,1,4].").unwrap();
        assert_eq!(text, "[0,1,4]");
        assert_eq!(sol, Solution::IndexList(vec![0, 1, 4]));
        let (text, _) = extract_answer(TaskId::SetCover, "try [1] then [2, 3] final").unwrap();
        assert_eq!(text, "[2, 3]");
        let (text, _) = extract_answer(TaskId::SetCover, "[0] or maybe Impossible").unwrap();
        assert_eq!(text, "Impossible");
        assert!(extract_answer(TaskId::SetCover, "NotImpossible").is_none());
    }

    #[test]
    fn nested_candidates_prefer_outermost() {
        let (text, sol) = extract_answer(TaskId::BalancedBisection, "so [[0, 1], [2, 3]]").unwrap();
        assert_eq!(text, "[[0, 1], [2, 3]]");
        assert_eq!(sol, Solution::PartitionPair(vec![0, 1], vec![2, 3]));
        // For list tasks the inner list of a pair is the last candidate that parses.
        let (text, _) = extract_answer(TaskId::MaxClique, "[[0, 1], [2, 3]]").unwrap();
        assert_eq!(text, "[2, 3]");
    }

    #[test]
    fn render_round_trips() {
        let cases = [
            (TaskId::Knapsack, Solution::IndexList(vec![0, 2, 3])),
            (TaskId::Tsp, Solution::Route(vec![0, 2, 1, 0])),
            (TaskId::GraphColoring, Solution::ColorVector(vec![1, 2, 1])),
            (TaskId::BalancedBisection, Solution::PartitionPair(vec![0], vec![1])),
            (TaskId::MeetingScheduling, Solution::Schedule(vec![ScheduleEntry::new(2, 1, 600)])),
            (TaskId::SetCover, Solution::Impossible),
        ];
        for (task, sol) in cases {
            assert_eq!(parse_answer(task, &render(&sol)), Some(sol));
        }
    }
}
