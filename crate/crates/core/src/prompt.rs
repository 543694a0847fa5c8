//! Prompt rendering. The prompt view never contains the planted solution
//! or the baseline objective.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::engine::Payload;
use crate::graph::UndirectedGraph;
use crate::instance::Instance;
use crate::task::{Difficulty, TaskId};

/// Bumped whenever any template text changes.
pub const TEMPLATE_VERSION: &str = "tpl-1";

const THINK_DIRECTIVE: &str = "Reason step by step inside <think> </think> tags, then give only the final answer after </think>.";

/// What a solver (model or stand-in) gets to see.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptView {
    pub instance_id: String,
    pub task: TaskId,
    pub difficulty: Difficulty,
    pub prompt: String,
}

impl PromptView {
    pub fn of(instance: &Instance) -> Self {
        PromptView {
            instance_id: instance.instance_id.clone(),
            task: instance.task,
            difficulty: instance.difficulty,
            prompt: render_prompt(&instance.payload),
        }
    }
}

fn edge_lines(out: &mut String, g: &UndirectedGraph) {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("({u}, {v})")).collect();
    let _ = writeln!(out, "Vertices: 0..{}", g.n.saturating_sub(1));
    let _ = writeln!(out, "Edges: {}", edges.join(", "));
}

fn grammar(task: TaskId) -> &'static str {
    match task {
        TaskId::Tsp => "Answer format: [c0, c1, ..., c0], a closed tour listing every city once.",
        TaskId::HamiltonianCycle => "Answer format: [v0, v1, ..., v_k], each vertex once; consecutive vertices and the last and first must be adjacent.",
        TaskId::MaxClique | TaskId::MaxIndependentSet => "Answer format: [v0, v1, ...], a list of vertex ids.",
        TaskId::GraphColoring => "Answer format: [c0, c1, ..., c_(n-1)], entry i is the positive color of vertex i.",
        TaskId::BalancedBisection => "Answer format: [[a0, a1, ...], [b0, b1, ...]], two lists of vertex ids.",
        TaskId::SetCover => "Answer format: [i0, i1, ...], a list of subset ids, or Impossible if no cover exists.",
        TaskId::SubsetSum | TaskId::Knapsack => "Answer format: [i0, i1, ...], a list of item ids.",
        TaskId::MeetingScheduling => "Answer format: [(meeting, room, start), ...] sorted by start; times are minutes since midnight.",
    }
}

/// Task statement, data, answer grammar and the reasoning directive.
pub fn render_prompt(payload: &Payload) -> String {
    let mut out = String::new();
    match payload {
        Payload::Tsp(p) => {
            out.push_str("Find the shortest tour that starts at city 0, visits every city exactly once and returns to city 0.\n");
            out.push_str("Distance matrix (row i lists distances from city i):\n");
            for (i, row) in p.matrix().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "{i}: {}", cells.join(" "));
            }
        }
        Payload::HamiltonianCycle(p) => {
            out.push_str("Find the longest simple cycle in the undirected graph below; a cycle through every vertex is best.\n");
            edge_lines(&mut out, &p.graph);
        }
        Payload::MaxClique(p) => {
            out.push_str("Find a largest set of vertices that are pairwise adjacent in the undirected graph below.\n");
            edge_lines(&mut out, &p.graph);
        }
        Payload::MaxIndependentSet(p) => {
            out.push_str("Find a largest set of vertices no two of which are adjacent in the undirected graph below.\n");
            edge_lines(&mut out, &p.graph);
        }
        Payload::GraphColoring(p) => {
            out.push_str("Color the vertices so adjacent vertices get different colors, using as few colors as possible.\n");
            edge_lines(&mut out, &p.graph);
        }
        Payload::BalancedBisection(p) => {
            out.push_str("Split the vertices into two halves whose sizes differ by at most one, minimizing the total weight of edges between the halves.\n");
            let _ = writeln!(out, "Vertices: 0..{}", p.n.saturating_sub(1));
            let edges: Vec<String> = p.edges().map(|(u, v, w)| format!("({u}, {v}, {w})")).collect();
            let _ = writeln!(out, "Weighted edges (u, v, weight): {}", edges.join(", "));
        }
        Payload::SetCover(p) => {
            out.push_str("Choose as few subsets as possible whose union equals the universe.\n");
            let universe: Vec<String> = p.universe.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "Universe: {{{}}}", universe.join(", "));
            for (id, s) in &p.subsets {
                let items: Vec<String> = s.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "Subset {id}: {{{}}}", items.join(", "));
            }
        }
        Payload::SubsetSum(p) => {
            let _ = writeln!(
                out,
                "Choose numbers whose sum is exactly {}, using as many numbers as possible.",
                p.target
            );
            for (id, a) in &p.numbers {
                let _ = writeln!(out, "Number {id}: {a}");
            }
        }
        Payload::Knapsack(p) => {
            let _ = writeln!(
                out,
                "Choose items with total weight at most {} and the largest total value.",
                p.capacity
            );
            for (id, item) in &p.items {
                let _ = writeln!(out, "Item {id}: weight {}, value {}", item.weight, item.value);
            }
        }
        Payload::MeetingScheduling(p) => {
            out.push_str("Schedule as many meeting attendees as possible. Each scheduled meeting needs a room with enough capacity, ");
            out.push_str("all of its attendees must be available for the whole meeting, and no room or attendee may be double-booked. ");
            out.push_str("Intervals are half-open [start, end) in minutes since midnight.\n");
            for (id, m) in &p.meetings {
                let who: Vec<String> = m.attendees.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "Meeting {id}: duration {}, attendees {}", m.duration, who.join(", "));
            }
            for (a, windows) in &p.availability {
                let w: Vec<String> = windows.iter().map(|(s, e)| format!("[{s}, {e})")).collect();
                let _ = writeln!(out, "Attendee {a} available: {}", w.join(", "));
            }
            for (r, cap) in &p.rooms {
                let _ = writeln!(out, "Room {r}: capacity {cap}");
            }
        }
    }
    out.push_str(grammar(payload.task()));
    out.push('\n');
    out.push_str(THINK_DIRECTIVE);
    out
}
