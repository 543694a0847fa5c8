//! wasm-bindgen surface for the static page in `www/`. Every export takes
//! and returns JSON strings so the page needs no generated typings.

use npgen::engine::Payload;
use npgen::prompt::PromptView;
use npgen::{answer, engine, reward, Difficulty, Instance, TaskId};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Task names in display order.
pub fn tasks() -> Vec<&'static str> {
    TaskId::ALL.iter().map(|t| t.name()).collect()
}

/// Drawable structure: vertex count plus edges. TSP is complete, so
/// its edges are left out and only the tour gets drawn.
fn view(payload: &Payload) -> Value {
    let (n, edges): (usize, Vec<(u32, u32)>) = match payload {
        Payload::Tsp(p) => (p.n as usize, Vec::new()),
        Payload::HamiltonianCycle(p) => (p.graph.len(), p.graph.edges().collect()),
        Payload::MaxClique(p) | Payload::MaxIndependentSet(p) | Payload::GraphColoring(p) => {
            (p.graph.len(), p.graph.edges().collect())
        }
        Payload::BalancedBisection(p) => (
            p.n as usize,
            p.graph
                .iter()
                .flat_map(|(&u, row)| row.keys().filter(move |&&v| u < v).map(move |&v| (u, v)))
                .collect(),
        ),
        _ => return Value::Null,
    };
    json!({ "n": n, "edges": edges })
}

pub fn generate_json(task: &str, difficulty: &str, seed: u64) -> Result<String, String> {
    let task: TaskId = task.parse().map_err(|e| format!("{e}"))?;
    let difficulty: Difficulty = difficulty.parse().map_err(|e| format!("{e}"))?;
    let inst = engine::generate(task, difficulty, seed);
    Ok(json!({
        "prompt": PromptView::of(&inst).prompt,
        "view": view(&inst.payload),
        "instance": inst,
    })
    .to_string())
}

fn parse_instance(instance_json: &str) -> Result<Instance, String> {
    let inst = Instance::from_json(instance_json).map_err(|e| e.to_string())?;
    inst.check_integrity().map_err(|e| e.to_string())?;
    Ok(inst)
}

pub fn solve_json(instance_json: &str) -> Result<String, String> {
    let inst = parse_instance(instance_json)?;
    let (solution, objective) = engine::heuristic_solve(&inst).map_err(|e| e.to_string())?;
    let text = answer::render(&solution);
    Ok(json!({
        "objective": objective,
        "completion": reward::wrap_completion(&text),
        "answer": text,
        "solution": solution,
    })
    .to_string())
}

pub fn score_json(instance_json: &str, completion: &str) -> Result<String, String> {
    let inst = parse_instance(instance_json)?;
    serde_json::to_string(&reward::score(&inst, completion)).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = taskNames)]
pub fn task_names() -> String {
    json!(tasks()).to_string()
}

/// Seeds arrive as JS numbers; anything up to 2^53 is exact.
#[wasm_bindgen(js_name = generateInstance)]
pub fn generate_instance(task: &str, difficulty: &str, seed: f64) -> Result<String, JsValue> {
    if !(seed >= 0.0 && seed.fract() == 0.0 && seed <= 9_007_199_254_740_992.0) {
        return Err(JsValue::from_str("seed must be a non-negative integer"));
    }
    generate_json(task, difficulty, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = solveInstance)]
pub fn solve_instance(instance_json: &str) -> Result<String, JsValue> {
    solve_json(instance_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = scoreCompletion)]
pub fn score_completion(instance_json: &str, completion: &str) -> Result<String, JsValue> {
    score_json(instance_json, completion).map_err(|e| JsValue::from_str(&e))
}
