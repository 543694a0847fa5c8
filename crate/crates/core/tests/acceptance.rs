//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a criterion fails that is not listed in `KNOWN_GAPS`.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::time::{Duration, Instant};

use npgen::answer::render;
use npgen::bench::{self, CompletionRecord};
use npgen::curriculum::{self, DEFAULT_PER_STAGE, DEFAULT_PROPORTIONS, DEFAULT_STAGES};
use npgen::engine::{self, verify_payload, Payload, TaskParams};
use npgen::graph::UndirectedGraph;
use npgen::reward::{self, Rational};
use npgen::rng::StreamRng;
use npgen::tasks::graph::{clique, coloring, independent_set, GraphPayload};
use npgen::tasks::partition::{self, BisectionPayload};
use npgen::tasks::planning::tsp::{self, TspPayload};
use npgen::tasks::scheduling::{Meeting, MspPayload};
use npgen::tasks::selection::knapsack::{self, Item, KnapsackPayload};
use npgen::tasks::selection::set_cover::SetCoverPayload;
use npgen::tasks::selection::subset_sum::SubsetSumPayload;
use npgen::{Difficulty, Instance, ScheduleEntry, Solution, TaskId};

/// Criteria that cannot be met as stated, with the reason printed next to
/// the FAIL line.
const KNOWN_GAPS: &[(&str, &str)] = &[
    (
        "worked-example fixtures",
        "the expected coloring [1,2,1,2] gives adjacent vertices 0 and 2 the same color on its own graph",
    ),
];

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>, summary: String) -> Outcome {
    let pass = failures.is_empty();
    let detail = if pass { summary } else { format!("{summary}; {}", failures.join("; ")) };
    Outcome { name, pass, detail }
}

fn objective(payload: &Payload, sol: Solution) -> Option<u64> {
    verify_payload(payload, &sol).ok().and_then(|r| r.objective)
}

fn set(xs: &[u32]) -> std::collections::BTreeSet<u32> {
    xs.iter().copied().collect()
}

fn planted_feasibility() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for task in TaskId::ALL {
        for d in Difficulty::ALL {
            for seed in 0..100 {
                let inst = engine::generate(task, d, seed);
                match engine::verify(&inst, &inst.planted) {
                    Ok(r) if r.feasible => {}
                    other => failures.push(format!("{task}/{}/{seed}: {other:?}", d.name())),
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    outcome(
        "planted feasibility",
        failures,
        format!("{checked} instances in {:.2}s", elapsed.as_secs_f64()),
    )
}

fn worked_example_fixtures() -> Outcome {
    let mut failures = Vec::new();
    let mut expect = |label: &str, got: Option<u64>, want: Option<u64>| {
        if got != want {
            failures.push(format!("{label}: got {got:?}, want {want:?}"));
        }
    };

    let set_cover = Payload::SetCover(SetCoverPayload {
        universe: set(&[0, 1, 2, 3, 4, 5]),
        subsets: [
            (0, set(&[0, 1, 2])),
            (1, set(&[2, 3])),
            (2, set(&[0, 4])),
            (3, set(&[3, 4, 5])),
            (4, set(&[1, 2, 5])),
        ]
        .into_iter()
        .collect(),
    });
    expect("set cover [0,3,4]", objective(&set_cover, Solution::IndexList(vec![0, 3, 4])), Some(3));

    let subset_sum = Payload::SubsetSum(SubsetSumPayload {
        numbers: [(0, 2), (1, 3), (2, 7), (3, 8), (4, 5)].into_iter().collect(),
        target: 10,
    });
    expect("subset sum [0,1,4]", objective(&subset_sum, Solution::IndexList(vec![0, 1, 4])), Some(3));

    let ks = KnapsackPayload {
        items: [(3, 4), (4, 5), (7, 10), (8, 11)]
            .into_iter()
            .enumerate()
            .map(|(i, (weight, value))| (i as u32, Item { weight, value }))
            .collect(),
        capacity: 20,
    };
    let weight: u64 = [0u32, 2, 3].iter().map(|i| ks.items[i].weight).sum();
    expect("knapsack [0,2,3] weight", Some(weight), Some(18));
    let ks = Payload::Knapsack(ks);
    expect("knapsack [0,2,3] value", objective(&ks, Solution::IndexList(vec![0, 2, 3])), Some(25));

    let bisection = Payload::BalancedBisection(BisectionPayload::from_edges(
        4,
        [(0, 1, 3), (0, 2, 1), (1, 2, 2), (1, 3, 2), (2, 3, 3)],
    ));
    expect(
        "bisection [[0,1],[2,3]]",
        objective(&bisection, Solution::PartitionPair(vec![0, 1], vec![2, 3])),
        Some(5),
    );

    let tsp = Payload::Tsp(TspPayload::from_matrix(&[
        vec![0, 10, 15, 20],
        vec![10, 0, 35, 25],
        vec![15, 35, 0, 30],
        vec![20, 25, 30, 0],
    ]));
    expect("tsp [0,1,3,2,0]", objective(&tsp, Solution::Route(vec![0, 1, 3, 2, 0])), Some(80));

    let adj: [&[u32]; 5] = [&[1, 2, 3, 4], &[0, 3, 4], &[0, 3], &[0, 1, 2, 4], &[0, 1, 3]];
    let clique_graph = UndirectedGraph::from_edges(
        5,
        adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().map(move |&v| (u as u32, v))),
    );
    let cl = Payload::MaxClique(GraphPayload { graph: clique_graph });
    expect("clique [0,1,3,4]", objective(&cl, Solution::IndexList(vec![0, 1, 3, 4])), Some(4));

    let mis = Payload::MaxIndependentSet(GraphPayload {
        graph: UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    });
    expect("mis [0,3]", objective(&mis, Solution::IndexList(vec![0, 3])), Some(2));

    let col = Payload::GraphColoring(GraphPayload {
        graph: UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]),
    });
    expect("coloring [1,2,1,2]", objective(&col, Solution::ColorVector(vec![1, 2, 1, 2])), Some(2));

    let meeting = |attendees: &[u32], duration| Meeting {
        attendees: attendees.to_vec(),
        duration,
    };
    let msp = Payload::MeetingScheduling(MspPayload {
        meetings: [(0, meeting(&[0, 1, 2], 60)), (1, meeting(&[1, 3], 30)), (2, meeting(&[0, 2, 3], 90))]
            .into_iter()
            .collect(),
        availability: [
            (0, vec![(900, 1700)]),
            (1, vec![(900, 1200), (1300, 1700)]),
            (2, vec![(900, 1700)]),
            (3, vec![(1000, 1400)]),
        ]
        .into_iter()
        .collect(),
        rooms: [(0, 5), (1, 3)].into_iter().collect(),
    });
    let schedule = Solution::Schedule(vec![
        ScheduleEntry::new(0, 0, 900),
        ScheduleEntry::new(1, 1, 1000),
        ScheduleEntry::new(2, 0, 1020),
    ]);
    match verify_payload(&msp, &schedule) {
        Ok(r) if !r.feasible && r.has("attendee_overlap") => {}
        other => failures.push(format!("msp schedule: expected attendee_overlap, got {other:?}")),
    }
    outcome("worked-example fixtures", failures, "9 worked examples".into())
}

fn tsp_brute_force(m: &[Vec<u64>]) -> u64 {
    fn rec(m: &[Vec<u64>], rest: &mut Vec<usize>, at: usize, acc: u64, best: &mut u64) {
        if acc >= *best {
            return;
        }
        if rest.is_empty() {
            *best = (*best).min(acc + m[at][0]);
            return;
        }
        for i in 0..rest.len() {
            let next = rest.swap_remove(i);
            rec(m, rest, next, acc + m[at][next], best);
            rest.push(next);
            let last = rest.len() - 1;
            rest.swap(i, last);
        }
    }
    let mut best = u64::MAX;
    rec(m, &mut (1..m.len()).collect(), 0, 0, &mut best);
    best
}

fn bisection_brute_force(p: &BisectionPayload) -> u64 {
    let n = p.n as usize;
    let edges: Vec<_> = p.edges().collect();
    (0u32..1 << n)
        .filter(|m| (m.count_ones() as usize).abs_diff(n - m.count_ones() as usize) <= 1)
        .map(|m| edges.iter().filter(|&&(u, v, _)| (m >> u & 1) != (m >> v & 1)).map(|&(_, _, w)| w).sum())
        .min()
        .unwrap()
}

/// Largest vertex subset that is pairwise adjacent (`want_edge`) or pairwise
/// non-adjacent (`!want_edge`), by enumeration.
fn graph_brute_force(g: &UndirectedGraph, want_edge: bool) -> usize {
    let n = g.len();
    (0u32..1 << n)
        .filter(|&m| {
            (0..n as u32).all(|u| {
                (u + 1..n as u32).all(|v| m >> u & 1 == 0 || m >> v & 1 == 0 || g.has_edge(u, v) == want_edge)
            })
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

fn chromatic_number(g: &UndirectedGraph) -> usize {
    fn extend(g: &UndirectedGraph, k: u32, colors: &mut Vec<u32>) -> bool {
        let v = colors.len();
        if v == g.len() {
            return true;
        }
        for c in 1..=k {
            if g.neighbors(v as u32).iter().all(|&u| (u as usize) >= v || colors[u as usize] != c) {
                colors.push(c);
                if extend(g, k, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (1..=g.len().max(1)).find(|&k| extend(g, k as u32, &mut Vec::new())).unwrap()
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

fn oracle_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();

    // TSP, 8 cities, 100 seeds.
    let row = TaskParams::Tsp(tsp::TspParams {
        cities: (8, 8),
        distance: tsp::DISTANCE_RANGE,
    });
    let (mut optimal, mut within) = (0, 0);
    for seed in 0..100 {
        let inst = engine::generate_with(&row, Difficulty::Easy, seed);
        let Payload::Tsp(p) = &inst.payload else { unreachable!() };
        let best = tsp_brute_force(&p.matrix());
        let got = inst.heuristic_objective;
        optimal += usize::from(got == best);
        within += usize::from(got * 100 <= best * 105);
        if got < best {
            failures.push(format!("tsp seed {seed}: heuristic {got} below optimum {best}"));
        }
    }
    notes.push(format!("tsp {optimal}/100 optimal, {within}/100 within 1.05"));
    if optimal < 95 {
        failures.push(format!("tsp optimal {optimal}/100 < 95"));
    }
    if within < 100 {
        failures.push(format!("tsp within 1.05 only {within}/100"));
    }

    // Knapsack, at most 15 items, 200 seeds.
    let row = TaskParams::Knapsack(knapsack::KnapsackParams {
        solution_size: (3, 7),
        total: (8, 15),
        ..knapsack::params(Difficulty::Easy)
    });
    let mut exact = 0;
    for seed in 0..200 {
        let inst = engine::generate_with(&row, Difficulty::Easy, seed);
        let Payload::Knapsack(p) = &inst.payload else { unreachable!() };
        let n = p.items.len();
        let best = (0u32..1 << n)
            .filter_map(|m| {
                let ids: Vec<u32> = (0..n as u32).filter(|i| m >> i & 1 == 1).collect();
                knapsack::verify(p, &ids).objective
            })
            .max()
            .unwrap();
        if n > 15 || inst.heuristic_objective != best {
            failures.push(format!("knapsack seed {seed}: dp {} vs {best}", inst.heuristic_objective));
        } else {
            exact += 1;
        }
    }
    notes.push(format!("knapsack {exact}/200 exact"));

    // Bisection, at most 12 vertices, 200 seeds across the training rows.
    let mut optimal = 0;
    for seed in 0..200u64 {
        let tier = Difficulty::TRAINING[(seed % 3) as usize];
        let base = partition::params(tier);
        let row = TaskParams::BalancedBisection(partition::BisectionParams {
            vertices: (8, 12),
            traitors_per_side: base.traitors_per_side.min(1),
            ..base
        });
        let inst = engine::generate_with(&row, tier, seed);
        let Payload::BalancedBisection(p) = &inst.payload else { unreachable!() };
        match engine::heuristic_solve(&inst) {
            Ok((_, got)) => optimal += usize::from(got == bisection_brute_force(p)),
            Err(e) => failures.push(format!("bisection seed {seed}: {e}")),
        }
    }
    notes.push(format!("bisection {optimal}/200 optimal"));
    if optimal < 180 {
        failures.push(format!("bisection optimal {optimal}/200 < 90%"));
    }

    // Clique and independent set, at most 14 vertices.
    for (name, want_edge) in [("clique", true), ("mis", false)] {
        let mut optimal = 0;
        for seed in 0..100 {
            let row = if want_edge {
                TaskParams::MaxClique(clique::CliqueParams {
                    vertices: (8, 14),
                    clique_size: (2, 5),
                    ..clique::params(Difficulty::Medium)
                })
            } else {
                TaskParams::MaxIndependentSet(independent_set::IndependentSetParams {
                    vertices: (8, 14),
                    set_size: (3, 6),
                    ..independent_set::params(Difficulty::Easy)
                })
            };
            let inst = engine::generate_with(&row, Difficulty::Easy, seed);
            let (Payload::MaxClique(p) | Payload::MaxIndependentSet(p)) = &inst.payload else { unreachable!() };
            optimal += usize::from(inst.heuristic_objective as usize == graph_brute_force(&p.graph, want_edge));
        }
        notes.push(format!("{name} {optimal}/100 optimal"));
        if optimal < 90 {
            failures.push(format!("{name} optimal {optimal}/100 < 90%"));
        }
    }

    // Coloring, at most 10 vertices.
    let row = coloring::ColoringParams {
        vertices: (5, 10),
        colors: (2, 4),
        ..coloring::params(Difficulty::Easy)
    };
    for seed in 0..100 {
        let inst = engine::generate_with(&TaskParams::GraphColoring(row), Difficulty::Easy, seed);
        let Payload::GraphColoring(p) = &inst.payload else { unreachable!() };
        let Solution::ColorVector(planted) = &inst.planted else { unreachable!() };
        let chi = chromatic_number(&p.graph);
        let ds = distinct(&coloring::dsatur(&p.graph));
        if ds < chi || distinct(planted) < chi || (inst.heuristic_objective as usize) < chi {
            failures.push(format!("coloring seed {seed}: below chromatic number {chi}"));
        }
    }
    notes.push("coloring 100/100 bounded by chromatic number".into());
    outcome("oracle equivalence", failures, notes.join(", "))
}

/// Feasible answers of varying quality for monotonicity pairs.
fn feasible_variants(inst: &Instance, rng: &mut StreamRng) -> Vec<Solution> {
    let mut out = vec![inst.planted.clone()];
    if let Ok((h, _)) = engine::heuristic_solve(inst) {
        out.push(h);
    }
    let nonempty_subset = |xs: &[u32], rng: &mut StreamRng| -> Vec<u32> {
        let k = rng.range_usize(1, xs.len().max(1));
        let mut picked: Vec<u32> = rng.sample_distinct(xs.len(), k).into_iter().map(|i| xs[i]).collect();
        picked.sort_unstable();
        picked
    };
    match (&inst.payload, &inst.planted) {
        (Payload::Tsp(p), _) => {
            for _ in 0..3 {
                let mut perm: Vec<u32> = (0..p.n).collect();
                rng.shuffle(&mut perm);
                perm.push(perm[0]);
                out.push(Solution::Route(perm));
            }
        }
        (Payload::HamiltonianCycle(_), Solution::Route(r)) => {
            out.push(Solution::Route(r.iter().rev().copied().collect()));
        }
        (Payload::MaxClique(_) | Payload::MaxIndependentSet(_), Solution::IndexList(ids)) => {
            for _ in 0..3 {
                out.push(Solution::IndexList(nonempty_subset(ids, rng)));
            }
        }
        (Payload::Knapsack(_), Solution::IndexList(ids)) => {
            for _ in 0..3 {
                out.push(Solution::IndexList(nonempty_subset(ids, rng)));
            }
        }
        (Payload::GraphColoring(p), Solution::ColorVector(c)) => {
            out.push(Solution::ColorVector((1..=p.graph.n).collect()));
            let mut recolored = c.clone();
            let v = rng.below(c.len() as u64) as usize;
            recolored[v] = p.graph.n + 1;
            out.push(Solution::ColorVector(recolored));
        }
        (Payload::BalancedBisection(p), _) => {
            for _ in 0..3 {
                let mut vs: Vec<u32> = (0..p.n).collect();
                rng.shuffle(&mut vs);
                let (a, b) = vs.split_at(vs.len() / 2);
                out.push(Solution::PartitionPair(a.to_vec(), b.to_vec()));
            }
        }
        (Payload::SetCover(p), Solution::IndexList(ids)) => {
            out.push(Solution::IndexList(p.subsets.keys().copied().collect()));
            let mut more = ids.clone();
            for id in p.subsets.keys() {
                if !more.contains(id) && rng.chance(0.5) {
                    more.push(*id);
                }
            }
            out.push(Solution::IndexList(more));
        }
        (Payload::MeetingScheduling(_), Solution::Schedule(entries)) => {
            for _ in 0..3 {
                let k = rng.range_usize(1, entries.len().max(1));
                let mut keep = rng.sample_distinct(entries.len(), k);
                keep.sort_unstable();
                out.push(Solution::Schedule(keep.into_iter().map(|i| entries[i]).collect()));
            }
        }
        _ => {}
    }
    out.retain(|s| engine::verify(inst, s).map(|r| r.feasible).unwrap_or(false));
    out
}

/// A well-formed answer that cannot verify.
fn infeasible_answer(inst: &Instance) -> Solution {
    match &inst.planted {
        Solution::IndexList(_) | Solution::Impossible => Solution::IndexList(vec![1_000_000]),
        Solution::Route(_) => Solution::Route(vec![1_000_000]),
        Solution::ColorVector(_) => Solution::ColorVector(vec![]),
        Solution::PartitionPair(..) => Solution::PartitionPair(vec![], vec![]),
        Solution::Schedule(_) => Solution::Schedule(vec![ScheduleEntry::new(1_000_000, 0, 540)]),
    }
}

fn reward_suite() -> Outcome {
    let mut failures = Vec::new();
    let minus_2_5 = Rational::new(-5, 2);
    let minus_0_5 = Rational::new(-1, 2);
    let one = Rational::integer(1);
    let two = Rational::integer(2);
    let instances: Vec<Instance> = TaskId::ALL
        .iter()
        .flat_map(|&t| Difficulty::ALL.iter().flat_map(move |&d| (0..25).map(move |s| engine::generate(t, d, s))))
        .collect();

    let malformed = ["", "no tags [1, 2]", "<think>[0]", "<think>x</think>", "<think>a</think> nothing", "[0]</think>"];
    for inst in &instances {
        for text in malformed {
            let total = reward::score(inst, text).total;
            if total != minus_2_5 {
                failures.push(format!("{} format-fail {text:?} gave {total}", inst.task));
            }
        }
        let bad = reward::wrap_completion(&render(&infeasible_answer(inst)));
        let total = reward::score(inst, &bad).total;
        if total != minus_0_5 {
            failures.push(format!("{} infeasible gave {total}", inst.task));
        }
        let (h, _) = engine::heuristic_solve(inst).expect("baseline");
        let b = reward::score(inst, &reward::wrap_completion(&render(&h)));
        if b.total != two {
            failures.push(format!("{} {} seed {}: heuristic total {}", inst.task, inst.difficulty.name(), inst.seed, b.total));
        }
        let qr = bench::evaluate_one(inst, Some(&render(&h))).qr;
        if (qr - 1.0).abs() > 1e-12 {
            failures.push(format!("{} heuristic QR {qr}", inst.task));
        }
    }

    let mut rng = StreamRng::from_key(0xACCE97);
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < 1000 && attempts < 100_000 {
        attempts += 1;
        let inst = &instances[rng.below(instances.len() as u64) as usize];
        let variants = feasible_variants(inst, &mut rng);
        if variants.len() < 2 {
            continue;
        }
        let i = rng.below(variants.len() as u64) as usize;
        let j = rng.below(variants.len() as u64) as usize;
        let score = |s: &Solution| {
            let b = reward::score(inst, &reward::wrap_completion(&render(s)));
            (b.verify.and_then(|v| v.objective).unwrap_or(0), b.total)
        };
        let (oa, ta) = score(&variants[i]);
        let (ob, tb) = score(&variants[j]);
        for t in [ta, tb] {
            if !(t > one && t <= two) {
                failures.push(format!("{} feasible total {t} outside (1, 2]", inst.task));
            }
        }
        let a_better = match inst.task.sense() {
            npgen::Sense::Maximize => oa > ob,
            npgen::Sense::Minimize => oa < ob,
        };
        if a_better && ta < tb {
            failures.push(format!("{}: objective {oa} beats {ob} but reward {ta} < {tb}", inst.task));
        }
        pairs += 1;
    }
    if pairs < 1000 {
        failures.push(format!("only {pairs} monotonicity pairs"));
    }
    failures.truncate(10);
    outcome(
        "reward formula suite",
        failures,
        format!("{} instances x 3 branches, {pairs} monotone pairs", instances.len()),
    )
}

fn bench_self_consistency() -> Outcome {
    let mut failures = Vec::new();
    let b = bench::build_benchmark(bench::DEFAULT_BENCH_SEED);
    if b.instances.len() != 1000 {
        failures.push(format!("{} instances", b.instances.len()));
    }
    for task in TaskId::ALL {
        let count = b.instances.iter().filter(|i| i.task == task).count();
        if count != 100 {
            failures.push(format!("{task}: {count} instances"));
        }
    }
    for inst in b.instances.iter().filter(|i| i.task == TaskId::Tsp) {
        if let Payload::Tsp(p) = &inst.payload {
            if !(45..=55).contains(&p.n) {
                failures.push(format!("tsp with {} cities", p.n));
            }
        }
    }
    if bench::build_benchmark(bench::DEFAULT_BENCH_SEED).digest != b.digest {
        failures.push("rebuild changed the digest".into());
    }
    let heuristic = bench::heuristic_completions(&b.instances).expect("baselines");
    let report = bench::evaluate(&b.instances, &heuristic);
    if report.overall.sr != 1.0 || (report.overall.qr - 1.0).abs() > 1e-9 {
        failures.push(format!("heuristic SR {} QR {}", report.overall.sr, report.overall.qr));
    }
    let empty = bench::evaluate(&b.instances, &BTreeMap::new());
    if empty.overall.sr != 0.0 || empty.overall.qr != 0.0 {
        failures.push(format!("empty SR {} QR {}", empty.overall.sr, empty.overall.qr));
    }
    outcome(
        "bench self-consistency",
        failures,
        format!(
            "1000 instances, heuristic SR {:.1}% QR {:.3}, empty SR {:.1}% QR {:.3}",
            report.overall.sr * 100.0,
            report.overall.qr,
            empty.overall.sr * 100.0,
            empty.overall.qr
        ),
    )
}

fn corpus_determinism() -> Outcome {
    let mut failures = Vec::new();
    let plan = curriculum::plan_curriculum(&TaskId::ALL, DEFAULT_STAGES, DEFAULT_PER_STAGE, DEFAULT_PROPORTIONS, 0)
        .expect("default plan");
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let start = Instant::now();
    let first = curriculum::emit_corpus(&plan, dirs[0].path()).expect("emit");
    let once = start.elapsed();
    let second = curriculum::emit_corpus(&plan, dirs[1].path()).expect("emit");
    if first.entries.len() != 15_000 {
        failures.push(format!("{} manifest entries", first.entries.len()));
    }
    let ids: HashSet<_> = first.entries.iter().map(|e| &e.instance_id).collect();
    if ids.len() != first.entries.len() {
        failures.push("duplicate instance ids".into());
    }
    for file in [
        curriculum::CORPUS_FILE,
        curriculum::ANSWERS_FILE,
        curriculum::INSTANCES_FILE,
        curriculum::MANIFEST_FILE,
    ] {
        let a = fs::read(dirs[0].path().join(file)).unwrap();
        let b = fs::read(dirs[1].path().join(file)).unwrap();
        if a != b {
            failures.push(format!("{file} differs between emissions"));
        }
        if file.ends_with(".jsonl") && a.iter().filter(|&&c| c == b'\n').count() != 15_000 {
            failures.push(format!("{file} does not hold 15000 records"));
        }
    }
    if first != second {
        failures.push("manifests differ".into());
    }
    if once > Duration::from_secs(600) {
        failures.push(format!("emission took {once:?}"));
    }
    outcome(
        "corpus determinism and scale",
        failures,
        format!("15000 records, emission {:.1}s", once.as_secs_f64()),
    )
}

fn external_completions() -> Outcome {
    let mut failures = Vec::new();
    let b = bench::build_benchmark(7);
    let heuristic = bench::heuristic_completions(&b.instances).expect("baselines");
    let records: Vec<CompletionRecord> = b
        .instances
        .iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let completion = match i % 4 {
                0 => format!("<think>planted</think>\n{}", render(&inst.planted)),
                1 => heuristic[&inst.instance_id].clone(),
                2 => "I could not solve this one.".to_string(),
                _ => return None,
            };
            Some(CompletionRecord {
                instance_id: inst.instance_id.clone(),
                completion,
            })
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.jsonl");
    npgen::io::write_jsonl(&path, &records).unwrap();
    let completions = bench::read_completions(&path).unwrap();
    let report = bench::evaluate(&b.instances, &completions);
    let table = bench::render_table(&report, "external");
    let header = table.lines().next().unwrap_or_default();
    let columns = ["Graph", "Schedule", "Partition", "Selection", "Planning", "Overall"];
    let positions: Vec<Option<usize>> = columns.iter().map(|c| header.find(c)).collect();
    if positions.iter().any(Option::is_none) || !positions.windows(2).all(|w| w[0] < w[1]) {
        failures.push(format!("unexpected header {header:?}"));
    }
    if (report.overall.sr - 0.5).abs() > 1e-12 {
        failures.push(format!("SR {} for half-answered corpus", report.overall.sr));
    }
    if report.per_category.len() != 5 {
        failures.push(format!("{} category columns", report.per_category.len()));
    }
    outcome(
        "external completions report",
        failures,
        format!(
            "{} completions ingested, overall SR {:.1}% QR {:.3}",
            completions.len(),
            report.overall.sr * 100.0,
            report.overall.qr
        ),
    )
}

fn main() {
    let checks: [fn() -> Outcome; 7] = [
        planted_feasibility,
        worked_example_fixtures,
        oracle_equivalence,
        reward_suite,
        bench_self_consistency,
        corpus_determinism,
        external_completions,
    ];
    let mut unexpected = 0;
    for check in checks {
        let o = check();
        let gap = KNOWN_GAPS.iter().find(|(n, _)| *n == o.name).map(|(_, why)| *why);
        if o.pass {
            println!("PASS  {}: {}", o.name, o.detail);
        } else if let Some(why) = gap {
            println!("FAIL  {}: {} (known gap: {why})", o.name, o.detail);
        } else {
            println!("FAIL  {}: {}", o.name, o.detail);
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
