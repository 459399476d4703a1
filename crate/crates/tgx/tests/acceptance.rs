//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Corpora are fixed by seed so every run checks the same instances.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tgx::format::parse_tg1;
use tgx_core::analysis::{edge_frequency, vertex_frequency, FrequencyTable};
use tgx_core::classes::{
    gen_broadcast, gen_random_frequent, gen_sequential, gen_star_lower_bound, gen_transport, random_connected_graph,
    random_routes, random_sequential_instance, BroadcastPolicy,
};
use tgx_core::oracle::{fastest_exploration, OracleOutcome};
use tgx_core::planner::{explore, minimum_spanning_tree, tree_exploration_walk};
use tgx_core::validation::{validate_always_connected, validate_broadcast, validate_exploration};
use tgx_core::{Edge, StaticGraph, TemporalGraph, TemporalGraphBuilder};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- corpora

struct Instance {
    label: String,
    graph: TemporalGraph,
}

/// 200 random frequent graphs, with their frequency bound.
fn frequent_corpus() -> Vec<(Instance, usize)> {
    (0..200u64)
        .map(|i| {
            let n = 2 + (i % 9) as usize;
            let f = 1 + ((i / 9) % 4) as usize;
            let graph = gen_random_frequent(n, f, 0.3, 4 * f * n, 1000 + i).expect("valid parameters");
            (Instance { label: format!("frequent#{i} n={n} f={f}"), graph }, f)
        })
        .collect()
}

/// 50 sequential graphs with the undirected edge count of their underlying graph.
fn sequential_corpus() -> Vec<(Instance, usize)> {
    (0..50u64)
        .map(|i| {
            let n = 2 + (i % 9) as usize;
            let (underlying, sched) = random_sequential_instance(n, 0.4, 2000 + i).expect("valid parameters");
            let max_in = sched.perms.iter().map(Vec::len).max().unwrap_or(1);
            let graph = gen_sequential(&underlying, &sched, max_in * (2 * n - 2)).expect("matching schedule");
            let undirected = underlying.edges().len() / 2;
            (Instance { label: format!("sequential#{i} n={n}"), graph }, undirected)
        })
        .collect()
}

/// 25 transport networks with their longest route period.
fn transport_corpus() -> Vec<(Instance, usize)> {
    (0..25u64)
        .map(|i| {
            let n = 2 + (i % 9) as usize;
            let routes = random_routes(n, 4, 8, 3000 + i).expect("valid parameters");
            let max_l = routes.iter().map(|r| r.period()).max().unwrap_or(1);
            let graph = gen_transport(&routes, n, (2 * n - 2) * max_l).expect("long enough lifetime");
            (Instance { label: format!("transport#{i} n={n} routes={}", routes.len()), graph }, max_l)
        })
        .collect()
}

fn broadcast_fixtures() -> Vec<Instance> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/broadcast");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("fixture directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "tg1"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable fixture");
            let graph = parse_tg1(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            Instance { label: p.file_name().unwrap().to_string_lossy().into_owned(), graph }
        })
        .collect()
}

/// Generated broadcast networks: round robin and greedy on random connected graphs.
fn broadcast_generated() -> Vec<Instance> {
    let mut out = Vec::new();
    for i in 0..40u64 {
        let n = 2 + (i % 9) as usize;
        let underlying = random_connected_graph(n, 0.4, 4000 + i).expect("valid parameters");
        let policy = if i % 2 == 0 { BroadcastPolicy::RoundRobin } else { BroadcastPolicy::GreedyRandom { seed: 5000 + i } };
        let (graph, _) = gen_broadcast(&underlying, policy, 4 * n * n).expect("every vertex broadcasts");
        out.push(Instance { label: format!("broadcast#{i} n={n} {policy:?}"), graph });
    }
    out
}

// ---------------------------------------------------------------- independent checkers

/// Smallest window length `w` such that every `w` consecutive timesteps contain an activation.
fn naive_frequency(active: &[bool]) -> usize {
    let t = active.len();
    (1..=t)
        .find(|&w| (0..=t - w).all(|s| active[s..s + w].iter().any(|&a| a)))
        .expect("pattern has an activation")
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    r
}

/// Minimum spanning tree weight by trying every `(n-1)`-subset of edges.
fn enumerated_mst(n: usize, edges: &[(Edge, usize)]) -> Option<usize> {
    let m = edges.len();
    let k = n - 1;
    let mut best = None;
    let mut pick: Vec<usize> = (0..k).collect();
    if k > m {
        return None;
    }
    loop {
        let mut parent: Vec<usize> = (0..n).collect();
        let mut ok = true;
        for &i in &pick {
            let (a, b) = (find(&mut parent, edges[i].0.u), find(&mut parent, edges[i].0.v));
            if a == b {
                ok = false;
                break;
            }
            parent[a] = b;
        }
        if ok {
            let w: usize = pick.iter().map(|&i| edges[i].1).sum();
            best = Some(best.map_or(w, |b: usize| b.min(w)));
        }
        // next combination
        let Some(i) = (0..k).rev().find(|&i| pick[i] != i + m - k) else { break };
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
    best
}

fn planned_length(g: &TemporalGraph) -> Result<usize, String> {
    explore(g, 0).map(|ex| ex.report.achieved_length).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- criteria

fn star_optimum() -> Outcome {
    let mut cases = 0;
    for n in 4..=6 {
        for r in 1..=3 {
            let s = gen_star_lower_bound(n, r).map_err(|e| e.to_string())?;
            let expected = r * (2 * n - 5) + 1;
            match fastest_exploration(&s.graph, s.start, 16).map_err(|e| e.to_string())? {
                OracleOutcome::Optimal { length, .. } if length == expected => cases += 1,
                other => return Err(format!("n={n} r={r}: expected {expected}, got {:?}", other.length())),
            }
        }
    }
    Ok(format!("{cases} (n, r) cases exact"))
}

fn frequent_twice_mst(corpus: &[(Instance, usize)]) -> Outcome {
    for (inst, _) in corpus {
        let ex = explore(&inst.graph, 0).map_err(|e| format!("{}: planner failed: {e}", inst.label))?;
        if ex.report.achieved_length > 2 * ex.report.mst_weight {
            return Err(format!("{}: length {} > 2*{}", inst.label, ex.report.achieved_length, ex.report.mst_weight));
        }
    }
    Ok(format!("{} instances", corpus.len()))
}

fn frequent_f_bound(corpus: &[(Instance, usize)]) -> Outcome {
    for (inst, f) in corpus {
        let n = inst.graph.n();
        let len = planned_length(&inst.graph).map_err(|e| format!("{}: {e}", inst.label))?;
        if len > f * (2 * n - 3) {
            return Err(format!("{}: length {len} > {}", inst.label, f * (2 * n - 3)));
        }
    }
    Ok(format!("{} instances", corpus.len()))
}

fn sequential_bound(corpus: &[(Instance, usize)]) -> Outcome {
    let mut failures = Vec::new();
    for (inst, edges) in corpus {
        let len = planned_length(&inst.graph).map_err(|e| format!("{}: {e}", inst.label))?;
        if len > 4 * edges {
            failures.push(format!("{} |E|={edges}: length {len} > {}", inst.label, 4 * edges));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} instances", corpus.len()))
    } else {
        Err(format!("{}/{} exceed: {}", failures.len(), corpus.len(), failures.join("; ")))
    }
}

fn transport_bounds(corpus: &[(Instance, usize)]) -> Outcome {
    for (inst, max_l) in corpus {
        let ft = FrequencyTable::compute(&inst.graph);
        if let Some((e, f, _)) = ft.rows().find(|&(_, f, _)| f > *max_l) {
            return Err(format!("{}: edge {e} has frequency {f} > {max_l}", inst.label));
        }
        let n = inst.graph.n();
        let len = planned_length(&inst.graph).map_err(|e| format!("{}: {e}", inst.label))?;
        if len > (2 * n - 3) * max_l {
            return Err(format!("{}: length {len} > {}", inst.label, (2 * n - 3) * max_l));
        }
    }
    Ok(format!("{} instances", corpus.len()))
}

fn broadcast_bounds(fixtures: &[Instance], generated: &[Instance]) -> Outcome {
    for inst in fixtures {
        let g = &inst.graph;
        if !validate_broadcast(g).0.ok() || !validate_always_connected(g).ok() {
            return Err(format!("{}: not an always-connected broadcast network", inst.label));
        }
        let u = g.underlying_graph();
        let delta = (0..g.n()).map(|v| u.degree(v).unwrap().out_degree).min().unwrap();
        for v in 0..g.n() {
            let f = vertex_frequency(g, v).map_err(|e| format!("{}: {e}", inst.label))?;
            if f > delta + 1 {
                return Err(format!("{}: vertex {v} frequency {f} > {}", inst.label, delta + 1));
            }
        }
    }
    let mut accepted = 0;
    for inst in fixtures.iter().chain(generated) {
        let g = &inst.graph;
        if !validate_broadcast(g).0.ok() {
            continue;
        }
        accepted += 1;
        let d = g.underlying_graph().diameter().map_err(|e| format!("{}: {e}", inst.label))?;
        for v in 0..g.n() {
            let f = vertex_frequency(g, v).map_err(|e| format!("{}: {e}", inst.label))?;
            if f > d * g.n() {
                return Err(format!("{}: vertex {v} frequency {f} > {d}*{}", inst.label, g.n()));
            }
        }
    }
    if accepted < generated.len() {
        return Err(format!("only {accepted} instances accepted"));
    }
    Ok(format!("{} always-connected fixtures, {accepted} accepted instances", fixtures.len()))
}

fn oracle_dominance(corpora: &[&[(Instance, usize)]]) -> Outcome {
    let mut checked = 0;
    for inst in corpora.iter().flat_map(|c| c.iter().map(|(i, _)| i)) {
        if inst.graph.n() > 10 {
            continue;
        }
        let planned = planned_length(&inst.graph).map_err(|e| format!("{}: {e}", inst.label))?;
        match fastest_exploration(&inst.graph, 0, 16).map_err(|e| e.to_string())? {
            OracleOutcome::Optimal { length, witness } => {
                if length > planned {
                    return Err(format!("{}: oracle {length} > planner {planned}", inst.label));
                }
                let report = validate_exploration(&inst.graph, &witness, 0);
                if !report.ok() || witness.length() != length {
                    return Err(format!("{}: bad witness {:?}", inst.label, report.violations));
                }
            }
            OracleOutcome::Infeasible => return Err(format!("{}: oracle infeasible, planner {planned}", inst.label)),
        }
        checked += 1;
    }
    Ok(format!("{checked} instances"))
}

fn frequency_matches_window_scan() -> Outcome {
    let mut r = rng(6000);
    for case in 0..500 {
        let t = r.gen_range(1..=100);
        let p: f64 = r.gen_range(0.02..1.0);
        let mut active: Vec<bool> = (0..t).map(|_| r.gen_bool(p)).collect();
        if !active.iter().any(|&a| a) {
            active[r.gen_range(0..t)] = true;
        }
        let mut b = TemporalGraphBuilder::new(2, t, false);
        for (i, _) in active.iter().enumerate().filter(|(_, &a)| a) {
            b.add(i + 1, 0, 1);
        }
        let g = b.build().map_err(|e| e.to_string())?;
        let got = edge_frequency(&g, Edge::new(0, 1)).map_err(|e| e.to_string())?;
        let want = naive_frequency(&active);
        if got != want {
            return Err(format!("case {case}: T={t} got {got}, window scan {want}"));
        }
    }
    Ok("500 patterns".into())
}

fn mst_matches_enumeration() -> Outcome {
    let mut r = rng(7000);
    for case in 0..100 {
        let n = r.gen_range(2..=7);
        let base = random_connected_graph(n, r.gen_range(0.0..1.0), r.gen()).map_err(|e| e.to_string())?;
        let weighted: Vec<(Edge, usize)> = base.edges().iter().map(|&e| (e, r.gen_range(1..=9))).collect();
        let g = StaticGraph::weighted(n, false, weighted.clone()).map_err(|e| e.to_string())?;
        let got = minimum_spanning_tree(&g).map_err(|e| e.to_string())?;
        let want = enumerated_mst(n, &weighted).ok_or("no spanning tree")?;
        if got.weight != want || got.edges.len() != n - 1 {
            return Err(format!("case {case}: kruskal {} vs enumeration {want}", got.weight));
        }
    }
    Ok("100 graphs".into())
}

fn tree_walk_bound() -> Outcome {
    let mut r = rng(8000);
    let mut walks = 0;
    for case in 0..200 {
        let n = r.gen_range(2..=12);
        let mut label: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            label.swap(i, r.gen_range(0..=i));
        }
        let tree: Vec<Edge> = (1..n).map(|i| Edge::new(label[r.gen_range(0..i)], label[i]).canonical()).collect();
        for start in 0..n {
            let w = tree_exploration_walk(n, &tree, start).map_err(|e| e.to_string())?;
            let seen: BTreeSet<usize> = std::iter::once(start).chain(w.steps().iter().map(|e| e.v)).collect();
            if w.len() > 2 * n - 3 || seen.len() != n {
                return Err(format!("case {case}: n={n} start={start} has {} steps covering {}", w.len(), seen.len()));
            }
            walks += 1;
        }
    }
    Ok(format!("200 trees, {walks} walks"))
}

fn main() {
    let frequent = frequent_corpus();
    let sequential = sequential_corpus();
    let transport = transport_corpus();
    let fixtures = broadcast_fixtures();
    let generated = broadcast_generated();

    let criteria: Vec<Criterion> = vec![
        ("star lower bound optimum", Box::new(star_optimum)),
        ("frequent: length <= 2 * mst weight", Box::new(|| frequent_twice_mst(&frequent))),
        ("frequent: length <= f(2n-3)", Box::new(|| frequent_f_bound(&frequent))),
        ("sequential: length <= 4|E|", Box::new(|| sequential_bound(&sequential))),
        ("transport: frequency and length bounds", Box::new(|| transport_bounds(&transport))),
        ("broadcast: vertex frequency bounds", Box::new(|| broadcast_bounds(&fixtures, &generated))),
        ("oracle optimum <= planner", Box::new(|| oracle_dominance(&[&frequent, &sequential, &transport]))),
        ("frequency vs window scan", Box::new(frequency_matches_window_scan)),
        ("mst vs enumeration", Box::new(mst_matches_enumeration)),
        ("tree walk <= 2n-3", Box::new(tree_walk_bound)),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = check();
        let secs = clock.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
