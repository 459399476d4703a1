//! Generators for restricted classes of temporal graphs.
//!
//! Every randomized generator is a pure function of its parameters and a `u64` seed
//! (ChaCha8 stream), so outputs are bit-reproducible.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::Activation;
use crate::model::{Edge, StaticGraph, TemporalGraph, TemporalGraphBuilder, TemporalWalk, TimedStep, Vertex};
use crate::{Error, Result};

const BROADCAST_DRAW_ATTEMPTS: usize = 100;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Star lower-bound instance with its designated start vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarInstance {
    pub graph: TemporalGraph,
    pub start: Vertex,
}

/// Star on `n` vertices: center 0, leaves `1..n`, start at leaf 1.
///
/// At timesteps with `(t - 1) mod r == 0` every star edge is active, otherwise only
/// `{0, 1}`. The lifetime is `r(2n - 1)`; the fastest exploration from vertex 1 takes
/// `r(2n - 5) + 1` timesteps.
pub fn gen_star_lower_bound(n: usize, r: usize) -> Result<StarInstance> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("star lower bound needs n >= 3, got {n}")));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("regularity must be at least 1".into()));
    }
    let lifetime = r * (2 * n - 1);
    let mut b = TemporalGraphBuilder::new(n, lifetime, false);
    for t in 1..=lifetime {
        if (t - 1) % r == 0 {
            for leaf in 1..n {
                b.add(t, 0, leaf);
            }
        } else {
            b.add(t, 0, 1);
        }
    }
    Ok(StarInstance { graph: b.build()?, start: 1 })
}

/// One periodic transit line: a temporal walk whose period is the timestep of its last step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    steps: Vec<TimedStep>,
}

impl Route {
    /// `steps` are `(offset, edge)` pairs; offsets must start at 1 or later and strictly
    /// increase, edges must chain. Self-loops model a delay.
    pub fn new(steps: Vec<(usize, Edge)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidRoute("a route needs at least one step".into()));
        }
        let mut last = 0;
        for (i, &(t, e)) in steps.iter().enumerate() {
            if t <= last {
                return Err(Error::InvalidRoute(format!("offset {t} at step {i} does not increase")));
            }
            if i > 0 && steps[i - 1].1.v != e.u {
                return Err(Error::InvalidRoute(format!("step {i} does not continue from {}", steps[i - 1].1.v)));
            }
            last = t;
        }
        Ok(Route { steps: steps.into_iter().map(|(t, edge)| TimedStep { edge, t }).collect() })
    }

    pub fn steps(&self) -> &[TimedStep] {
        &self.steps
    }

    /// `L_i`, the offset of the final step.
    pub fn period(&self) -> usize {
        self.steps.last().map_or(1, |s| s.t)
    }

    pub fn as_temporal_walk(&self) -> TemporalWalk {
        TemporalWalk { start: self.steps[0].edge.u, steps: self.steps.clone() }
    }
}

/// Public transport graph: a route step with offset `o` is active at every `t` with
/// `((t - 1) mod L_i) + 1 == o`.
pub fn gen_transport(routes: &[Route], n: usize, lifetime: usize) -> Result<TemporalGraph> {
    let max_period = routes.iter().map(Route::period).max().unwrap_or(0);
    if lifetime < max_period {
        return Err(Error::InvalidParameter(format!("lifetime {lifetime} shorter than longest route period {max_period}")));
    }
    let mut b = TemporalGraphBuilder::new(n, lifetime, false).allow_self_loops(true);
    for route in routes {
        for s in route.steps() {
            for t in (s.t..=lifetime).step_by(route.period()) {
                b.add(t, s.edge.u, s.edge.v);
            }
        }
    }
    b.build()
}

/// For each vertex `v`, the order `P_v` in which its in-edges take turns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SequentialSchedule {
    pub perms: Vec<Vec<Edge>>,
}

fn in_edges_of(g: &StaticGraph) -> Vec<Vec<Edge>> {
    let mut inc = vec![Vec::new(); g.n()];
    for &e in g.edges().iter().filter(|e| !e.is_loop()) {
        inc[e.v].push(e);
    }
    inc
}

fn require_symmetric_directed(g: &StaticGraph) -> Result<()> {
    if !g.is_directed() {
        return Err(Error::InvalidParameter("expected a symmetric directed graph".into()));
    }
    match g.asymmetric_edge() {
        Some(e) => Err(Error::NotSymmetric(e)),
        None => Ok(()),
    }
}

/// Sequential connection graph: at timestep `t`, vertex `v` has exactly the in-edge
/// `P_v[(t - 1) mod deg(v)]` active. Edge `(u, v)` then has frequency `deg(v)`.
pub fn gen_sequential(underlying: &StaticGraph, sched: &SequentialSchedule, lifetime: usize) -> Result<TemporalGraph> {
    require_symmetric_directed(underlying)?;
    if sched.perms.len() != underlying.n() {
        return Err(Error::ScheduleMismatch(format!(
            "schedule covers {} vertices, graph has {}",
            sched.perms.len(),
            underlying.n()
        )));
    }
    let inc = in_edges_of(underlying);
    for (v, perm) in sched.perms.iter().enumerate() {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != inc[v] {
            return Err(Error::ScheduleMismatch(format!("P_{v} is not a permutation of the in-edges of {v}")));
        }
        if perm.len() > lifetime {
            return Err(Error::InvalidParameter(format!(
                "lifetime {lifetime} shorter than the in-degree {} of vertex {v}",
                perm.len()
            )));
        }
    }
    let mut b = TemporalGraphBuilder::new(underlying.n(), lifetime, true);
    for t in 1..=lifetime {
        for perm in sched.perms.iter().filter(|p| !p.is_empty()) {
            let e = perm[(t - 1) % perm.len()];
            b.add(t, e.u, e.v);
        }
    }
    b.build()
}

/// Activation sets `A_1..A_T` of a broadcast network.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BroadcastSchedule {
    pub active_sets: Vec<Vec<Vertex>>,
}

impl BroadcastSchedule {
    pub fn lifetime(&self) -> usize {
        self.active_sets.len()
    }

    /// Timesteps at which `v` broadcasts.
    pub fn activation(&self, v: Vertex) -> Activation {
        let times = self
            .active_sets
            .iter()
            .enumerate()
            .filter(|(_, a)| a.contains(&v))
            .map(|(i, _)| i + 1);
        Activation::from_timesteps(self.lifetime(), times)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BroadcastPolicy {
    /// `A_t = {(t - 1) mod n}`.
    RoundRobin,
    /// Each eligible vertex joins `A_t` with probability 1/2; empty draws are retried.
    /// A vertex is eligible if it never broadcast, or every neighbour broadcast since
    /// its last round.
    GreedyRandom { seed: u64 },
}

/// Broadcast network over a symmetric graph (undirected or symmetric directed).
pub fn gen_broadcast(
    underlying: &StaticGraph,
    policy: BroadcastPolicy,
    lifetime: usize,
) -> Result<(TemporalGraph, BroadcastSchedule)> {
    let n = underlying.n();
    if n < 2 {
        return Err(Error::InvalidParameter("broadcast networks need at least 2 vertices".into()));
    }
    if let Some(e) = underlying.asymmetric_edge() {
        return Err(Error::NotSymmetric(e));
    }
    if !underlying.is_connected() {
        let v = crate::model::first_unreachable(&underlying.undirected_neighbours(), 0).unwrap_or(0);
        return Err(Error::Disconnected(v));
    }
    let nbrs = underlying.out_neighbours();
    let mut active_sets = Vec::with_capacity(lifetime);
    match policy {
        BroadcastPolicy::RoundRobin => {
            for t in 1..=lifetime {
                active_sets.push(vec![(t - 1) % n]);
            }
        }
        BroadcastPolicy::GreedyRandom { seed } => {
            let mut rng = rng_for(seed);
            let mut last: Vec<Option<usize>> = vec![None; n];
            for t in 1..=lifetime {
                let eligible: Vec<Vertex> = (0..n)
                    .filter(|&v| match last[v] {
                        None => true,
                        Some(lv) => nbrs[v].iter().all(|&u| last[u].is_some_and(|lu| lu >= lv)),
                    })
                    .collect();
                let mut chosen = Vec::new();
                for _ in 0..BROADCAST_DRAW_ATTEMPTS {
                    chosen = eligible.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                    if !chosen.is_empty() {
                        break;
                    }
                }
                if chosen.is_empty() {
                    return Err(Error::GenerationFailed(format!(
                        "no non-empty broadcast set drawn at t={t} after {BROADCAST_DRAW_ATTEMPTS} attempts"
                    )));
                }
                for &v in &chosen {
                    last[v] = Some(t);
                }
                active_sets.push(chosen);
            }
        }
    }
    let schedule = BroadcastSchedule { active_sets };
    for v in 0..n {
        if schedule.activation(v).count() == 0 {
            return Err(Error::GenerationFailed(format!(
                "vertex {v} never broadcasts within lifetime {lifetime}"
            )));
        }
    }
    let mut b = TemporalGraphBuilder::new(n, lifetime, true);
    for (i, set) in schedule.active_sets.iter().enumerate() {
        for &v in set {
            for &u in &nbrs[v] {
                b.add(i + 1, v, u);
            }
        }
    }
    Ok((b.build()?, schedule))
}

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter(format!("density {density} outside [0, 1]")));
    }
    Ok(())
}

fn connected_edges(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<Edge> {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push(Edge::new(parent, order[i]).canonical());
    }
    edges.sort_unstable();
    for u in 0..n {
        for v in u + 1..n {
            let e = Edge::new(u, v);
            if edges.binary_search(&e).is_err() && rng.gen_bool(density) {
                edges.push(e);
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Random connected undirected graph: a random spanning tree plus every other pair
/// with probability `density`.
pub fn random_connected_graph(n: usize, density: f64, seed: u64) -> Result<StaticGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    check_density(density)?;
    StaticGraph::new(n, false, connected_edges(n, density, &mut rng_for(seed)))
}

/// Random `f`-frequent graph on a random connected underlying graph.
///
/// Each edge's activations are drawn as a renewal sequence: the first activation lies
/// in `[1, f]` and each later one follows its predecessor by `1..=f` timesteps, until the
/// lifetime is passed. No inactive run is longer than `f - 1`, so every `f_e <= f`.
pub fn gen_random_frequent(n: usize, f: usize, density: f64, lifetime: usize, seed: u64) -> Result<TemporalGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if f == 0 || f > lifetime {
        return Err(Error::InvalidParameter(format!("need 1 <= f <= lifetime, got f={f}, lifetime={lifetime}")));
    }
    check_density(density)?;
    let mut rng = rng_for(seed);
    let edges = connected_edges(n, density, &mut rng);
    let mut b = TemporalGraphBuilder::new(n, lifetime, false);
    for e in edges {
        let mut t = rng.gen_range(1..=f);
        while t <= lifetime {
            b.add(t, e.u, e.v);
            t += rng.gen_range(1..=f);
        }
    }
    b.build()
}

/// Random connected symmetric directed graph with shuffled in-edge permutations.
pub fn random_sequential_instance(n: usize, density: f64, seed: u64) -> Result<(StaticGraph, SequentialSchedule)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    check_density(density)?;
    let mut rng = rng_for(seed);
    let undirected = connected_edges(n, density, &mut rng);
    let g = StaticGraph::new(n, true, undirected.iter().flat_map(|&e| [e, e.reversed()]))?;
    let mut perms = in_edges_of(&g);
    for p in &mut perms {
        p.shuffle(&mut rng);
    }
    Ok((g, SequentialSchedule { perms }))
}

/// Random routes whose union connects all `n` vertices.
///
/// A random Hamiltonian path is cut into between `ceil((n-1)/max_period)` and
/// `max_routes` consecutive segments, one per route. Each route may continue with a few
/// random extra hops (a hop to the current vertex is a delay loop) and gets strictly
/// increasing offsets drawn from `[1, max_period]`.
pub fn random_routes(n: usize, max_routes: usize, max_period: usize, seed: u64) -> Result<Vec<Route>> {
    if n < 2 || max_routes == 0 || max_period == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2, max_routes >= 1, max_period >= 1; got {n}, {max_routes}, {max_period}"
        )));
    }
    let path_len = n - 1;
    let min_routes = path_len.div_ceil(max_period);
    if min_routes > max_routes {
        return Err(Error::InvalidParameter(format!(
            "{max_routes} routes of period <= {max_period} cannot cover {n} vertices"
        )));
    }
    let mut rng = rng_for(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let m = rng.gen_range(min_routes..=max_routes.min(path_len));
    let mut sizes = vec![1usize; m];
    for _ in 0..path_len - m {
        let open: Vec<usize> = (0..m).filter(|&i| sizes[i] < max_period).collect();
        let i = open[rng.gen_range(0..open.len())];
        sizes[i] += 1;
    }
    let mut routes = Vec::with_capacity(m);
    let mut first = 0;
    for size in sizes {
        let mut hops: Vec<Edge> = (first..first + size).map(|k| Edge::new(order[k], order[k + 1])).collect();
        first += size;
        let extra = rng.gen_range(0..=max_period - size);
        for _ in 0..extra {
            let at = hops.last().map_or(order[0], |e| e.v);
            hops.push(Edge::new(at, rng.gen_range(0..n)));
        }
        let mut offsets: Vec<usize> = rand::seq::index::sample(&mut rng, max_period, hops.len())
            .into_iter()
            .map(|o| o + 1)
            .collect();
        offsets.sort_unstable();
        routes.push(Route::new(offsets.into_iter().zip(hops).collect())?);
    }
    Ok(routes)
}
