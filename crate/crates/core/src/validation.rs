//! Checkers for temporal walks, explorations and the restricted graph classes.
//!
//! Validators never fail on content problems: they return a [`ValidationReport`]
//! listing every violated rule.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::Activation;
use crate::classes::{BroadcastSchedule, Route, SequentialSchedule};
use crate::model::{first_unreachable, Edge, TemporalGraph, TemporalWalk, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Step does not start where the previous one ended.
    WalkChain,
    /// Timesteps are not strictly increasing.
    WalkOrder,
    /// Edge is not active at the step's timestep.
    WalkActive,
    /// Timestep or vertex outside the graph.
    WalkRange,
    ExploreStart,
    ExploreUnvisited,
    /// Schedule is not a permutation of the in-edges.
    SeqShape,
    SeqMissing,
    SeqExtra,
    BcastDirected,
    BcastSymmetric,
    /// Only some out-edges of a vertex are active.
    BcastPartial,
    /// Vertex broadcast again before every neighbour answered.
    BcastAck,
    Disconnected,
    TransportRoute,
    TransportSpurious,
    TransportMissing,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::WalkChain => "walk.chain",
            Rule::WalkOrder => "walk.order",
            Rule::WalkActive => "walk.active",
            Rule::WalkRange => "walk.range",
            Rule::ExploreStart => "explore.start",
            Rule::ExploreUnvisited => "explore.unvisited",
            Rule::SeqShape => "seq.shape",
            Rule::SeqMissing => "seq.missing",
            Rule::SeqExtra => "seq.extra",
            Rule::BcastDirected => "bcast.directed",
            Rule::BcastSymmetric => "bcast.symmetric",
            Rule::BcastPartial => "bcast.partial",
            Rule::BcastAck => "bcast.ack",
            Rule::Disconnected => "conn.disconnected",
            Rule::TransportRoute => "transport.route",
            Rule::TransportSpurious => "transport.spurious",
            Rule::TransportMissing => "transport.missing",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub detail: String,
    pub t: Option<usize>,
    pub edge: Option<Edge>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RULE {}", self.rule)?;
        match self.t {
            Some(t) => write!(f, " t={t}")?,
            None => write!(f, " t=-")?,
        }
        write!(f, " {}", self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn rules(&self) -> BTreeSet<Rule> {
        self.violations.iter().map(|v| v.rule).collect()
    }

    fn push(&mut self, rule: Rule, t: Option<usize>, edge: Option<Edge>, detail: String) {
        self.violations.push(Violation { rule, detail, t, edge });
    }
}

/// Checks chaining, strictly increasing timesteps, activation and ranges.
pub fn validate_temporal_walk(g: &TemporalGraph, tw: &TemporalWalk) -> ValidationReport {
    let mut r = ValidationReport::default();
    if tw.start >= g.n() {
        r.push(Rule::WalkRange, None, None, format!("start vertex {} >= n={}", tw.start, g.n()));
    }
    let mut at = tw.start;
    let mut last_t = 0;
    for (i, step) in tw.steps.iter().enumerate() {
        let (e, t) = (step.edge, step.t);
        if e.u != at {
            r.push(Rule::WalkChain, Some(t), Some(e), format!("step {i} leaves {} but the walk is at {at}", e.u));
        }
        if i > 0 && t <= last_t {
            r.push(Rule::WalkOrder, Some(t), Some(e), format!("step {i} at t={t} does not follow t={last_t}"));
        }
        let in_range = t >= 1 && t <= g.lifetime() && e.u < g.n() && e.v < g.n();
        if !in_range {
            r.push(Rule::WalkRange, Some(t), Some(e), format!("step {i} {e} at t={t} outside n={} T={}", g.n(), g.lifetime()));
        } else if !g.is_active(e, t) {
            r.push(Rule::WalkActive, Some(t), Some(e), format!("step {i} edge {e} inactive"));
        }
        at = e.v;
        last_t = t;
    }
    r
}

/// A valid temporal walk from `start` touching every vertex.
pub fn validate_exploration(g: &TemporalGraph, tw: &TemporalWalk, start: Vertex) -> ValidationReport {
    let mut r = validate_temporal_walk(g, tw);
    if tw.start != start {
        r.push(Rule::ExploreStart, None, None, format!("walk starts at {} instead of {start}", tw.start));
    }
    let mut seen = vec![false; g.n()];
    for s in &tw.steps {
        for x in [s.edge.u, s.edge.v] {
            if let Some(slot) = seen.get_mut(x) {
                *slot = true;
            }
        }
    }
    if tw.steps.is_empty() && g.n() == 1 && start == 0 {
        seen[0] = true;
    }
    let missing: Vec<String> = (0..g.n()).filter(|&v| !seen[v]).map(|v| format!("{v}")).collect();
    if !missing.is_empty() {
        r.push(Rule::ExploreUnvisited, None, None, format!("unvisited vertices: {}", missing.join(",")));
    }
    r
}

fn in_edges(g: &TemporalGraph) -> Vec<Vec<Edge>> {
    let mut inc = vec![Vec::new(); g.n()];
    for &e in g.edges().iter().filter(|e| !e.is_loop()) {
        inc[e.v].push(e);
    }
    inc
}

/// At every timestep each vertex has exactly its scheduled in-edge active.
pub fn validate_sequential(g: &TemporalGraph, sched: &SequentialSchedule) -> ValidationReport {
    let mut r = ValidationReport::default();
    if !g.is_directed() {
        r.push(Rule::SeqShape, None, None, "sequential connection graphs are directed".into());
        return r;
    }
    if sched.perms.len() != g.n() {
        r.push(Rule::SeqShape, None, None, format!("schedule covers {} vertices, graph has {}", sched.perms.len(), g.n()));
        return r;
    }
    let inc = in_edges(g);
    for (v, (perm, expected)) in sched.perms.iter().zip(&inc).enumerate() {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if &sorted != expected {
            r.push(Rule::SeqShape, None, None, format!("schedule of vertex {v} is not a permutation of its in-edges"));
            continue;
        }
        if perm.is_empty() {
            continue;
        }
        for t in 1..=g.lifetime() {
            let expected = perm[(t - 1) % perm.len()];
            if !g.is_active(expected, t) {
                r.push(Rule::SeqMissing, Some(t), Some(expected), format!("scheduled in-edge {expected} of {v} inactive"));
            }
            for &e in perm.iter().filter(|&&e| e != expected) {
                if g.is_active(e, t) {
                    r.push(Rule::SeqExtra, Some(t), Some(e), format!("unscheduled in-edge {e} of {v} active"));
                }
            }
        }
    }
    r
}

/// Checks all-or-nothing broadcasting and the acknowledgement rule, and returns the
/// activation sets `A_1..A_T` (vertices with all out-edges active).
///
/// The acknowledgement window of consecutive activations `t1 < t2` is `[t1, t2 - 1]`,
/// so a neighbour broadcasting in the same round as `t1` counts. Nothing is required
/// before a vertex's first activation.
pub fn validate_broadcast(g: &TemporalGraph) -> (ValidationReport, BroadcastSchedule) {
    let mut r = ValidationReport::default();
    if !g.is_directed() {
        r.push(Rule::BcastDirected, None, None, "broadcast networks are directed".into());
    }
    let ug = g.underlying_graph();
    if g.is_directed() {
        for &e in ug.edges().iter().filter(|e| !e.is_loop()) {
            if !ug.contains(e.reversed()) {
                r.push(Rule::BcastSymmetric, None, Some(e), format!("edge {e} has no reverse"));
            }
        }
    }
    let nbrs = ug.out_neighbours();
    let mut active_sets = vec![Vec::new(); g.lifetime()];
    let mut patterns = vec![Activation::new(g.lifetime()); g.n()];
    for (t, snapshot) in g.snapshots() {
        let mut sent = vec![0usize; g.n()];
        for e in snapshot.iter().filter(|e| !e.is_loop()) {
            sent[e.u] += 1;
            if !g.is_directed() {
                sent[e.v] += 1;
            }
        }
        for v in 0..g.n() {
            let degree = nbrs[v].len();
            if degree > 0 && sent[v] == degree {
                active_sets[t - 1].push(v);
                patterns[v].set(t);
            } else if sent[v] > 0 {
                r.push(Rule::BcastPartial, Some(t), None, format!("vertex {v} sends on {} of {degree} out-edges", sent[v]));
            }
        }
    }
    for v in 0..g.n() {
        let times: Vec<usize> = patterns[v].timesteps().collect();
        for w in times.windows(2) {
            let (t1, t2) = (w[0], w[1]);
            for &u in &nbrs[v] {
                let answered = patterns[u].next_active(t1).is_some_and(|t| t < t2);
                if !answered {
                    r.push(Rule::BcastAck, Some(t2), Some(Edge::new(v, u)), format!("vertex {v} broadcasts at {t1} and {t2} without hearing from {u}"));
                }
            }
        }
    }
    (r, BroadcastSchedule { active_sets })
}

/// Every snapshot, viewed as undirected, connects all `n` vertices.
pub fn validate_always_connected(g: &TemporalGraph) -> ValidationReport {
    let mut r = ValidationReport::default();
    for (t, snapshot) in g.snapshots() {
        let mut adj = vec![Vec::new(); g.n()];
        for e in snapshot.iter().filter(|e| !e.is_loop()) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        if let Some(v) = first_unreachable(&adj, 0) {
            r.push(Rule::Disconnected, Some(t), None, format!("vertex {v} not connected to vertex 0"));
        }
    }
    r
}

/// `E_t` must equal the route edges whose offset is `((t - 1) mod L_i) + 1`.
pub fn validate_transport(g: &TemporalGraph, routes: &[Route]) -> ValidationReport {
    let mut r = ValidationReport::default();
    for (i, route) in routes.iter().enumerate() {
        for s in route.steps() {
            if s.edge.u >= g.n() || s.edge.v >= g.n() {
                r.push(Rule::TransportRoute, None, Some(s.edge), format!("route {i} edge {} outside n={}", s.edge, g.n()));
            }
        }
    }
    if !r.ok() {
        return r;
    }
    for (t, snapshot) in g.snapshots() {
        let mut expected = BTreeSet::new();
        for route in routes {
            let offset = (t - 1) % route.period() + 1;
            for s in route.steps().iter().filter(|s| s.t == offset) {
                expected.insert(g.key(s.edge));
            }
        }
        let actual: BTreeSet<Edge> = snapshot.iter().copied().collect();
        for e in actual.difference(&expected) {
            r.push(Rule::TransportSpurious, Some(t), Some(*e), format!("edge {e} is not scheduled by any route"));
        }
        for e in expected.difference(&actual) {
            r.push(Rule::TransportMissing, Some(t), Some(*e), format!("scheduled edge {e} is inactive"));
        }
    }
    r
}
