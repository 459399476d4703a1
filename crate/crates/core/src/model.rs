//! Temporal graphs, static graphs and walks.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::Activation;
use crate::{Error, Result};

pub type Vertex = usize;

/// An edge `(u, v)`. For undirected graphs the stored form has `u <= v`; walks keep
/// the traversal orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub const fn new(u: Vertex, v: Vertex) -> Self {
        Edge { u, v }
    }

    /// Orientation with the smaller endpoint first.
    pub fn canonical(self) -> Self {
        if self.u <= self.v {
            self
        } else {
            self.reversed()
        }
    }

    pub fn reversed(self) -> Self {
        Edge { u: self.v, v: self.u }
    }

    pub fn is_loop(self) -> bool {
        self.u == self.v
    }

    pub fn touches(self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((u, v): (Vertex, Vertex)) -> Self {
        Edge { u, v }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Vertex set `0..n`, a lifetime `T >= 1` and one edge set per timestep `1..=T`.
///
/// Snapshots are sorted and deduplicated. Each underlying edge also carries an
/// [`Activation`] bitset so that "is `e` active at `t`" is a single bit test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    n: usize,
    lifetime: usize,
    directed: bool,
    snapshots: Vec<Vec<Edge>>,
    edges: Vec<Edge>,
    activity: Vec<Activation>,
}

/// Collects edge instances `(t, u, v)` and builds a [`TemporalGraph`].
#[derive(Clone, Debug)]
pub struct TemporalGraphBuilder {
    n: usize,
    lifetime: usize,
    directed: bool,
    allow_self_loops: bool,
    instances: Vec<(usize, Edge)>,
}

impl TemporalGraphBuilder {
    pub fn new(n: usize, lifetime: usize, directed: bool) -> Self {
        TemporalGraphBuilder {
            n,
            lifetime,
            directed,
            allow_self_loops: false,
            instances: Vec::new(),
        }
    }

    /// Self-loops model delays in public transport routes; they are rejected otherwise.
    pub fn allow_self_loops(mut self, allow: bool) -> Self {
        self.allow_self_loops = allow;
        self
    }

    pub fn add(&mut self, t: usize, u: Vertex, v: Vertex) -> &mut Self {
        self.instances.push((t, Edge::new(u, v)));
        self
    }

    pub fn build(self) -> Result<TemporalGraph> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("a temporal graph needs at least one vertex".into()));
        }
        if self.lifetime == 0 {
            return Err(Error::InvalidParameter("lifetime must be at least 1".into()));
        }
        let mut snapshots = vec![Vec::new(); self.lifetime];
        for (t, e) in self.instances {
            if t == 0 || t > self.lifetime {
                return Err(Error::TimestepOutOfRange { t, lifetime: self.lifetime });
            }
            for x in [e.u, e.v] {
                if x >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
                }
            }
            if e.is_loop() && !self.allow_self_loops {
                return Err(Error::SelfLoop(e.u));
            }
            let e = if self.directed { e } else { e.canonical() };
            snapshots[t - 1].push(e);
        }
        for s in &mut snapshots {
            s.sort_unstable();
            s.dedup();
        }
        let mut edges: Vec<Edge> = snapshots.iter().flatten().copied().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut activity = vec![Activation::new(self.lifetime); edges.len()];
        for (i, s) in snapshots.iter().enumerate() {
            for e in s {
                let id = edges.binary_search(e).expect("edge collected from snapshots");
                activity[id].set(i + 1);
            }
        }
        Ok(TemporalGraph {
            n: self.n,
            lifetime: self.lifetime,
            directed: self.directed,
            snapshots,
            edges,
            activity,
        })
    }
}

impl TemporalGraph {
    /// Builds a graph whose lifetime is the number of snapshots given.
    pub fn from_snapshots<I, S>(n: usize, directed: bool, snapshots: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let snapshots: Vec<Vec<(Vertex, Vertex)>> =
            snapshots.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut b = TemporalGraphBuilder::new(n, snapshots.len(), directed);
        for (i, s) in snapshots.iter().enumerate() {
            for &(u, v) in s {
                b.add(i + 1, u, v);
            }
        }
        b.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lifetime(&self) -> usize {
        self.lifetime
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Edge set `E_t`, `t` in `1..=lifetime`.
    pub fn snapshot(&self, t: usize) -> &[Edge] {
        &self.snapshots[t - 1]
    }

    pub fn snapshots(&self) -> impl Iterator<Item = (usize, &[Edge])> + '_ {
        self.snapshots.iter().enumerate().map(|(i, s)| (i + 1, s.as_slice()))
    }

    /// Underlying edges in sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Timesteps whose edge set is empty.
    pub fn empty_timesteps(&self) -> Vec<usize> {
        self.snapshots()
            .filter(|(_, s)| s.is_empty())
            .map(|(t, _)| t)
            .collect()
    }

    /// Storage form of `e`: canonical for undirected graphs, unchanged otherwise.
    pub fn key(&self, e: Edge) -> Edge {
        if self.directed {
            e
        } else {
            e.canonical()
        }
    }

    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&self.key(e)).ok()
    }

    pub fn activation(&self, e: Edge) -> Option<&Activation> {
        self.edge_id(e).map(|id| &self.activity[id])
    }

    pub fn activation_by_id(&self, id: usize) -> &Activation {
        &self.activity[id]
    }

    pub fn is_active(&self, e: Edge, t: usize) -> bool {
        self.activation(e).is_some_and(|a| a.is_active(t))
    }

    /// The static graph whose edge set is the union of all snapshots.
    pub fn underlying_graph(&self) -> StaticGraph {
        StaticGraph {
            n: self.n,
            directed: self.directed,
            edges: self.edges.clone(),
            weights: None,
        }
    }

    /// Copy restricted to timesteps `1..=lifetime`.
    pub fn truncated(&self, lifetime: usize) -> Result<Self> {
        if lifetime == 0 || lifetime > self.lifetime {
            return Err(Error::InvalidParameter(format!(
                "cannot truncate lifetime {} to {lifetime}",
                self.lifetime
            )));
        }
        let mut b = TemporalGraphBuilder::new(self.n, lifetime, self.directed).allow_self_loops(true);
        for (t, s) in self.snapshots().take(lifetime) {
            for e in s {
                b.add(t, e.u, e.v);
            }
        }
        b.build()
    }
}

/// A static graph on `0..n`, optionally weighted by positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticGraph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    weights: Option<Vec<usize>>,
}

/// In- and out-degree of a vertex; both equal `|N(v)|` on undirected graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degree {
    pub in_degree: usize,
    pub out_degree: usize,
}

impl StaticGraph {
    pub fn new(n: usize, directed: bool, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| if directed { e } else { e.canonical() })
            .collect();
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(StaticGraph { n, directed, edges, weights: None })
    }

    /// Weighted graph; duplicate edges keep the smallest weight.
    pub fn weighted(
        n: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (Edge, usize)>,
    ) -> Result<Self> {
        let mut pairs: Vec<(Edge, usize)> = edges
            .into_iter()
            .map(|(e, w)| (if directed { e } else { e.canonical() }, w))
            .collect();
        for (e, w) in &pairs {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if *w == 0 {
                return Err(Error::InvalidParameter(format!("edge {e} has weight 0")));
            }
        }
        pairs.sort_unstable();
        pairs.dedup_by_key(|(e, _)| *e);
        let (edges, weights) = pairs.into_iter().unzip();
        Ok(StaticGraph { n, directed, edges, weights: Some(weights) })
    }

    /// Complete undirected graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)));
        StaticGraph::new(n, false, edges).expect("endpoints in range")
    }

    /// Undirected path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        StaticGraph::new(n, false, (1..n).map(|v| Edge::new(v - 1, v))).expect("endpoints in range")
    }

    /// Undirected star with center 0 and leaves `1..n`.
    pub fn star(n: usize) -> Self {
        StaticGraph::new(n, false, (1..n).map(|v| Edge::new(0, v))).expect("endpoints in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Weight of `e`; unweighted graphs report 1 for every present edge.
    pub fn weight(&self, e: Edge) -> Option<usize> {
        let e = if self.directed { e } else { e.canonical() };
        let i = self.edges.binary_search(&e).ok()?;
        Some(self.weights.as_ref().map_or(1, |w| w[i]))
    }

    /// `(edge, weight)` pairs in edge order.
    pub fn weighted_edges(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(move |(i, &e)| (e, self.weights.as_ref().map_or(1, |w| w[i])))
    }

    pub fn contains(&self, e: Edge) -> bool {
        let e = if self.directed { e } else { e.canonical() };
        self.edges.binary_search(&e).is_ok()
    }

    /// Out-neighbours (all neighbours when undirected), self-loops excluded.
    pub fn out_neighbours(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            adj[e.u].push(e.v);
            if !self.directed {
                adj[e.v].push(e.u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Neighbours in the undirected projection, self-loops excluded.
    pub fn undirected_neighbours(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> Result<Degree> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if !self.directed {
            let d = self.out_neighbours()[v].len();
            return Ok(Degree { in_degree: d, out_degree: d });
        }
        let real = || self.edges.iter().filter(|e| !e.is_loop());
        Ok(Degree {
            in_degree: real().filter(|e| e.v == v).count(),
            out_degree: real().filter(|e| e.u == v).count(),
        })
    }

    /// True iff the undirected projection has a single component.
    pub fn is_connected(&self) -> bool {
        first_unreachable(&self.undirected_neighbours(), 0).is_none()
    }

    /// Directed graphs are symmetric when every edge has its reverse; undirected graphs always are.
    pub fn is_symmetric(&self) -> bool {
        self.asymmetric_edge().is_none()
    }

    pub fn asymmetric_edge(&self) -> Option<Edge> {
        if !self.directed {
            return None;
        }
        self.edges
            .iter()
            .copied()
            .find(|e| self.edges.binary_search(&e.reversed()).is_err())
    }

    /// Maximum shortest-walk distance over all ordered vertex pairs (BFS from every vertex).
    pub fn diameter(&self) -> Result<usize> {
        let adj = self.out_neighbours();
        let mut best = 0;
        for s in 0..self.n {
            let dist = bfs_distances(&adj, s);
            for d in dist {
                best = best.max(d.ok_or(Error::InfiniteDiameter)?);
            }
        }
        Ok(best)
    }
}

pub(crate) fn bfs_distances(adj: &[Vec<Vertex>], source: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap_or(0);
        for &y in &adj[x] {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Smallest vertex not reachable from `source`, if any.
pub(crate) fn first_unreachable(adj: &[Vec<Vertex>], source: Vertex) -> Option<Vertex> {
    if adj.is_empty() {
        return None;
    }
    bfs_distances(adj, source).iter().position(Option::is_none)
}

/// A walk in a static graph: a start vertex and a chained sequence of oriented edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    start: Vertex,
    steps: Vec<Edge>,
}

impl Walk {
    pub fn new(start: Vertex, steps: Vec<Edge>) -> Result<Self> {
        let mut at = start;
        for (i, e) in steps.iter().enumerate() {
            if e.u != at {
                return Err(Error::BrokenWalk(i));
            }
            at = e.v;
        }
        Ok(Walk { start, steps })
    }

    /// Walk visiting `vertices` in order; the first entry is the start.
    pub fn from_vertices(vertices: &[Vertex]) -> Result<Self> {
        let start = *vertices
            .first()
            .ok_or_else(|| Error::InvalidParameter("a walk needs a start vertex".into()))?;
        let steps = vertices.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        Ok(Walk { start, steps })
    }

    pub fn empty(start: Vertex) -> Self {
        Walk { start, steps: Vec::new() }
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn steps(&self) -> &[Edge] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> Vertex {
        self.steps.last().map_or(self.start, |e| e.v)
    }
}

/// One step of a temporal walk: traverse `edge` (in its stored orientation) at timestep `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimedStep {
    pub edge: Edge,
    pub t: usize,
}

/// A start vertex and a sequence of `(edge, timestep)` steps.
///
/// This is plain data so that untrusted walks can be loaded and handed to
/// [`crate::validation::validate_temporal_walk`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TemporalWalk {
    pub start: Vertex,
    pub steps: Vec<TimedStep>,
}

impl TemporalWalk {
    pub fn new(start: Vertex) -> Self {
        TemporalWalk { start, steps: Vec::new() }
    }

    pub fn push(&mut self, edge: Edge, t: usize) {
        self.steps.push(TimedStep { edge, t });
    }

    /// Timestep of the final step; 0 for the empty walk.
    pub fn length(&self) -> usize {
        self.steps.last().map_or(0, |s| s.t)
    }

    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn end(&self) -> Vertex {
        self.steps.last().map_or(self.start, |s| s.edge.v)
    }

    /// The untimed walk; fails if steps are not chained.
    pub fn walk(&self) -> Result<Walk> {
        Walk::new(self.start, self.steps.iter().map(|s| s.edge).collect())
    }
}
