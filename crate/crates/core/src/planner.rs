//! Exploration through a minimum spanning tree of the frequency-weighted underlying graph.
//!
//! 1. Weight every underlying edge by its frequency ([`build_fw_graph`]).
//! 2. Take a minimum weight spanning tree ([`minimum_spanning_tree`], Kruskal).
//! 3. Walk the tree from the start vertex in at most `2n - 3` steps ([`tree_exploration_walk`]).
//! 4. Give each walk edge its earliest activation after the previous step ([`schedule_walk`]).
//!
//! Each step waits less than its edge's frequency, so the exploration ends by
//! `2 * mst_weight` and by `F_max * (2n - 3)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::FrequencyTable;
use crate::model::{first_unreachable, Edge, StaticGraph, TemporalGraph, TemporalWalk, Vertex, Walk};
use crate::{Error, Result};

/// Frequency-weighted underlying graph.
///
/// Symmetric directed graphs are projected to undirected edges weighted by the larger
/// of the two directed frequencies.
pub fn build_fw_graph(g: &TemporalGraph, ft: &FrequencyTable) -> Result<StaticGraph> {
    let lookup = |e: Edge| ft.per_edge.get(&e).copied().ok_or(Error::EdgeNotInGraph(e));
    if !g.is_directed() {
        let weighted: Result<Vec<(Edge, usize)>> = g.edges().iter().map(|&e| Ok((e, lookup(e)?))).collect();
        return StaticGraph::weighted(g.n(), false, weighted?);
    }
    let mut weighted = Vec::new();
    for &e in g.edges() {
        if e.is_loop() {
            weighted.push((e, lookup(e)?));
            continue;
        }
        let back = g.edge_id(e.reversed()).ok_or(Error::NotSymmetric(e))?;
        if e.u < e.v {
            let fwd = lookup(e)?;
            let rev = lookup(g.edges()[back])?;
            weighted.push((e, fwd.max(rev)));
        }
    }
    StaticGraph::weighted(g.n(), false, weighted)
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    /// `n - 1` canonical edges in the order Kruskal accepted them.
    pub edges: Vec<Edge>,
    pub weight: usize,
}

/// Kruskal over edges sorted by `(weight, u, v)`; unweighted graphs count 1 per edge.
pub fn minimum_spanning_tree(sg: &StaticGraph) -> Result<SpanningTree> {
    if sg.is_directed() {
        return Err(Error::InvalidParameter("minimum spanning trees are taken on undirected graphs".into()));
    }
    let mut candidates: Vec<(usize, Edge)> = sg
        .weighted_edges()
        .filter(|(e, _)| !e.is_loop())
        .map(|(e, w)| (w, e))
        .collect();
    candidates.sort_unstable();
    let mut sets = DisjointSets::new(sg.n());
    let mut tree = SpanningTree { edges: Vec::with_capacity(sg.n().saturating_sub(1)), weight: 0 };
    for (w, e) in candidates {
        if sets.union(e.u, e.v) {
            tree.edges.push(e);
            tree.weight += w;
        }
    }
    if tree.edges.len() + 1 < sg.n() {
        let root = sets.find(0);
        let v = (0..sg.n()).find(|&v| sets.find(v) != root).unwrap_or(0);
        return Err(Error::Disconnected(v));
    }
    Ok(tree)
}

/// Euler tour of the tree from `start`, cut right after the last vertex is first reached.
///
/// Children are visited in increasing order of subtree height (ties by index), so the
/// deepest branch comes last and the cut saves the most return steps. The tour has
/// `2(n - 1)` steps and the cut removes at least one, giving at most `2n - 3`.
pub fn tree_exploration_walk(n: usize, tree: &[Edge], start: Vertex) -> Result<Walk> {
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    if tree.len() + 1 != n {
        return Err(Error::NotSpanningTree(format!("{} edges for {n} vertices", tree.len())));
    }
    let mut adj = vec![Vec::new(); n];
    for e in tree {
        if e.u >= n || e.v >= n {
            return Err(Error::NotSpanningTree(format!("edge {e} leaves the vertex set")));
        }
        if e.is_loop() {
            return Err(Error::NotSpanningTree(format!("self-loop {e}")));
        }
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    if let Some(v) = first_unreachable(&adj, start) {
        return Err(Error::NotSpanningTree(format!("vertex {v} is not connected")));
    }
    if n == 1 {
        return Ok(Walk::empty(start));
    }

    // parent pointers and a preorder, then heights bottom-up
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![start];
    parent[start] = start;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut height = vec![0usize; n];
    for &x in order.iter().rev() {
        if x != start {
            let p = parent[x];
            height[p] = height[p].max(height[x] + 1);
        }
    }
    let children: Vec<Vec<Vertex>> = (0..n)
        .map(|x| {
            let mut c: Vec<Vertex> = adj[x].iter().copied().filter(|&y| y != start && parent[y] == x).collect();
            c.sort_unstable_by_key(|&y| (height[y], y));
            c
        })
        .collect();

    let mut steps = Vec::with_capacity(2 * n - 3);
    let mut discovered = 1;
    let mut frames: Vec<(Vertex, usize)> = vec![(start, 0)];
    while let Some(&mut (x, ref mut next)) = frames.last_mut() {
        if let Some(&c) = children[x].get(*next) {
            *next += 1;
            steps.push(Edge::new(x, c));
            discovered += 1;
            if discovered == n {
                break;
            }
            frames.push((c, 0));
        } else {
            frames.pop();
            if let Some(&(p, _)) = frames.last() {
                steps.push(Edge::new(x, p));
            }
        }
    }
    Walk::new(start, steps)
}

/// Greedy earliest-activation schedule: step `i` gets the first `t > t_{i-1}` with its
/// edge active (`t_0 = 0`). Fails on the first step the lifetime cannot accommodate.
pub fn schedule_walk(g: &TemporalGraph, w: &Walk) -> Result<TemporalWalk> {
    let mut tw = TemporalWalk::new(w.start());
    let mut t = 0;
    for (i, &e) in w.steps().iter().enumerate() {
        let activity = g.activation(e).ok_or(Error::EdgeNotInGraph(e))?;
        t = activity
            .next_active(t + 1)
            .ok_or(Error::LifetimeExhausted { step: i, edge: e, after: t })?;
        tw.push(e, t);
    }
    Ok(tw)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningPlan {
    pub fw_graph: StaticGraph,
    pub tree: SpanningTree,
    pub tree_walk: Walk,
}

/// Bound report. `max_frequency` is `F_max`, the largest edge frequency;
/// `mst_weight` is the weight of the spanning tree on the frequency-weighted graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub lifetime: usize,
    pub max_frequency: usize,
    pub mst_weight: usize,
    /// `2 * mst_weight`.
    pub guarantee_2f: usize,
    /// `F_max * (2n - 3)`, 0 when `n == 1`.
    pub guarantee_f2n3: usize,
    pub achieved_length: usize,
}

impl BoundReport {
    /// `(key, value)` pairs in report order.
    pub fn entries(&self) -> [(&'static str, usize); 7] {
        [
            ("n", self.n),
            ("T", self.lifetime),
            ("F_max", self.max_frequency),
            ("mst_weight", self.mst_weight),
            ("guarantee_2F", self.guarantee_2f),
            ("guarantee_f2n3", self.guarantee_f2n3),
            ("achieved_length", self.achieved_length),
        ]
    }

    pub fn within_guarantees(&self) -> bool {
        self.achieved_length <= self.guarantee_2f.min(self.guarantee_f2n3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration {
    pub plan: SpanningPlan,
    pub walk: TemporalWalk,
    pub report: BoundReport,
}

/// Builds the plan for `g` from `start` and schedules it.
pub fn plan(g: &TemporalGraph, start: Vertex) -> Result<(FrequencyTable, SpanningPlan)> {
    if start >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: start, n: g.n() });
    }
    let ft = FrequencyTable::compute(g);
    let fw_graph = build_fw_graph(g, &ft)?;
    let tree = minimum_spanning_tree(&fw_graph)?;
    // walk steps carry their traversal orientation, which directed graphs schedule as-is
    let tree_walk = tree_exploration_walk(g.n(), &tree.edges, start)?;
    Ok((ft, SpanningPlan { fw_graph, tree, tree_walk }))
}

pub fn explore(g: &TemporalGraph, start: Vertex) -> Result<Exploration> {
    let (ft, plan) = plan(g, start)?;
    let walk = schedule_walk(g, &plan.tree_walk)?;
    let n = g.n();
    let report = BoundReport {
        n,
        lifetime: g.lifetime(),
        max_frequency: ft.max_frequency,
        mst_weight: plan.tree.weight,
        guarantee_2f: 2 * plan.tree.weight,
        guarantee_f2n3: ft.max_frequency * (2 * n).saturating_sub(3),
        achieved_length: walk.length(),
    };
    Ok(Exploration { plan, walk, report })
}
