//! Exact fastest exploration by forward search over `(vertex, visited set)` states.
//!
//! The table keeps, per state, the earliest timestep it is reachable. Waiting is
//! implicit: a state reached at `t` stays usable at every later timestep. At timestep
//! `t` every active edge leaving a state reached before `t` yields a new state at `t`,
//! so at most one move happens per timestep.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Edge, TemporalGraph, TemporalWalk, Vertex};
use crate::{Error, Result};

pub const DEFAULT_VERTEX_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Optimal { length: usize, witness: TemporalWalk },
    Infeasible,
}

impl OracleOutcome {
    pub fn length(&self) -> Option<usize> {
        match self {
            OracleOutcome::Optimal { length, .. } => Some(*length),
            OracleOutcome::Infeasible => None,
        }
    }
}

/// Search state: current vertex, visited vertices as a bitmask, and the timestep reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplorationState {
    pub at: Vertex,
    pub visited: u32,
    pub time: usize,
}

#[derive(Clone, Copy)]
struct Arrival {
    time: usize,
    from: u32,
}

const UNSEEN: Arrival = Arrival { time: usize::MAX, from: u32::MAX };

fn moves(g: &TemporalGraph, t: usize) -> impl Iterator<Item = Edge> + '_ {
    let both = !g.is_directed();
    g.snapshot(t)
        .iter()
        .flat_map(move |&e| core::iter::once(e).chain((both && !e.is_loop()).then_some(e.reversed())))
}

/// Earliest arrival time of every reachable `(vertex, visited)` state, plus the final
/// full-coverage state when one is reached.
struct Search {
    n: usize,
    table: Vec<Arrival>,
    found: Option<u32>,
}

impl Search {
    fn index(&self, at: Vertex, mask: u32) -> u32 {
        ((mask as usize) * self.n + at) as u32
    }

    fn decode(&self, idx: u32) -> (Vertex, u32) {
        let idx = idx as usize;
        (idx % self.n, (idx / self.n) as u32)
    }

    fn run(g: &TemporalGraph, start: Vertex, stop_at_full: bool) -> Self {
        let n = g.n();
        let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut s = Search { n, table: vec![UNSEEN; n << n], found: None };
        let start_mask = 1u32 << start;
        let root = s.index(start, start_mask);
        s.table[root as usize] = Arrival { time: 0, from: u32::MAX };
        if start_mask == full {
            s.found = Some(root);
            return s;
        }
        let mut reached: Vec<Vec<u32>> = vec![Vec::new(); n];
        reached[start].push(start_mask);
        let mut fresh: Vec<(u32, u32)> = Vec::new();
        for t in 1..=g.lifetime() {
            fresh.clear();
            for e in moves(g, t) {
                for &mask in &reached[e.u] {
                    let next_mask = mask | 1 << e.v;
                    let next = s.index(e.v, next_mask);
                    if s.table[next as usize].time == usize::MAX {
                        fresh.push((next, s.index(e.u, mask)));
                    }
                }
            }
            for &(next, from) in &fresh {
                let slot = &mut s.table[next as usize];
                if slot.time != usize::MAX {
                    continue;
                }
                *slot = Arrival { time: t, from };
                let (at, mask) = s.decode(next);
                reached[at].push(mask);
                if mask == full && s.found.is_none() {
                    s.found = Some(next);
                }
            }
            if stop_at_full && s.found.is_some() {
                break;
            }
        }
        s
    }

    fn witness(&self, start: Vertex, mut idx: u32) -> TemporalWalk {
        let mut steps = Vec::new();
        loop {
            let arrival = self.table[idx as usize];
            if arrival.from == u32::MAX {
                break;
            }
            let (to, _) = self.decode(idx);
            let (from, _) = self.decode(arrival.from);
            steps.push((Edge::new(from, to), arrival.time));
            idx = arrival.from;
        }
        let mut tw = TemporalWalk::new(start);
        for (e, t) in steps.into_iter().rev() {
            tw.push(e, t);
        }
        tw
    }
}

fn check(g: &TemporalGraph, start: Vertex, n_limit: usize) -> Result<()> {
    if start >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: start, n: g.n() });
    }
    if g.n() > n_limit || g.n() > 31 {
        return Err(Error::OracleLimit { n: g.n(), limit: n_limit.min(31) });
    }
    Ok(())
}

/// Minimal final-step timestep over all temporal walks from `start` that touch every vertex.
pub fn fastest_exploration(g: &TemporalGraph, start: Vertex, n_limit: usize) -> Result<OracleOutcome> {
    check(g, start, n_limit)?;
    let search = Search::run(g, start, true);
    Ok(match search.found {
        Some(idx) => OracleOutcome::Optimal {
            length: search.table[idx as usize].time,
            witness: search.witness(start, idx),
        },
        None => OracleOutcome::Infeasible,
    })
}

/// How the decision version compares the optimum with the threshold `ell`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Threshold {
    /// Exploration of length `< ell`.
    #[default]
    Strict,
    /// Exploration of length `<= ell`.
    Inclusive,
}

pub fn exists_exploration_within(g: &TemporalGraph, start: Vertex, ell: usize, threshold: Threshold, n_limit: usize) -> Result<bool> {
    Ok(match fastest_exploration(g, start, n_limit)?.length() {
        None => false,
        Some(len) => match threshold {
            Threshold::Strict => len < ell,
            Threshold::Inclusive => len <= ell,
        },
    })
}

/// Earliest arrival time of every reachable state over the whole lifetime.
pub fn reachable_states(g: &TemporalGraph, start: Vertex, n_limit: usize) -> Result<Vec<ExplorationState>> {
    check(g, start, n_limit)?;
    let search = Search::run(g, start, false);
    Ok(search
        .table
        .iter()
        .enumerate()
        .filter(|(_, a)| a.time != usize::MAX)
        .map(|(i, a)| {
            let (at, visited) = search.decode(i as u32);
            ExplorationState { at, visited, time: a.time }
        })
        .collect())
}
