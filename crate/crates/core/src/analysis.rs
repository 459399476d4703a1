//! Edge frequency, edge regularity and broadcast vertex frequency.
//!
//! The frequency of an activity pattern over `1..=T` is one more than its longest run
//! of inactive timesteps, runs before the first and after the last activation included.

use alloc::collections::BTreeMap;
use alloc::format;

use crate::bitset::Activation;
use crate::model::{Edge, TemporalGraph, Vertex};
use crate::validation::validate_broadcast;
use crate::{Error, Result};

/// Single pass over the pattern keeping the current gap and the longest gap.
pub fn frequency_of<I: IntoIterator<Item = bool>>(activity: I) -> usize {
    let mut longest = 0;
    let mut current = 0;
    for active in activity {
        if active {
            current = 0;
        } else {
            current += 1;
            longest = longest.max(current);
        }
    }
    longest + 1
}

/// Which regularity condition to test for a candidate period `r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RegularityRule {
    /// For every `t` in `[r+1, T-r]`, the pattern agrees at `t-r`, `t` and `t+r`.
    #[default]
    ThreePoint,
    /// For every `t` in `[1, T-r]`, the pattern agrees at `t` and `t+r`.
    TwoPoint,
}

fn is_regular(a: &Activation, r: usize, rule: RegularityRule) -> bool {
    let lifetime = a.len();
    match rule {
        RegularityRule::ThreePoint => (r + 1..=lifetime.saturating_sub(r)).all(|t| {
            let mid = a.is_active(t);
            a.is_active(t - r) == mid && a.is_active(t + r) == mid
        }),
        RegularityRule::TwoPoint => {
            (1..=lifetime.saturating_sub(r)).all(|t| a.is_active(t) == a.is_active(t + r))
        }
    }
}

/// Smallest `r` in `[1, T]` satisfying `rule`. Brute force, `O(T^2)` worst case.
///
/// Large enough `r` make the condition vacuous, so a value always exists.
pub fn regularity_of(a: &Activation, rule: RegularityRule) -> usize {
    (1..=a.len())
        .find(|&r| is_regular(a, r, rule))
        .unwrap_or(a.len().max(1))
}

fn activation_of(g: &TemporalGraph, e: Edge) -> Result<&Activation> {
    g.activation(e).ok_or(Error::EdgeNotInGraph(g.key(e)))
}

pub fn edge_frequency(g: &TemporalGraph, e: Edge) -> Result<usize> {
    Ok(frequency_of(activation_of(g, e)?.iter()))
}

pub fn edge_regularity(g: &TemporalGraph, e: Edge) -> Result<usize> {
    edge_regularity_with(g, e, RegularityRule::ThreePoint)
}

pub fn edge_regularity_with(g: &TemporalGraph, e: Edge, rule: RegularityRule) -> Result<usize> {
    Ok(regularity_of(activation_of(g, e)?, rule))
}

/// Per-edge frequencies of every underlying edge, and optionally regularities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyTable {
    pub per_edge: BTreeMap<Edge, usize>,
    /// `F_max`, the largest edge frequency (0 when the graph has no edges).
    pub max_frequency: usize,
    pub per_edge_regularity: Option<BTreeMap<Edge, usize>>,
}

impl FrequencyTable {
    pub fn compute(g: &TemporalGraph) -> Self {
        let per_edge: BTreeMap<Edge, usize> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(id, &e)| (e, frequency_of(g.activation_by_id(id).iter())))
            .collect();
        let max_frequency = per_edge.values().copied().max().unwrap_or(0);
        FrequencyTable { per_edge, max_frequency, per_edge_regularity: None }
    }

    pub fn with_regularity(g: &TemporalGraph, rule: RegularityRule) -> Self {
        let mut table = FrequencyTable::compute(g);
        table.per_edge_regularity = Some(
            g.edges()
                .iter()
                .enumerate()
                .map(|(id, &e)| (e, regularity_of(g.activation_by_id(id), rule)))
                .collect(),
        );
        table
    }

    /// Frequency of `e` in any orientation accepted by the graph it came from.
    pub fn get(&self, e: Edge) -> Option<usize> {
        self.per_edge
            .get(&e)
            .or_else(|| self.per_edge.get(&e.canonical()))
            .copied()
    }

    pub fn regularity(&self, e: Edge) -> Option<usize> {
        let r = self.per_edge_regularity.as_ref()?;
        r.get(&e).or_else(|| r.get(&e.canonical())).copied()
    }

    /// `(edge, f_e, r_e)` rows in lexicographic edge order.
    pub fn rows(&self) -> impl Iterator<Item = (Edge, usize, Option<usize>)> + '_ {
        self.per_edge
            .iter()
            .map(move |(&e, &f)| (e, f, self.regularity(e)))
    }
}

pub fn frequency_table(g: &TemporalGraph) -> FrequencyTable {
    FrequencyTable::compute(g)
}

/// Frequency of the broadcast activity of `v`: how often `v` sends to all its neighbours.
///
/// The graph must pass [`validate_broadcast`].
pub fn vertex_frequency(g: &TemporalGraph, v: Vertex) -> Result<usize> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let (report, schedule) = validate_broadcast(g);
    if let Some(first) = report.violations.first() {
        return Err(Error::NotBroadcast(format!("{} {}", first.rule.id(), first.detail)));
    }
    let pattern = schedule.activation(v);
    if pattern.count() == 0 {
        return Err(Error::NeverActive(v));
    }
    Ok(frequency_of(pattern.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    /// Definition check: smallest `f` such that every window of `f` consecutive
    /// timesteps in `[1, T]` holds an activation.
    fn naive_frequency(active: &[bool]) -> usize {
        let t = active.len();
        (1..=t)
            .find(|&f| (0..=t - f).all(|s| active[s..s + f].iter().any(|&x| x)))
            .unwrap_or(t + 1)
    }

    fn naive_regularity(active: &[bool]) -> usize {
        let t = active.len();
        let at = |i: usize| active[i - 1];
        (1..=t)
            .find(|&r| {
                (r + 1..=t.saturating_sub(r)).all(|x| at(x - r) == at(x) && at(x) == at(x + r))
            })
            .unwrap()
    }

    fn pattern(t: usize, on: &[usize]) -> Vec<bool> {
        (1..=t).map(|x| on.contains(&x)).collect()
    }

    fn single_edge(t: usize, on: &[usize]) -> TemporalGraph {
        TemporalGraph::from_snapshots(
            2,
            false,
            (1..=t).map(|x| if on.contains(&x) { alloc::vec![(0, 1)] } else { alloc::vec![] }),
        )
        .unwrap()
    }

    const E: Edge = Edge::new(0, 1);

    #[test]
    fn frozen_frequency_values_match_definition() {
        assert_eq!(naive_frequency(&pattern(6, &[1, 4, 6])), 3);
        assert_eq!(naive_frequency(&pattern(5, &[1])), 5);
        assert_eq!(naive_frequency(&pattern(4, &[4])), 4);
        assert_eq!(naive_frequency(&pattern(5, &[2, 5])), 3);
        assert_eq!(naive_regularity(&pattern(6, &[1, 3, 5])), 2);
        assert_eq!(naive_regularity(&pattern(6, &[1, 4])), 3);
    }

    #[test]
    fn edge_frequency_examples() {
        assert_eq!(edge_frequency(&single_edge(5, &[1, 2, 3, 4, 5]), E), Ok(1));
        assert_eq!(edge_frequency(&single_edge(6, &[1, 4, 6]), E), Ok(3));
        assert_eq!(edge_frequency(&single_edge(5, &[1]), E), Ok(5));
        assert_eq!(edge_frequency(&single_edge(4, &[4]), E.reversed()), Ok(4));
    }

    #[test]
    fn missing_edge_is_an_error() {
        let g = TemporalGraph::from_snapshots(3, false, [[(0, 1)]]).unwrap();
        assert_eq!(edge_frequency(&g, Edge::new(1, 2)), Err(Error::EdgeNotInGraph(Edge::new(1, 2))));
        assert_eq!(edge_regularity(&g, Edge::new(2, 1)), Err(Error::EdgeNotInGraph(Edge::new(1, 2))));
    }

    #[test]
    fn edge_regularity_examples() {
        assert_eq!(edge_regularity(&single_edge(5, &[1, 2, 3, 4, 5]), E), Ok(1));
        assert_eq!(edge_regularity(&single_edge(6, &[1, 3, 5]), E), Ok(2));
        assert_eq!(edge_regularity(&single_edge(6, &[1, 4]), E), Ok(3));
    }

    #[test]
    fn two_point_rule_differs_on_sparse_patterns() {
        let g = single_edge(6, &[1, 4]);
        assert_eq!(edge_regularity_with(&g, E, RegularityRule::TwoPoint), Ok(3));
        let g = single_edge(5, &[2]);
        assert_eq!(edge_regularity_with(&g, E, RegularityRule::ThreePoint), Ok(2));
        assert_eq!(edge_regularity_with(&g, E, RegularityRule::TwoPoint), Ok(4));
    }

    // The three-point condition leaves a residue class with only two members
    // unconstrained, so regularity can undercut frequency even when T >= 2r + 1.
    #[test]
    fn three_point_regularity_can_be_below_frequency() {
        let g = single_edge(5, &[2]);
        assert_eq!(edge_regularity(&g, E), Ok(2));
        assert_eq!(edge_frequency(&g, E), Ok(4));
    }

    #[test]
    fn table_examples() {
        // three snapshots repeated: each edge appears once per period of 3
        let period = [alloc::vec![(0, 1)], alloc::vec![(1, 2)], alloc::vec![(0, 2), (2, 3)]];
        let g = TemporalGraph::from_snapshots(4, false, (0..12).map(|i| period[i % 3].clone())).unwrap();
        let ft = frequency_table(&g);
        assert_eq!(ft.per_edge.len(), 4);
        assert!(ft.per_edge.values().all(|&f| f <= 3));
        assert_eq!(ft.max_frequency, 3);

        let g = TemporalGraph::from_snapshots(3, false, [[(0, 1), (1, 2)]]).unwrap();
        assert!(frequency_table(&g).per_edge.values().all(|&f| f == 1));
    }

    fn round_robin(n: usize, lifetime: usize) -> TemporalGraph {
        let snaps = (1..=lifetime).map(|t| {
            let v = (t - 1) % n;
            (0..n).filter(move |&u| u != v).map(move |u| (v, u))
        });
        TemporalGraph::from_snapshots(n, true, snaps).unwrap()
    }

    #[test]
    fn vertex_frequency_examples() {
        // every vertex active every timestep
        let all = TemporalGraph::from_snapshots(2, true, (0..4).map(|_| [(0, 1), (1, 0)])).unwrap();
        assert_eq!(vertex_frequency(&all, 0), Ok(1));

        let rr = round_robin(4, 12);
        for v in 0..4 {
            assert_eq!(vertex_frequency(&rr, v), Ok(4));
        }

        // v=0 active at {2, 5}; vertex 1 active at {1, 3} acknowledges in between
        let snaps: [&[(usize, usize)]; 5] = [&[(1, 0)], &[(0, 1)], &[(1, 0)], &[], &[(0, 1)]];
        let g = TemporalGraph::from_snapshots(2, true, snaps.iter().map(|s| s.iter().copied())).unwrap();
        assert_eq!(vertex_frequency(&g, 0), Ok(3));
    }

    #[test]
    fn vertex_frequency_rejects_non_broadcast() {
        let full = alloc::vec![(0, 1), (1, 0), (2, 0), (0, 2)];
        let g = TemporalGraph::from_snapshots(3, true, [full.clone(), full.clone()]).unwrap();
        assert_eq!(vertex_frequency(&g, 0), Ok(1));
        let partial = TemporalGraph::from_snapshots(3, true, [full, alloc::vec![(0, 1)]]).unwrap();
        assert!(matches!(vertex_frequency(&partial, 0), Err(Error::NotBroadcast(_))));
    }

    proptest! {
        #[test]
        fn frequency_matches_window_definition(bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            prop_assert_eq!(frequency_of(bits.iter().copied()), naive_frequency(&bits));
        }

        #[test]
        fn frequency_is_exactly_minimal(bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            prop_assume!(bits.iter().any(|&b| b));
            let f = frequency_of(bits.iter().copied());
            let t = bits.len();
            prop_assert!(f >= 1 && f <= t);
            prop_assert!(bits.windows(f).all(|w| w.iter().any(|&b| b)));
            if f > 1 {
                prop_assert!(bits.windows(f - 1).any(|w| w.iter().all(|&b| !b)));
            }
        }

        #[test]
        fn regularity_matches_brute_force(bits in proptest::collection::vec(any::<bool>(), 1..80)) {
            let a = Activation::from_timesteps(bits.len(), (1..=bits.len()).filter(|&t| bits[t - 1]));
            prop_assert_eq!(regularity_of(&a, RegularityRule::ThreePoint), naive_regularity(&bits));
        }

        #[test]
        fn periodic_patterns_have_regularity_at_most_period(
            base in proptest::collection::vec(any::<bool>(), 1..12),
            reps in 1usize..10,
        ) {
            prop_assume!(base.iter().any(|&b| b));
            let p = base.len();
            let t = p * reps;
            let a = Activation::from_timesteps(t, (1..=t).filter(|&x| base[(x - 1) % p]));
            prop_assert!(regularity_of(&a, RegularityRule::ThreePoint) <= p);
            prop_assert!(regularity_of(&a, RegularityRule::TwoPoint) <= p);
        }

        #[test]
        fn table_is_pointwise_consistent(
            instances in proptest::collection::vec((1usize..=30, 0usize..6, 0usize..6), 1..60)
        ) {
            let mut b = crate::TemporalGraphBuilder::new(6, 30, false).allow_self_loops(true);
            for &(t, u, v) in &instances { b.add(t, u, v); }
            let g = b.build().unwrap();
            let ft = FrequencyTable::with_regularity(&g, RegularityRule::ThreePoint);
            for &e in g.edges() {
                prop_assert_eq!(ft.get(e), Some(edge_frequency(&g, e).unwrap()));
                prop_assert_eq!(ft.regularity(e), Some(edge_regularity(&g, e).unwrap()));
            }
        }
    }
}
