//! Seeded random instances and the postcondition suite over them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::partition::{derandomized_split, greedy_tripartition, WeightedVertices};
use super::peel::{peel_min_degree, prune_bipartite, BipartiteGraph};
use crate::hypergraph::{Edge, Hypergraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_set<R: Rng>(rng: &mut R, n: usize, size: usize) -> Edge {
    Edge::from_vertices(sample(rng, n, size)).expect("in range")
}

/// A k-graph with `2 <= k <= max_k`, `k <= n <= max_n` and at least one edge.
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_n: usize, max_k: usize) -> Hypergraph {
    let k = rng.random_range(2..=max_k);
    let n = rng.random_range(k..=max_n.max(k));
    let tries = rng.random_range(1..=4 * n);
    let edges: Vec<Edge> = (0..tries).map(|_| random_set(rng, n, k)).collect();
    Hypergraph::from_valid(k, n, edges)
}

/// A bipartite graph with up to `max_side` vertices per class and at least
/// one edge.
pub fn random_bipartite<R: Rng>(rng: &mut R, max_side: usize) -> BipartiteGraph {
    let a = rng.random_range(1..=max_side);
    let b = rng.random_range(1..=max_side);
    let p: f64 = rng.random_range(0.05..0.9);
    let mut edges: Vec<(usize, usize)> = (0..a)
        .flat_map(|x| (0..b).map(move |y| (x, y)))
        .filter(|_| rng.random_bool(p))
        .collect();
    if edges.is_empty() {
        edges.push((rng.random_range(0..a), rng.random_range(0..b)));
    }
    BipartiteGraph::new(0..a, 0..b, edges).expect("valid by construction")
}

/// Up to `max_len` rational weights with small numerators and denominators.
pub fn random_weights<R: Rng>(rng: &mut R, max_len: usize) -> WeightedVertices {
    let len = rng.random_range(0..=max_len);
    WeightedVertices::new((0..len).map(|v| {
        let num: i64 = rng.random_range(0..=50);
        let den: i64 = rng.random_range(1..=12);
        (v, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }))
    .expect("nonnegative")
}

/// Random apex assignments on `(k-1)`-sets of `0..n`.
pub fn random_assignments<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_k: usize,
) -> (BTreeMap<Edge, usize>, usize, usize) {
    let k = rng.random_range(2..=max_k);
    let n = rng.random_range(k..=max_n.max(k));
    let count = rng.random_range(0..=3 * n);
    let mut map = BTreeMap::new();
    for _ in 0..count {
        let s = random_set(rng, n, k);
        let apex = s
            .vertices()
            .nth(rng.random_range(0..k))
            .expect("k vertices");
        map.insert(s.without(apex), apex);
    }
    (map, n, k)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl CheckTally {
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.first_failure.get_or_insert_with(detail);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub instances: usize,
    pub checks: Vec<CheckTally>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }
}

/// Runs the postcondition checks of peel, prune, tripartition and split on
/// `instances` random inputs each (`n <= 20`, `k <= 5`).
pub fn property_suite(seed: u64, instances: usize) -> SuiteReport {
    let mut rng = rng(seed);
    let mut peel = CheckTally {
        name: "peel_min_degree",
        ..Default::default()
    };
    let mut prune = CheckTally {
        name: "prune_bipartite",
        ..Default::default()
    };
    let mut tri = CheckTally {
        name: "greedy_tripartition",
        ..Default::default()
    };
    let mut split = CheckTally {
        name: "derandomized_split",
        ..Default::default()
    };

    for _ in 0..instances {
        let h = random_hypergraph(&mut rng, 20, 5);
        let ok = peel_min_degree(&h).is_ok_and(|p| {
            let deg = p.hypergraph.degrees();
            !p.hypergraph.is_empty()
                && p.vertices
                    .iter()
                    .all(|&v| deg[v] * h.vertex_count() > h.edge_count())
                && p.hypergraph.edges().iter().all(|&e| h.contains_edge(e))
        });
        peel.record(ok, || h.to_text());

        let b = random_bipartite(&mut rng, 12);
        let total = b.edge_count();
        let (n1, n2) = (b.left().len(), b.right().len());
        let ok = prune_bipartite(&b).is_ok_and(|g| {
            g.edge_count() > 0
                && g.edges().is_subset(b.edges())
                && g.left_degrees().values().all(|&d| 2 * n1 * d >= total)
                && g.right_degrees().values().all(|&d| 2 * n2 * d >= total)
        });
        prune.record(ok, || format!("{b:?}"));

        let w = random_weights(&mut rng, 20);
        let t = greedy_tripartition(&w);
        let covered: usize = t.parts.iter().map(|p| p.len()).sum();
        let ok = covered == w.len() && t.gap() <= w.max_weight();
        tri.record(ok, || format!("{w:?}"));

        let (a, n, k) = random_assignments(&mut rng, 20, 5);
        let ok = derandomized_split(&a, n, k).is_ok_and(|s| {
            s.expectation_is_met() && s.u1.len() + s.u2.len() == n && s.u1.is_disjoint(&s.u2)
        });
        split.record(ok, || format!("n={n} k={k} {a:?}"));
    }
    SuiteReport {
        seed,
        instances,
        checks: vec![peel, prune, tri, split],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_reproducible_and_green() {
        let a = property_suite(7, 50);
        let b = property_suite(7, 50);
        assert!(a.all_passed(), "{a:?}");
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
