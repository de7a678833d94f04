//! Degree peeling of hypergraphs and bipartite graphs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

/// Result of [`peel_min_degree`]: the surviving vertices and the edges
/// among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peeled {
    pub hypergraph: Hypergraph,
    pub vertices: BTreeSet<usize>,
    /// `|E(H)| / |V(H)|` of the input.
    pub threshold: BigRational,
}

impl Peeled {
    pub fn min_degree(&self) -> usize {
        let deg = self.hypergraph.degrees();
        self.vertices.iter().map(|&v| deg[v]).min().unwrap_or(0)
    }
}

/// Repeatedly deletes the smallest vertex whose current degree is at most
/// `t = |E(H)| / n`, with `t` fixed from the input. Every survivor then has
/// degree strictly above `t`.
///
/// Each deletion removes at most `t` edges, so emptying the hypergraph would
/// need every one of the `n` deletions to remove exactly `t` edges. For
/// `k >= 2` the last vertices removed are isolated, forcing `|E| = 0`; the
/// empty outcome is reported as an internal error rather than assumed away.
pub fn peel_min_degree(h: &Hypergraph) -> Result<Peeled> {
    let m = h.edge_count();
    let n = h.vertex_count();
    if m == 0 {
        return Err(invalid("peeling needs at least one edge"));
    }
    let edges = h.edges();
    let mut alive_edge = vec![true; m];
    let mut deg = h.degrees();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut incident = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        for v in e.vertices() {
            incident[v].push(i);
        }
    }
    // deg <= m / n  <=>  deg * n <= m
    while let Some(v) = alive.iter().copied().find(|&v| deg[v] * n <= m) {
        alive.remove(&v);
        for &i in &incident[v] {
            if alive_edge[i] {
                alive_edge[i] = false;
                for u in edges[i].vertices() {
                    deg[u] -= 1;
                }
            }
        }
    }
    let kept: Vec<Edge> = edges
        .iter()
        .zip(&alive_edge)
        .filter(|(_, &a)| a)
        .map(|(&e, _)| e)
        .collect();
    if kept.is_empty() {
        return Err(Error::Internal(
            "degree peel removed every edge".to_string(),
        ));
    }
    Ok(Peeled {
        hypergraph: Hypergraph::from_valid(h.uniformity(), n, kept),
        vertices: alive,
        threshold: BigRational::new(BigInt::from(m), BigInt::from(n)),
    })
}

/// A bipartite graph with left vertices, right vertices and edges stored as
/// `(left, right)` pairs. The two sides are separate id spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteGraph {
    left: BTreeSet<usize>,
    right: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(
        left: impl IntoIterator<Item = usize>,
        right: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let left: BTreeSet<usize> = left.into_iter().collect();
        let right: BTreeSet<usize> = right.into_iter().collect();
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges
            .iter()
            .find(|(a, b)| !left.contains(a) || !right.contains(b))
        {
            return Err(invalid(format!(
                "edge ({a}, {b}) does not join the left and right classes"
            )));
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    /// Vertex/co-edge incidences of `h`: left side is `V(H)`, right side
    /// indexes the shadow of `h`, and `v ~ f` whenever `{v} ∪ f` is an edge.
    /// Has exactly `k |H|` edges. Returns the shadow sets by right id.
    pub fn vertex_shadow_incidence(h: &Hypergraph) -> Result<(Self, Vec<Edge>)> {
        let shadow = h.shadow()?;
        let labels = shadow.edges().to_vec();
        let index: BTreeMap<Edge, usize> =
            labels.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut pairs = BTreeSet::new();
        for e in h.edges() {
            for v in e.vertices() {
                pairs.insert((v, index[&e.without(v)]));
            }
        }
        let graph = BipartiteGraph {
            left: (0..h.vertex_count()).collect(),
            right: (0..labels.len()).collect(),
            edges: pairs,
        };
        Ok((graph, labels))
    }

    pub fn left(&self) -> &BTreeSet<usize> {
        &self.left
    }

    pub fn right(&self) -> &BTreeSet<usize> {
        &self.right
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn left_degrees(&self) -> BTreeMap<usize, usize> {
        let mut d: BTreeMap<usize, usize> = self.left.iter().map(|&v| (v, 0)).collect();
        for &(a, _) in &self.edges {
            *d.get_mut(&a).expect("validated") += 1;
        }
        d
    }

    pub fn right_degrees(&self) -> BTreeMap<usize, usize> {
        let mut d: BTreeMap<usize, usize> = self.right.iter().map(|&v| (v, 0)).collect();
        for &(_, b) in &self.edges {
            *d.get_mut(&b).expect("validated") += 1;
        }
        d
    }
}

/// Keeps a nonempty subgraph in which every surviving left vertex has
/// degree at least `|B| / (2|V1|)` and every right vertex at least
/// `|B| / (2|V2|)`, thresholds fixed from the input.
///
/// Vertices below their threshold are removed one at a time (left side
/// first, smallest id first). Fewer than `|B|` edges can be lost this way,
/// so an empty result is an internal error.
pub fn prune_bipartite(b: &BipartiteGraph) -> Result<BipartiteGraph> {
    let total = b.edge_count();
    let (n1, n2) = (b.left.len(), b.right.len());
    if total == 0 || n1 == 0 || n2 == 0 {
        return Err(invalid(
            "pruning needs at least one edge and two nonempty classes",
        ));
    }
    let mut left_deg = b.left_degrees();
    let mut right_deg = b.right_degrees();
    let mut edges = b.edges.clone();
    let mut left = b.left.clone();
    let mut right = b.right.clone();
    // deg >= total / (2 n_i)  <=>  2 n_i deg >= total
    loop {
        if let Some(v) = left.iter().copied().find(|v| 2 * n1 * left_deg[v] < total) {
            left.remove(&v);
            let gone: Vec<_> = edges.range((v, 0)..=(v, usize::MAX)).copied().collect();
            for (a, f) in gone {
                edges.remove(&(a, f));
                *right_deg.get_mut(&f).expect("validated") -= 1;
            }
            left_deg.insert(v, 0);
            continue;
        }
        if let Some(f) = right
            .iter()
            .copied()
            .find(|f| 2 * n2 * right_deg[f] < total)
        {
            right.remove(&f);
            let gone: Vec<_> = edges.iter().filter(|e| e.1 == f).copied().collect();
            for (a, g) in gone {
                edges.remove(&(a, g));
                *left_deg.get_mut(&a).expect("validated") -= 1;
            }
            right_deg.insert(f, 0);
            continue;
        }
        break;
    }
    if edges.is_empty() {
        return Err(Error::Internal(
            "bipartite pruning removed every edge".to_string(),
        ));
    }
    Ok(BipartiteGraph { left, right, edges })
}
