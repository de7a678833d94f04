//! Loose paths and stars in hypergraphs and colorings.

use std::fmt;

use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{invalid, Error};
use crate::hypergraph::{binomial_u64, Edge, Hypergraph};

/// Number of edges in a loose path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PathLength {
    Two,
    Three,
}

impl PathLength {
    pub fn edges(self) -> usize {
        match self {
            PathLength::Two => 2,
            PathLength::Three => 3,
        }
    }

    /// Vertices spanned by a loose k-path of this length.
    pub fn vertices(self, k: usize) -> usize {
        match self {
            PathLength::Two => 2 * k - 1,
            PathLength::Three => 3 * k - 2,
        }
    }
}

impl TryFrom<usize> for PathLength {
    type Error = Error;

    fn try_from(len: usize) -> Result<Self, Error> {
        match len {
            2 => Ok(PathLength::Two),
            3 => Ok(PathLength::Three),
            _ => Err(invalid(format!(
                "loose path length must be 2 or 3, got {len}"
            ))),
        }
    }
}

impl fmt::Display for PathLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.edges())
    }
}

/// Consecutive edges of a loose path with their shared vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoosePathWitness {
    pub edges: Vec<Edge>,
    pub links: Vec<usize>,
}

impl LoosePathWitness {
    /// Checks the intersection pattern from the edges alone.
    pub fn is_well_formed(&self) -> bool {
        let consecutive_ok = self.edges.len() == self.links.len() + 1
            && self.edges.windows(2).zip(&self.links).all(|(w, &l)| {
                let shared = w[0].intersection(w[1]);
                shared.len() == 1 && shared.first() == Some(l)
            });
        let ends_ok = match self.edges.len() {
            2 => true,
            3 => self.edges[0].is_disjoint(self.edges[2]),
            _ => false,
        };
        consecutive_ok && ends_ok
    }

    /// Well formed and every edge belongs to `host`.
    pub fn is_valid_in(&self, host: &Hypergraph) -> bool {
        self.is_well_formed() && self.edges.iter().all(|&e| host.contains_edge(e))
    }
}

/// Edge lists through each vertex, in canonical order.
fn incidence(h: &Hypergraph) -> Vec<Vec<usize>> {
    let mut through = vec![Vec::new(); h.vertex_count()];
    for (i, e) in h.edges().iter().enumerate() {
        for v in e.vertices() {
            through[v].push(i);
        }
    }
    through
}

/// Finds a loose path of the given length, or `None` if `h` has none.
///
/// Length three scans middle edges `e2` and ordered link pairs `(a, b)` in
/// `e2`, then edges through `a` and `b` meeting `e2` only there and each
/// other not at all. Length two scans edges sharing exactly one vertex.
/// Iteration is canonical, so the witness is deterministic.
pub fn find_loose_path(h: &Hypergraph, length: PathLength) -> Option<LoosePathWitness> {
    let k = h.uniformity();
    if h.edge_count() < length.edges() || h.support().len() < length.vertices(k) {
        return None;
    }
    let edges = h.edges();
    let through = incidence(h);
    match length {
        PathLength::Two => {
            for (i, &e1) in edges.iter().enumerate() {
                for a in e1.vertices() {
                    for &j in through[a].iter().filter(|&&j| j > i) {
                        if e1.intersection_size(edges[j]) == 1 {
                            return Some(LoosePathWitness {
                                edges: vec![e1, edges[j]],
                                links: vec![a],
                            });
                        }
                    }
                }
            }
            None
        }
        PathLength::Three => {
            // Two edges of a star always share its center.
            if is_star(h).is_some() {
                return None;
            }
            // outer[i]: edges through the i-th vertex of e2 meeting e2 only
            // there, with their union.
            let mut outer: Vec<(usize, Vec<usize>, Edge)> = Vec::with_capacity(k);
            for &e2 in edges {
                outer.clear();
                for a in e2.vertices() {
                    let list: Vec<usize> = through[a]
                        .iter()
                        .copied()
                        .filter(|&i| edges[i].intersection_size(e2) == 1)
                        .collect();
                    let span = list.iter().fold(Edge::EMPTY, |acc, &i| acc.union(edges[i]));
                    outer.push((a, list, span));
                }
                for (a, firsts, span_a) in &outer {
                    for (b, lasts, span_b) in outer.iter().filter(|o| o.0 != *a) {
                        // e1 - a and e3 - b are disjoint (k-1)-sets outside e2.
                        let room = span_a.union(*span_b).union(e2).len() - k;
                        if firsts.is_empty() || lasts.is_empty() || room < 2 * (k - 1) {
                            continue;
                        }
                        for &i1 in firsts {
                            let e1 = edges[i1];
                            if let Some(&i3) = lasts.iter().find(|&&i3| edges[i3].is_disjoint(e1)) {
                                return Some(LoosePathWitness {
                                    edges: vec![e1, e2, edges[i3]],
                                    links: vec![*a, *b],
                                });
                            }
                        }
                    }
                }
            }
            None
        }
    }
}

/// Smallest vertex lying in every edge. An edgeless hypergraph is treated
/// as a star centered at 0.
pub fn is_star(h: &Hypergraph) -> Option<usize> {
    if h.is_empty() {
        return Some(0);
    }
    let common = h
        .edges()
        .iter()
        .fold(Edge::from_mask(u128::MAX), |acc, &e| acc.intersection(e));
    common.first()
}

/// A star whose center has degree `C(n-1, k-1)`. Never true when edgeless.
pub fn is_full_star(h: &Hypergraph) -> bool {
    if h.is_empty() {
        return false;
    }
    let full = binomial_u64(h.vertex_count() as u64 - 1, h.uniformity() as u64 - 1);
    is_star(h).is_some() && full == Some(h.edge_count() as u64)
}

/// Finds a color class containing a loose path, smallest color first.
pub fn find_mono_loose_path(c: &Coloring, length: PathLength) -> Option<(u32, LoosePathWitness)> {
    (1..=c.color_count())
        .find_map(|color| find_loose_path(&c.class(color), length).map(|w| (color, w)))
}
