//! Enumeration of loose-path copies in complete k-graphs.

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{binomial_u64, complete_edges, Edge, MAX_VERTICES};
use crate::patterns::PathLength;

/// Largest complete host the search engines will index.
pub const MAX_HOST_EDGES: u64 = 20_000;

/// Canonically ordered edges of `K_n^(k)` with vertex incidences.
#[derive(Clone, Debug)]
pub(crate) struct HostIndex {
    pub edges: Vec<Edge>,
    pub through: Vec<Vec<u32>>,
}

impl HostIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || n > MAX_VERTICES {
            return Err(invalid(format!("unsupported host K_{n}^({k})")));
        }
        match binomial_u64(n as u64, k as u64) {
            Some(m) if m <= MAX_HOST_EDGES => {}
            _ => {
                return Err(Error::TooLarge(format!(
                    "K_{n}^({k}) has more than {MAX_HOST_EDGES} edges"
                )))
            }
        }
        let edges = complete_edges(n, k);
        let mut through = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for v in e.vertices() {
                through[v].push(i as u32);
            }
        }
        Ok(HostIndex { edges, through })
    }

    /// Loose 3-paths as index triples `(e1, e2, e3)` with `e1 < e3`, sorted.
    pub fn three_paths(&self) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for (i2, &e2) in self.edges.iter().enumerate() {
            for a in e2.vertices() {
                for b in e2.vertices().filter(|&b| b != a) {
                    for &i1 in &self.through[a] {
                        let e1 = self.edges[i1 as usize];
                        if e1.intersection_size(e2) != 1 {
                            continue;
                        }
                        let blocked = e1.union(e2).without(b);
                        for &i3 in &self.through[b] {
                            if i1 < i3 && self.edges[i3 as usize].is_disjoint(blocked) {
                                out.push([i1, i2 as u32, i3]);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Pairs of edges sharing exactly one vertex, `e1 < e2`, sorted.
    pub fn two_paths(&self) -> Vec<[u32; 2]> {
        let mut out = Vec::new();
        for (i1, &e1) in self.edges.iter().enumerate() {
            for a in e1.vertices() {
                for &i2 in &self.through[a] {
                    if i2 as usize > i1 && e1.intersection_size(self.edges[i2 as usize]) == 1 {
                        out.push([i1 as u32, i2]);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Every copy of the loose path of the given length in `K_n^(k)`, once per
/// copy (a path and its reversal count once), in canonical order.
pub fn enumerate_loose_paths(n: usize, k: usize, length: PathLength) -> Result<Vec<Vec<Edge>>> {
    if n == 0 || k < 2 {
        return Err(invalid("enumeration needs n >= 1 and k >= 2"));
    }
    if n < k {
        return Ok(Vec::new());
    }
    let host = HostIndex::new(n, k)?;
    let lift = |ids: &[u32]| ids.iter().map(|&i| host.edges[i as usize]).collect();
    Ok(match length {
        PathLength::Two => host.two_paths().iter().map(|p| lift(p)).collect(),
        PathLength::Three => host.three_paths().iter().map(|p| lift(p)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    /// Unordered copies by brute force over edge triples/pairs.
    fn brute_force(n: usize, k: usize, length: PathLength) -> usize {
        let edges = complete_edges(n, k);
        match length {
            PathLength::Two => edges
                .iter()
                .tuple_combinations()
                .filter(|(a, b)| a.intersection_size(**b) == 1)
                .count(),
            PathLength::Three => {
                let ordered = edges
                    .iter()
                    .permutations(3)
                    .filter(|p| {
                        p[0].intersection_size(*p[1]) == 1
                            && p[1].intersection_size(*p[2]) == 1
                            && p[0].is_disjoint(*p[2])
                    })
                    .count();
                ordered / 2
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(
            enumerate_loose_paths(4, 2, PathLength::Three)
                .unwrap()
                .len(),
            12
        );
        assert_eq!(
            enumerate_loose_paths(7, 3, PathLength::Three)
                .unwrap()
                .len(),
            630
        );
        assert_eq!(
            enumerate_loose_paths(5, 3, PathLength::Two).unwrap().len(),
            15
        );
        assert!(enumerate_loose_paths(6, 3, PathLength::Three)
            .unwrap()
            .is_empty());
        assert!(enumerate_loose_paths(2, 3, PathLength::Two)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn counts_match_brute_force() {
        for (n, k) in [(4, 2), (5, 2), (6, 2), (7, 3), (5, 3), (7, 4)] {
            for len in [PathLength::Two, PathLength::Three] {
                assert_eq!(
                    enumerate_loose_paths(n, k, len).unwrap().len(),
                    brute_force(n, k, len),
                    "n={n} k={k} len={len}"
                );
            }
        }
        // 35 middles, 6 ordered link pairs, 6 first edges, 1 last edge, halved.
        assert_eq!(35 * 6 * 6 / 2, 630);
    }

    #[test]
    fn copies_are_distinct_and_canonical() {
        let paths = enumerate_loose_paths(6, 2, PathLength::Three).unwrap();
        assert!(paths.windows(2).all(|w| w[0] < w[1]));
        assert!(paths.iter().all(|p| p[0] < p[2]));
    }
}
