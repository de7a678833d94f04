//! Canonical k-uniform hypergraphs on dense vertex ids.
//!
//! Edges are bitsets over at most [`MAX_VERTICES`] vertices. Their ordering is
//! lexicographic on the ascending vertex sequences, so a sorted edge list is
//! the canonical edge order used by every search and serializer in the crate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{invalid, parse_err, Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 128;

/// A set of vertices, stored as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Edge(u128);

impl Edge {
    pub const EMPTY: Edge = Edge(0);

    /// Builds an edge from distinct vertex ids below [`MAX_VERTICES`].
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut mask = 0u128;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            if mask & (1 << v) != 0 {
                return Err(invalid(format!("vertex {v} repeated in edge")));
            }
            mask |= 1 << v;
        }
        Ok(Edge(mask))
    }

    #[inline]
    pub const fn from_mask(mask: u128) -> Self {
        Edge(mask)
    }

    #[inline]
    pub const fn mask(self) -> u128 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    #[inline]
    pub const fn intersection_size(self, other: Edge) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    #[inline]
    pub const fn is_disjoint(self, other: Edge) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: Edge) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn union(self, other: Edge) -> Edge {
        Edge(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Edge) -> Edge {
        Edge(self.0 & other.0)
    }

    #[inline]
    pub const fn with(self, v: usize) -> Edge {
        Edge(self.0 | (1 << v))
    }

    #[inline]
    pub const fn without(self, v: usize) -> Edge {
        Edge(self.0 & !(1 << v))
    }

    /// Smallest vertex, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest vertex, if any.
    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    /// Vertices in ascending order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }
}

/// Ascending iterator over the vertices of an [`Edge`].
#[derive(Clone)]
pub struct Vertices(u128);

impl Iterator for Vertices {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Vertices {}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        if self.len() == other.len() {
            // For equal-size sets the lowest differing vertex decides.
            let low = (self.0 ^ other.0).trailing_zeros();
            if self.0 & (1 << low) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else {
            self.vertices().cmp(other.vertices())
        }
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices().format(" "))
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices())
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn complete_edges(n: usize, k: usize) -> Vec<Edge> {
    (0..n)
        .combinations(k)
        .map(|c| Edge(c.into_iter().fold(0u128, |m, v| m | (1 << v))))
        .collect()
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

/// A k-uniform hypergraph on vertices `0..n` with canonically ordered edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Edge>,
}

impl Hypergraph {
    /// Validates and canonicalizes an edge set. Duplicate edges are rejected.
    pub fn new<I: IntoIterator<Item = Edge>>(k: usize, n: usize, edges: I) -> Result<Self> {
        check_shape(k, n)?;
        let mut list: Vec<Edge> = edges.into_iter().collect();
        for &e in &list {
            check_edge(k, n, e)?;
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate edge {{{}}}", w[0])));
        }
        Ok(Hypergraph { k, n, edges: list })
    }

    /// Builds from vertex lists, e.g. `&[&[0, 1, 2], &[0, 3, 4]]`.
    pub fn from_lists<L: AsRef<[usize]>>(k: usize, n: usize, lists: &[L]) -> Result<Self> {
        let edges = lists
            .iter()
            .map(|l| Edge::from_vertices(l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, n, edges)
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, std::iter::empty())
    }

    /// Deduplicating constructor for edges already known to be valid.
    pub(crate) fn from_valid(k: usize, n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges.iter().all(|&e| check_edge(k, n, e).is_ok()));
        Hypergraph { k, n, edges }
    }

    /// The complete k-graph on `n` vertices.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k < 2 || k > n {
            return Err(invalid(format!(
                "complete hypergraph needs 2 <= k <= n (got k = {k}, n = {n})"
            )));
        }
        check_shape(k, n)?;
        Ok(Hypergraph {
            k,
            n,
            edges: complete_edges(n, k),
        })
    }

    #[inline]
    pub fn uniformity(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in canonical order.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Union of all edges.
    pub fn support(&self) -> Edge {
        self.edges.iter().fold(Edge::EMPTY, |acc, &e| acc.union(e))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(v)).count())
    }

    /// Degree of every vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for v in e.vertices() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Vertex of maximum degree, ties to the smallest id. `(0, 0)` when
    /// there is nothing to choose from.
    pub fn max_degree(&self) -> (usize, usize) {
        let mut best = (0, 0);
        for (v, d) in self.degrees().into_iter().enumerate() {
            if d > best.1 {
                best = (v, d);
            }
        }
        best
    }

    /// The link `H(v)`: edges through `v` with `v` removed, as a
    /// `(k-1)`-graph on the same vertex range.
    pub fn link(&self, v: usize) -> Result<Hypergraph> {
        self.check_vertex(v)?;
        let edges = self
            .edges
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| e.without(v))
            .collect();
        Ok(Hypergraph::from_valid(self.k - 1, self.n, edges))
    }

    /// All (k-1)-sets contained in some edge.
    pub fn shadow(&self) -> Result<Hypergraph> {
        if self.k < 2 {
            return Err(invalid("shadow needs k >= 2"));
        }
        let mut set = BTreeSet::new();
        for e in &self.edges {
            for v in e.vertices() {
                set.insert(e.without(v));
            }
        }
        Ok(Hypergraph {
            k: self.k - 1,
            n: self.n,
            edges: set.into_iter().collect(),
        })
    }

    /// Number of edges containing each shadow set.
    pub fn shadow_multiplicity(&self) -> Result<MultiplicityMap> {
        if self.k < 2 {
            return Err(invalid("shadow multiplicity needs k >= 2"));
        }
        let mut counts = BTreeMap::new();
        for e in &self.edges {
            for v in e.vertices() {
                *counts.entry(e.without(v)).or_insert(0) += 1;
            }
        }
        Ok(MultiplicityMap {
            k: self.k - 1,
            n: self.n,
            counts,
        })
    }

    /// Induced subhypergraph on the complement of `removed`. Vertex ids and
    /// `n` are kept.
    pub fn remove_vertices<I: IntoIterator<Item = usize>>(&self, removed: I) -> Result<Hypergraph> {
        let mut mask = 0u128;
        for v in removed {
            self.check_vertex(v)?;
            mask |= 1 << v;
        }
        let gone = Edge::from_mask(mask);
        Ok(Hypergraph {
            k: self.k,
            n: self.n,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| e.is_disjoint(gone))
                .collect(),
        })
    }

    /// Subhypergraph keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(Edge) -> bool) -> Hypergraph {
        Hypergraph {
            k: self.k,
            n: self.n,
            edges: self.edges.iter().copied().filter(|&e| keep(e)).collect(),
        }
    }

    /// Canonical text form (`k n m` header, one edge per line).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.k, self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let fields = parse_numbers(hline, header)?;
        let [k, n, m] = fields[..] else {
            return Err(parse_err(hline, "header must be `k n m`"));
        };
        check_shape(k, n).map_err(|e| parse_err(hline, e.to_string()))?;
        let mut edges = Vec::with_capacity(m);
        let mut seen = BTreeSet::new();
        for (line, body) in lines {
            let e = parse_edge(line, body, k, n)?;
            if !seen.insert(e) {
                return Err(parse_err(line, format!("duplicate edge {{{e}}}")));
            }
            edges.push(e);
        }
        if edges.len() != m {
            return Err(parse_err(
                hline,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Ok(Hypergraph::from_valid(k, n, edges))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("k", &self.k)
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Number of edges containing each (k-1)-set of the shadow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMap {
    k: usize,
    n: usize,
    counts: BTreeMap<Edge, usize>,
}

impl MultiplicityMap {
    pub fn get(&self, f: Edge) -> usize {
        self.counts.get(&f).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.counts.iter().map(|(&f, &c)| (f, c))
    }

    /// The shadow sets with multiplicity at least `min`, as a (k-1)-graph.
    pub fn at_least(&self, min: usize) -> Hypergraph {
        Hypergraph {
            k: self.k,
            n: self.n,
            edges: self
                .counts
                .iter()
                .filter(|&(_, &c)| c >= min)
                .map(|(&f, _)| f)
                .collect(),
        }
    }
}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if k == 0 {
        return Err(invalid("uniformity must be at least 1"));
    }
    if n > MAX_VERTICES {
        return Err(invalid(format!(
            "at most {MAX_VERTICES} vertices are supported (got {n})"
        )));
    }
    Ok(())
}

fn check_edge(k: usize, n: usize, e: Edge) -> Result<()> {
    if e.len() != k {
        return Err(invalid(format!("edge {{{e}}} does not have {k} vertices")));
    }
    if let Some(v) = e.last().filter(|&v| v >= n) {
        return Err(Error::InvalidVertex { vertex: v, n });
    }
    Ok(())
}

/// Non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_numbers(line: usize, body: &str) -> Result<Vec<usize>> {
    body.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(line, format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

/// Parses `k` vertex ids of one edge line.
pub(crate) fn parse_edge_fields(line: usize, fields: &[usize], k: usize, n: usize) -> Result<Edge> {
    if fields.len() != k {
        return Err(parse_err(
            line,
            format!("expected {k} vertices, found {}", fields.len()),
        ));
    }
    let mut mask = 0u128;
    for &v in fields {
        if v >= n {
            return Err(parse_err(
                line,
                format!("vertex {v} out of range (n = {n})"),
            ));
        }
        if mask & (1 << v) != 0 {
            return Err(parse_err(line, format!("vertex {v} repeated")));
        }
        mask |= 1 << v;
    }
    Ok(Edge::from_mask(mask))
}

fn parse_edge(line: usize, body: &str, k: usize, n: usize) -> Result<Edge> {
    parse_edge_fields(line, &parse_numbers(line, body)?, k, n)
}
