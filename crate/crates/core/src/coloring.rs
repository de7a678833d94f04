//! Total edge colorings of complete k-graphs.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, parse_err, Error, Result};
use crate::hypergraph::{
    binomial_u64, complete_edges, content_lines, parse_edge_fields, parse_numbers, Edge,
    Hypergraph, MAX_VERTICES,
};

/// Refuse to materialize colorings with more edges than this.
pub const MAX_COLORED_EDGES: u64 = 5_000_000;

/// An assignment of a color in `1..=r` to every edge of `K_n^(k)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Coloring {
    k: usize,
    n: usize,
    r: u32,
    edges: Vec<Edge>,
    colors: Vec<u32>,
}

impl Coloring {
    /// Colors the edges of `K_n^(k)` in canonical order with `color`.
    pub fn from_fn(k: usize, n: usize, r: u32, mut color: impl FnMut(Edge) -> u32) -> Result<Self> {
        let edges = host_edges(k, n, r)?;
        let colors = edges.iter().map(|&e| color(e)).collect();
        Self::assemble(k, n, r, edges, colors)
    }

    /// `colors[i]` is the color of the i-th edge in canonical order.
    pub fn from_colors(k: usize, n: usize, r: u32, colors: Vec<u32>) -> Result<Self> {
        let edges = host_edges(k, n, r)?;
        if colors.len() != edges.len() {
            return Err(invalid(format!(
                "expected {} colors, got {}",
                edges.len(),
                colors.len()
            )));
        }
        Self::assemble(k, n, r, edges, colors)
    }

    fn assemble(k: usize, n: usize, r: u32, edges: Vec<Edge>, colors: Vec<u32>) -> Result<Self> {
        if let Some((e, c)) = edges.iter().zip(&colors).find(|&(_, &c)| c == 0 || c > r) {
            return Err(invalid(format!(
                "edge {{{e}}} has color {c} outside 1..={r}"
            )));
        }
        Ok(Coloring {
            k,
            n,
            r,
            edges,
            colors,
        })
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn color_count(&self) -> u32 {
        self.r
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.edges.iter().copied().zip(self.colors.iter().copied())
    }

    pub fn color_of(&self, e: Edge) -> Option<u32> {
        self.edges.binary_search(&e).ok().map(|i| self.colors[i])
    }

    /// The edges of color `c` as a hypergraph on all `n` vertices.
    pub fn class(&self, c: u32) -> Hypergraph {
        let edges = self
            .iter()
            .filter(|&(_, col)| col == c)
            .map(|(e, _)| e)
            .collect();
        Hypergraph::from_valid(self.k, self.n, edges)
    }

    /// `sizes[c - 1]` is the number of edges of color `c`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.r as usize];
        for &c in &self.colors {
            sizes[c as usize - 1] += 1;
        }
        sizes
    }

    /// Canonical text form: `k n m r`, then `v1 .. vk c` per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {} {}\n", self.k, self.n, self.edges.len(), self.r);
        for (e, c) in self.iter() {
            out.push_str(&format!("{e} {c}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let [k, n, m, r] = parse_numbers(hline, header)?[..] else {
            return Err(parse_err(hline, "header must be `k n m r`"));
        };
        let r = u32::try_from(r).map_err(|_| parse_err(hline, "too many colors"))?;
        let edges = host_edges(k, n, r).map_err(|e| parse_err(hline, e.to_string()))?;
        if m != edges.len() {
            return Err(parse_err(
                hline,
                format!(
                    "a coloring of K_{n}^({k}) has {} edges, header says {m}",
                    edges.len()
                ),
            ));
        }
        let mut colors = vec![0u32; edges.len()];
        let mut seen = 0usize;
        for (line, body) in lines {
            let fields = parse_numbers(line, body)?;
            let Some((&c, verts)) = fields.split_last() else {
                return Err(parse_err(line, "empty record"));
            };
            let e = parse_edge_fields(line, verts, k, n)?;
            if c == 0 || c > r as usize {
                return Err(parse_err(line, format!("color {c} outside 1..={r}")));
            }
            let idx = edges
                .binary_search(&e)
                .map_err(|_| parse_err(line, "not an edge of the complete hypergraph"))?;
            if colors[idx] != 0 {
                return Err(parse_err(line, format!("edge {{{e}}} colored twice")));
            }
            colors[idx] = c as u32;
            seen += 1;
        }
        if seen != edges.len() {
            return Err(parse_err(
                hline,
                format!(
                    "{} of {} edges are uncolored",
                    edges.len() - seen,
                    edges.len()
                ),
            ));
        }
        Ok(Coloring {
            k,
            n,
            r,
            edges,
            colors,
        })
    }
}

fn host_edges(k: usize, n: usize, r: u32) -> Result<Vec<Edge>> {
    if k == 0 || k > n {
        return Err(invalid(format!(
            "coloring needs 1 <= k <= n (got k = {k}, n = {n})"
        )));
    }
    if n > MAX_VERTICES {
        return Err(invalid(format!(
            "at most {MAX_VERTICES} vertices are supported"
        )));
    }
    if r == 0 {
        return Err(invalid("at least one color is required"));
    }
    match binomial_u64(n as u64, k as u64) {
        Some(m) if m <= MAX_COLORED_EDGES => Ok(complete_edges(n, k)),
        _ => Err(Error::TooLarge(format!(
            "K_{n}^({k}) has more than {MAX_COLORED_EDGES} edges"
        ))),
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coloring")
            .field("k", &self.k)
            .field("n", &self.n)
            .field("r", &self.r)
            .field("class_sizes", &self.class_sizes())
            .finish()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Coloring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
