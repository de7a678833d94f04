//! DIMACS encoding of "some r-coloring avoids a monochromatic loose 3-path".

use std::fmt::Write;

use serde::Serialize;

use super::paths::HostIndex;
use super::{enumeration_size, next_coloring};
use crate::coloring::Coloring;
use crate::error::{invalid, Result};
use crate::hypergraph::Edge;

/// Variable `edge_index * r + c` is true when the edge has color `c`
/// (colors `1..=r`, variables from 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnfInstance {
    pub k: usize,
    pub n: usize,
    pub r: u32,
    pub path_count: usize,
    #[serde(skip)]
    edges: Vec<Edge>,
    #[serde(skip)]
    clauses: Vec<Vec<i64>>,
}

impl CnfInstance {
    pub fn variable(&self, edge_index: usize, color: u32) -> i64 {
        (edge_index as i64) * self.r as i64 + color as i64
    }

    /// The edge and color of a variable.
    pub fn decode(&self, var: i64) -> Option<(Edge, u32)> {
        if var < 1 || var > self.variable_count() as i64 {
            return None;
        }
        let v = var as usize - 1;
        let r = self.r as usize;
        Some((self.edges[v / r], (v % r) as u32 + 1))
    }

    pub fn variable_count(&self) -> usize {
        self.edges.len() * self.r as usize
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Evaluates the formula; `assignment[v - 1]` is the value of variable `v`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.variable_count()
            && self.clauses.iter().all(|clause| {
                clause
                    .iter()
                    .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
            })
    }

    /// The assignment that sets exactly one variable per edge.
    pub fn assignment_of(&self, colors: &[u32]) -> Vec<bool> {
        let mut a = vec![false; self.variable_count()];
        for (i, &c) in colors.iter().enumerate() {
            a[self.variable(i, c) as usize - 1] = true;
        }
        a
    }

    /// Decides satisfiability by trying every coloring; a satisfying
    /// multi-assignment projects to one of them, so this is complete.
    pub fn satisfying_coloring(&self) -> Result<Option<Coloring>> {
        enumeration_size(self.k, self.r, self.n)?;
        let mut colors = vec![1u32; self.edges.len()];
        loop {
            if self.is_satisfied_by(&self.assignment_of(&colors)) {
                return Coloring::from_colors(self.k, self.n, self.r, colors).map(Some);
            }
            if !next_coloring(&mut colors, self.r) {
                return Ok(None);
            }
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "c loose 3-path free {}-coloring of K_{}^({}); {} path copies",
            self.r, self.n, self.k, self.path_count
        );
        for (i, e) in self.edges.iter().enumerate() {
            for c in 1..=self.r {
                let _ = writeln!(
                    out,
                    "c var {} = edge {} color {}",
                    self.variable(i, c),
                    e,
                    c
                );
            }
        }
        let _ = writeln!(
            out,
            "p cnf {} {}",
            self.variable_count(),
            self.clauses.len()
        );
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// At least one color per edge, and for every path copy and color a clause
/// forbidding all three edges in that color. At most one color per edge is
/// not required: any model projects to a proper coloring.
pub fn export_cnf(k: usize, r: u32, n: usize) -> Result<CnfInstance> {
    if k < 2 || r < 1 || n < k {
        return Err(invalid(format!(
            "need k >= 2, r >= 1 and n >= k (got k = {k}, r = {r}, n = {n})"
        )));
    }
    let host = HostIndex::new(n, k)?;
    let paths = host.three_paths();
    let mut inst = CnfInstance {
        k,
        n,
        r,
        path_count: paths.len(),
        edges: host.edges,
        clauses: Vec::new(),
    };
    let mut clauses: Vec<Vec<i64>> = (0..inst.edges.len())
        .map(|i| (1..=r).map(|c| inst.variable(i, c)).collect())
        .collect();
    for p in &paths {
        for c in 1..=r {
            clauses.push(p.iter().map(|&i| -inst.variable(i as usize, c)).collect());
        }
    }
    inst.clauses = clauses;
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{decide_ramsey, RamseyVerdict, SearchConfig};

    #[test]
    fn sizes() {
        for ((k, r, n), vars, clauses) in [
            ((2, 2, 4), 12, 30),
            ((2, 2, 5), 20, 130),
            ((2, 1, 4), 6, 18),
        ] {
            let cnf = export_cnf(k, r, n).unwrap();
            assert_eq!((cnf.variable_count(), cnf.clause_count()), (vars, clauses));
        }
    }

    #[test]
    fn satisfiability_matches_search() {
        for (k, r, n) in [(2, 2, 4), (2, 2, 5), (2, 1, 4), (2, 1, 3), (3, 2, 6)] {
            let cnf = export_cnf(k, r, n).unwrap();
            let sat = cnf.satisfying_coloring().unwrap();
            let verdict = decide_ramsey(k, r, n, &SearchConfig::default())
                .unwrap()
                .verdict;
            assert_eq!(
                sat.is_some(),
                verdict == RamseyVerdict::Fails,
                "({k},{r},{n})"
            );
        }
    }

    #[test]
    fn dimacs_layout() {
        let cnf = export_cnf(2, 2, 4).unwrap();
        let text = cnf.to_dimacs();
        assert!(text.contains("c var 1 = edge 0 1 color 1\n"));
        assert!(text.contains("c var 12 = edge 2 3 color 2\n"));
        assert!(text.contains("\np cnf 12 30\n"));
        assert_eq!(text.lines().filter(|l| l.ends_with(" 0")).count(), 30);
        assert_eq!(
            cnf.decode(12),
            Some((Edge::from_vertices([2, 3]).unwrap(), 2))
        );
        assert_eq!(cnf.decode(13), None);
    }

    #[test]
    fn multi_assignments_project() {
        let cnf = export_cnf(2, 2, 4).unwrap();
        let witness = cnf.satisfying_coloring().unwrap().unwrap();
        let mut a = cnf.assignment_of(witness.colors());
        assert!(cnf.is_satisfied_by(&a));
        // Turning on a second color can break a path clause but never the
        // at-least-one clauses.
        a[0] = true;
        a[1] = true;
        assert!(cnf.clauses()[..6]
            .iter()
            .all(|cl| cl.iter().any(|&l| a[l as usize - 1])));
    }
}
