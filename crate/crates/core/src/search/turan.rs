//! Largest k-graphs avoiding a loose path, by branch and bound.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::paths::HostIndex;
use super::{SearchConfig, SearchStats};
use crate::constructions::{full_star, pair_cover};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::patterns::{find_loose_path, PathLength};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ForbiddenPattern {
    /// Three edges forming a loose path.
    LoosePath3,
    /// Two edges sharing exactly one vertex.
    LoosePath2,
}

impl ForbiddenPattern {
    pub fn path_length(self) -> PathLength {
        match self {
            ForbiddenPattern::LoosePath3 => PathLength::Three,
            ForbiddenPattern::LoosePath2 => PathLength::Two,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ForbiddenPattern::LoosePath3 => "loose-path-3",
            ForbiddenPattern::LoosePath2 => "loose-path-2",
        }
    }
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ForbiddenPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "loose-path-3" => Ok(ForbiddenPattern::LoosePath3),
            "loose-path-2" => Ok(ForbiddenPattern::LoosePath2),
            _ => Err(invalid(format!(
                "unknown pattern {s:?} (expected loose-path-2 or loose-path-3)"
            ))),
        }
    }
}

impl Serialize for ForbiddenPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TuranStatus {
    Exact,
    /// The budget ran out; `max_edges` is only a lower bound.
    LowerBoundOnly,
}

#[derive(Clone, Debug)]
pub struct TuranResult {
    pub k: usize,
    pub n: usize,
    pub pattern: ForbiddenPattern,
    pub status: TuranStatus,
    pub max_edges: usize,
    pub extremal: Hypergraph,
    pub stats: SearchStats,
}

impl Serialize for TuranResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TuranResult", 7)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("pattern", &self.pattern)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("max_edges", &self.max_edges)?;
        st.serialize_field("extremal", &self.extremal.to_text())?;
        st.serialize_field("stats", &self.stats)?;
        st.end()
    }
}

/// Pattern copies grouped by their largest edge index.
struct Problem {
    m: usize,
    closing: Vec<Vec<Vec<u32>>>,
}

impl Problem {
    fn new(host: &HostIndex, pattern: ForbiddenPattern) -> Self {
        let m = host.edges.len();
        let mut closing = vec![Vec::new(); m];
        let mut push = |mut ids: Vec<u32>| {
            ids.sort_unstable();
            let last = ids.pop().expect("nonempty copy");
            closing[last as usize].push(ids);
        };
        match pattern {
            ForbiddenPattern::LoosePath3 => host
                .three_paths()
                .into_iter()
                .for_each(|t| push(t.to_vec())),
            ForbiddenPattern::LoosePath2 => {
                host.two_paths().into_iter().for_each(|t| push(t.to_vec()))
            }
        }
        Problem { m, closing }
    }

    fn closes_copy(&self, chosen: &[bool], i: usize) -> bool {
        self.closing[i]
            .iter()
            .any(|rest| rest.iter().all(|&j| chosen[j as usize]))
    }
}

struct Walker<'a> {
    p: &'a Problem,
    best: &'a AtomicUsize,
    record: &'a Mutex<Vec<bool>>,
    stats: SearchStats,
    budget: u64,
    exhausted_budget: bool,
}

impl Walker<'_> {
    fn improve(&self, chosen: &[bool], count: usize) {
        let mut rec = self.record.lock().expect("incumbent lock");
        // Compare under the lock so that value and witness stay in step.
        if count > self.best.load(Ordering::Acquire) {
            self.best.store(count, Ordering::Release);
            *rec = chosen.to_vec();
        }
    }

    fn extend(&mut self, chosen: &mut [bool], i: usize, count: usize) {
        if self.exhausted_budget {
            return;
        }
        if count + (self.p.m - i) <= self.best.load(Ordering::Acquire) {
            self.stats.prunes += 1;
            return;
        }
        if i == self.p.m {
            self.improve(chosen, count);
            return;
        }
        if self.budget > 0 && self.stats.nodes >= self.budget {
            self.exhausted_budget = true;
            return;
        }
        self.stats.nodes += 1;
        if self.p.closes_copy(chosen, i) {
            self.stats.prunes += 1;
        } else {
            chosen[i] = true;
            self.extend(chosen, i + 1, count + 1);
            chosen[i] = false;
        }
        self.extend(chosen, i + 1, count);
    }
}

/// Pattern-free starting points: the full star, and for the 2-path the
/// pair cover. Each is checked before use.
fn warm_start(k: usize, n: usize, pattern: ForbiddenPattern) -> Result<Hypergraph> {
    let mut candidates = vec![full_star(n, k, 0)?];
    if pattern == ForbiddenPattern::LoosePath2 && k >= 3 {
        candidates.push(pair_cover(n, k, (0, 1))?);
    }
    let mut best = Hypergraph::empty(k, n)?;
    for h in candidates {
        if find_loose_path(&h, pattern.path_length()).is_none()
            && h.edge_count() > best.edge_count()
        {
            best = h;
        }
    }
    Ok(best)
}

/// Maximum number of edges of an `n`-vertex k-graph with no copy of
/// `pattern`. Edges are decided in canonical order, inclusion first, with
/// the bound `current + remaining`; only copies closed by the newest edge are
/// checked.
pub fn turan_max_edges(
    k: usize,
    n: usize,
    pattern: ForbiddenPattern,
    config: &SearchConfig,
) -> Result<TuranResult> {
    if k < 2 || n < k {
        return Err(invalid(format!("need 2 <= k <= n (got k = {k}, n = {n})")));
    }
    let start = Instant::now();
    let host = HostIndex::new(n, k)?;
    let problem = Problem::new(&host, pattern);
    let seed = warm_start(k, n, pattern)?;
    let seed_mask: Vec<bool> = host.edges.iter().map(|&e| seed.contains_edge(e)).collect();
    let best = AtomicUsize::new(seed.edge_count());
    let record = Mutex::new(seed_mask);

    let threads = config.effective_threads();
    let mut stats = SearchStats::default();
    let mut exhausted_budget = false;
    if threads == 1 || problem.m < 8 {
        let mut w = Walker {
            p: &problem,
            best: &best,
            record: &record,
            stats,
            budget: config.budget,
            exhausted_budget: false,
        };
        w.extend(&mut vec![false; problem.m], 0, 0);
        stats = w.stats;
        exhausted_budget = w.exhausted_budget;
    } else {
        // Split on the first few inclusion decisions.
        let depth = (usize::BITS - (8 * threads).leading_zeros()) as usize;
        let depth = depth.min(problem.m);
        let roots: Vec<Vec<bool>> = (0..1u64 << depth)
            .map(|bits| {
                let mut chosen = vec![false; problem.m];
                for (i, c) in chosen.iter_mut().take(depth).enumerate() {
                    *c = bits >> (depth - 1 - i) & 1 == 0;
                }
                chosen
            })
            .filter(|chosen| (0..depth).all(|i| !chosen[i] || !problem.closes_copy(chosen, i)))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let parts: Vec<SearchStats> = pool.install(|| {
            roots
                .into_par_iter()
                .map(|mut chosen| {
                    let count = chosen.iter().filter(|&&c| c).count();
                    let mut w = Walker {
                        p: &problem,
                        best: &best,
                        record: &record,
                        stats: SearchStats::default(),
                        budget: 0,
                        exhausted_budget: false,
                    };
                    w.extend(&mut chosen, depth, count);
                    w.stats
                })
                .collect()
        });
        for s in parts {
            stats.nodes += s.nodes;
            stats.prunes += s.prunes;
        }
    }
    stats.wall_time = start.elapsed();

    let chosen = record.into_inner().expect("incumbent lock");
    let edges: Vec<Edge> = host
        .edges
        .iter()
        .zip(&chosen)
        .filter(|(_, &c)| c)
        .map(|(&e, _)| e)
        .collect();
    let extremal = Hypergraph::new(k, n, edges)?;
    if let Some(w) = find_loose_path(&extremal, pattern.path_length()) {
        return Err(Error::Internal(format!(
            "Turán incumbent contains a {pattern}: {:?}",
            w.edges
        )));
    }
    Ok(TuranResult {
        k,
        n,
        pattern,
        status: if exhausted_budget {
            TuranStatus::LowerBoundOnly
        } else {
            TuranStatus::Exact
        },
        max_edges: extremal.edge_count(),
        extremal,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{binomial_u64, complete_edges};

    fn turan(k: usize, n: usize, pattern: ForbiddenPattern) -> TuranResult {
        turan_max_edges(k, n, pattern, &SearchConfig::default()).unwrap()
    }

    /// Maximum over all subsets of the edges of `K_n^(k)`.
    fn brute_force(k: usize, n: usize, pattern: ForbiddenPattern) -> usize {
        let edges = complete_edges(n, k);
        (0u64..1 << edges.len())
            .filter_map(|bits| {
                let chosen = edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let h = Hypergraph::new(k, n, chosen).unwrap();
                find_loose_path(&h, pattern.path_length())
                    .is_none()
                    .then_some(h.edge_count())
            })
            .max()
            .unwrap()
    }

    #[test]
    fn trivial_regime() {
        assert_eq!(turan(3, 6, ForbiddenPattern::LoosePath3).max_edges, 20);
        assert_eq!(turan(4, 6, ForbiddenPattern::LoosePath2).max_edges, 15);
    }

    #[test]
    fn small_graphs_match_brute_force() {
        for n in 2..=5 {
            for pattern in [ForbiddenPattern::LoosePath3, ForbiddenPattern::LoosePath2] {
                let out = turan(2, n, pattern);
                assert_eq!(out.status, TuranStatus::Exact);
                assert_eq!(out.max_edges, brute_force(2, n, pattern), "n={n} {pattern}");
            }
        }
        assert_eq!(turan(2, 4, ForbiddenPattern::LoosePath3).max_edges, 3);
        assert_eq!(
            brute_force(3, 5, ForbiddenPattern::LoosePath2),
            turan(3, 5, ForbiddenPattern::LoosePath2).max_edges
        );
    }

    #[test]
    fn star_lower_bound() {
        for (k, n) in [(2, 6), (3, 7), (3, 8), (4, 8)] {
            let out = turan_max_edges(
                k,
                n,
                ForbiddenPattern::LoosePath3,
                &SearchConfig::with_budget(200_000),
            )
            .unwrap();
            assert!(out.max_edges as u64 >= binomial_u64(n as u64 - 1, k as u64 - 1).unwrap());
            assert_eq!(out.extremal.edge_count(), out.max_edges);
        }
    }

    #[test]
    fn budget_gives_lower_bound_only() {
        let out = turan_max_edges(
            3,
            8,
            ForbiddenPattern::LoosePath3,
            &SearchConfig::with_budget(10),
        )
        .unwrap();
        assert_eq!(out.status, TuranStatus::LowerBoundOnly);
        assert!(out.max_edges >= 21);
    }

    #[test]
    fn threads_agree() {
        for (k, n, pattern) in [
            (2, 6, ForbiddenPattern::LoosePath3),
            (2, 7, ForbiddenPattern::LoosePath2),
            (3, 6, ForbiddenPattern::LoosePath2),
        ] {
            let seq = turan(k, n, pattern);
            let par = turan_max_edges(
                k,
                n,
                pattern,
                &SearchConfig {
                    threads: 4,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(seq.max_edges, par.max_edges);
            assert_eq!(par.status, TuranStatus::Exact);
        }
    }

    #[test]
    fn pattern_names_round_trip() {
        for p in [ForbiddenPattern::LoosePath2, ForbiddenPattern::LoosePath3] {
            assert_eq!(p.name().parse::<ForbiddenPattern>().unwrap(), p);
        }
        assert!("star".parse::<ForbiddenPattern>().is_err());
    }
}
