//! Backtracking decision of `n >= R(P^(k); r)`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::paths::HostIndex;
use super::{enumeration_size, next_coloring, SearchConfig, SearchStats};
use crate::coloring::Coloring;
use crate::error::{invalid, Error, Result};
use crate::patterns::{find_mono_loose_path, PathLength};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RamseyVerdict {
    /// Every coloring has a monochromatic loose 3-path.
    Holds,
    /// A witness coloring avoids it.
    Fails,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub k: usize,
    pub r: u32,
    pub n: usize,
    pub verdict: RamseyVerdict,
    /// Present exactly when the verdict is `Fails`.
    pub witness: Option<Coloring>,
    pub stats: SearchStats,
}

impl Serialize for SearchOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SearchOutcome", 6)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("witness", &self.witness.as_ref().map(Coloring::to_text))?;
        st.serialize_field("stats", &self.stats)?;
        st.end()
    }
}

fn check_params(k: usize, r: u32, n: usize) -> Result<()> {
    if k < 2 || r < 1 || n < k {
        return Err(invalid(format!(
            "need k >= 2, r >= 1 and n >= k (got k = {k}, r = {r}, n = {n})"
        )));
    }
    Ok(())
}

/// Loose 3-paths grouped by their largest edge index, so that coloring
/// edge `i` only needs the other two members of each group entry.
struct Problem {
    m: usize,
    r: u32,
    closing: Vec<Vec<[u32; 2]>>,
    /// Colors must be non-decreasing on edges `0..ordered`.
    ordered: usize,
}

impl Problem {
    fn new(k: usize, r: u32, n: usize, vertex_pruning: bool) -> Result<Self> {
        let host = HostIndex::new(n, k)?;
        let m = host.edges.len();
        let mut closing = vec![Vec::new(); m];
        for [a, b, c] in host.three_paths() {
            let mut t = [a, b, c];
            t.sort_unstable();
            closing[t[2] as usize].push([t[0], t[1]]);
        }
        // The first n-k+1 edges are prefix ∪ {x} for the prefix 0..k-2;
        // permuting the x's sorts their colors.
        let ordered = if vertex_pruning { n - k + 1 } else { 0 };
        Ok(Problem {
            m,
            r: r.min(m as u32),
            closing,
            ordered,
        })
    }

    fn conflicts(&self, colors: &[u32], i: usize, c: u32) -> bool {
        self.closing[i]
            .iter()
            .any(|&[a, b]| colors[a as usize] == c && colors[b as usize] == c)
    }

    /// Admissible colors for edge `i` given the colors before it.
    fn choices(&self, colors: &[u32], i: usize, max_used: u32) -> std::ops::RangeInclusive<u32> {
        let lo = if i > 0 && i < self.ordered {
            colors[i - 1]
        } else {
            1
        };
        lo..=(max_used + 1).min(self.r)
    }
}

enum Flow {
    Found,
    Exhausted,
    Stopped,
}

struct Walker<'a> {
    p: &'a Problem,
    stats: SearchStats,
    budget: u64,
    stop: &'a (dyn Fn() -> bool + Sync),
}

impl Walker<'_> {
    fn extend(&mut self, colors: &mut [u32], i: usize, max_used: u32) -> Flow {
        if i == self.p.m {
            return Flow::Found;
        }
        for c in self.p.choices(colors, i, max_used) {
            if self.budget > 0 && self.stats.nodes >= self.budget || (self.stop)() {
                return Flow::Stopped;
            }
            self.stats.nodes += 1;
            if self.p.conflicts(colors, i, c) {
                self.stats.prunes += 1;
                continue;
            }
            colors[i] = c;
            match self.extend(colors, i + 1, max_used.max(c)) {
                Flow::Exhausted => {}
                done => return done,
            }
        }
        colors[i] = 0;
        Flow::Exhausted
    }
}

/// Conflict-free color prefixes of the given depth in lexicographic order,
/// each with its largest color.
fn prefixes(p: &Problem, depth: usize, stats: &mut SearchStats) -> Vec<(Vec<u32>, u32)> {
    let mut level = vec![(vec![0u32; p.m], 0u32)];
    for i in 0..depth {
        let mut next = Vec::new();
        for (colors, max_used) in level {
            for c in p.choices(&colors, i, max_used) {
                stats.nodes += 1;
                if p.conflicts(&colors, i, c) {
                    stats.prunes += 1;
                    continue;
                }
                let mut child = colors.clone();
                child[i] = c;
                next.push((child, max_used.max(c)));
            }
        }
        level = next;
    }
    level
}

fn run(p: &Problem, config: &SearchConfig) -> (Flow, Option<Vec<u32>>, SearchStats) {
    let threads = config.effective_threads();
    let never = || false;
    if threads == 1 || p.m < 4 {
        let mut w = Walker {
            p,
            stats: SearchStats::default(),
            budget: config.budget,
            stop: &never,
        };
        let mut colors = vec![0; p.m];
        let flow = w.extend(&mut colors, 0, 0);
        let witness = matches!(flow, Flow::Found).then_some(colors);
        return (flow, witness, w.stats);
    }

    let mut stats = SearchStats::default();
    let mut depth = 0;
    let mut roots = prefixes(p, 0, &mut stats);
    while roots.len() < 8 * threads && depth + 1 < p.m {
        depth += 1;
        stats = SearchStats::default();
        roots = prefixes(p, depth, &mut stats);
    }

    // Subtrees are searched concurrently; the leftmost witness wins, which
    // is the one a sequential walk would return.
    let best = AtomicUsize::new(usize::MAX);
    let found = Mutex::new(None);
    let totals = Mutex::new(stats);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        roots
            .into_par_iter()
            .enumerate()
            .for_each(|(idx, (mut colors, max_used))| {
                if best.load(Ordering::Acquire) < idx {
                    return;
                }
                let stop = || best.load(Ordering::Relaxed) < idx;
                let mut w = Walker {
                    p,
                    stats: SearchStats::default(),
                    budget: 0,
                    stop: &stop,
                };
                let flow = w.extend(&mut colors, depth, max_used);
                {
                    let mut t = totals.lock().expect("stats lock");
                    t.nodes += w.stats.nodes;
                    t.prunes += w.stats.prunes;
                }
                if matches!(flow, Flow::Found) {
                    best.fetch_min(idx, Ordering::AcqRel);
                    let mut f = found.lock().expect("witness lock");
                    match &*f {
                        Some((j, _)) if *j < idx => {}
                        _ => *f = Some((idx, colors)),
                    }
                }
            });
    });
    let stats = totals.into_inner().expect("stats lock");
    match found.into_inner().expect("witness lock") {
        Some((_, colors)) => (Flow::Found, Some(colors), stats),
        None => (Flow::Exhausted, None, stats),
    }
}

fn verified_witness(k: usize, r: u32, n: usize, colors: Vec<u32>) -> Result<Coloring> {
    let coloring = Coloring::from_colors(k, n, r, colors)?;
    if let Some((c, path)) = find_mono_loose_path(&coloring, PathLength::Three) {
        return Err(Error::Internal(format!(
            "search witness has a loose 3-path in color {c}: {:?}",
            path.edges
        )));
    }
    Ok(coloring)
}

/// Decides whether every `r`-coloring of `K_n^(k)` contains a monochromatic
/// loose 3-path. Edges are colored in canonical order; a color may be used
/// only after all smaller colors have appeared, and after each step only
/// paths closed by the new edge are checked.
pub fn decide_ramsey(k: usize, r: u32, n: usize, config: &SearchConfig) -> Result<SearchOutcome> {
    check_params(k, r, n)?;
    let start = Instant::now();
    let problem = Problem::new(k, r, n, config.vertex_pruning)?;
    let (flow, colors, mut stats) = run(&problem, config);
    stats.wall_time = start.elapsed();
    let (verdict, witness) = match flow {
        Flow::Found => {
            let colors = colors.expect("witness accompanies Found");
            (
                RamseyVerdict::Fails,
                Some(verified_witness(k, r, n, colors)?),
            )
        }
        Flow::Exhausted => (RamseyVerdict::Holds, None),
        Flow::Stopped => (RamseyVerdict::Unknown, None),
    };
    Ok(SearchOutcome {
        k,
        r,
        n,
        verdict,
        witness,
        stats,
    })
}

/// Same question answered by visiting all `r^C(n,k)` colorings, refused
/// above [`super::EXHAUSTIVE_LIMIT`].
pub fn exhaustive_decide(k: usize, r: u32, n: usize) -> Result<SearchOutcome> {
    check_params(k, r, n)?;
    enumeration_size(k, r, n)?;
    let start = Instant::now();
    let host = HostIndex::new(n, k)?;
    let paths = host.three_paths();
    let mut colors = vec![1u32; host.edges.len()];
    let mut stats = SearchStats::default();
    let mut witness = None;
    loop {
        stats.nodes += 1;
        let mono = paths.iter().any(|t| {
            let c = colors[t[0] as usize];
            colors[t[1] as usize] == c && colors[t[2] as usize] == c
        });
        if !mono {
            witness = Some(verified_witness(k, r, n, colors)?);
            break;
        }
        if !next_coloring(&mut colors, r) {
            break;
        }
    }
    stats.wall_time = start.elapsed();
    Ok(SearchOutcome {
        k,
        r,
        n,
        verdict: if witness.is_some() {
            RamseyVerdict::Fails
        } else {
            RamseyVerdict::Holds
        },
        witness,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    fn decide(k: usize, r: u32, n: usize) -> SearchOutcome {
        decide_ramsey(k, r, n, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn graph_examples() {
        assert_eq!(decide(2, 1, 4).verdict, RamseyVerdict::Holds);
        assert_eq!(decide(2, 2, 5).verdict, RamseyVerdict::Holds);
        let out = decide(2, 2, 4);
        assert_eq!(out.verdict, RamseyVerdict::Fails);
        let w = out.witness.unwrap();
        // A star and a triangle; the lexicographically first one puts the
        // star at vertex 0.
        assert_eq!(
            w.class(1),
            Hypergraph::from_lists(2, 4, &[[0, 1], [0, 2], [0, 3]]).unwrap()
        );
        assert_eq!(
            w.class(2),
            Hypergraph::from_lists(2, 4, &[[1, 2], [1, 3], [2, 3]]).unwrap()
        );
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(
            exhaustive_decide(2, 2, 4).unwrap().verdict,
            RamseyVerdict::Fails
        );
        assert_eq!(
            exhaustive_decide(2, 1, 3).unwrap().verdict,
            RamseyVerdict::Fails
        );
        assert_eq!(
            exhaustive_decide(3, 1, 7).unwrap().verdict,
            RamseyVerdict::Holds
        );
        assert_eq!(exhaustive_decide(2, 2, 5).unwrap().stats.nodes, 1 << 10);
        assert!(matches!(
            exhaustive_decide(2, 3, 8),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn invalid_parameters() {
        let cfg = SearchConfig::default();
        assert!(decide_ramsey(1, 2, 4, &cfg).is_err());
        assert!(decide_ramsey(2, 0, 4, &cfg).is_err());
        assert!(decide_ramsey(3, 2, 2, &cfg).is_err());
    }

    #[test]
    fn budget_gives_unknown() {
        let out = decide_ramsey(2, 2, 5, &SearchConfig::with_budget(3)).unwrap();
        assert_eq!(out.verdict, RamseyVerdict::Unknown);
        assert!(out.witness.is_none());
        assert_eq!(out.stats.nodes, 3);
    }

    #[test]
    fn agrees_with_exhaustive() {
        for (k, r, n) in [
            (2, 2, 4),
            (2, 2, 5),
            (2, 2, 6),
            (2, 3, 5),
            (3, 1, 6),
            (3, 1, 7),
            (3, 2, 6),
            (4, 2, 5),
        ] {
            let oracle = exhaustive_decide(k, r, n).unwrap().verdict;
            for vertex_pruning in [false, true] {
                for threads in [1, 3] {
                    let cfg = SearchConfig {
                        budget: 0,
                        threads,
                        vertex_pruning,
                    };
                    let out = decide_ramsey(k, r, n, &cfg).unwrap();
                    assert_eq!(out.verdict, oracle, "({k},{r},{n}) {cfg:?}");
                }
            }
        }
    }

    #[test]
    fn parallel_witness_matches_sequential() {
        for (k, r, n) in [(2, 2, 4), (2, 3, 5), (3, 2, 6)] {
            let seq = decide(k, r, n);
            let par = decide_ramsey(
                k,
                r,
                n,
                &SearchConfig {
                    threads: 4,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(seq.witness, par.witness);
        }
    }

    #[test]
    fn serializes_without_wall_time() {
        let json = serde_json::to_value(decide(2, 2, 4)).unwrap();
        assert_eq!(json["verdict"], "fails");
        assert!(json["witness"].as_str().unwrap().starts_with("2 4 6 2"));
        assert!(json["stats"].get("wall_time").is_none());
    }
}
