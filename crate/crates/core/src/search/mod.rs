//! Exact decision of small Ramsey instances, Turán maximization under a
//! forbidden loose path, and CNF export.

mod cnf;
mod paths;
mod ramsey;
mod turan;

use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::binomial_u64;

pub use cnf::{export_cnf, CnfInstance};
pub use paths::{enumerate_loose_paths, MAX_HOST_EDGES};
pub use ramsey::{decide_ramsey, exhaustive_decide, RamseyVerdict, SearchOutcome};
pub use turan::{turan_max_edges, ForbiddenPattern, TuranResult, TuranStatus};

/// Largest number of colorings the enumeration oracles will visit.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000_000;

/// Knobs shared by the search engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search nodes; 0 means unlimited. A nonzero budget
    /// forces a single thread so that the stopping point is reproducible.
    pub budget: u64,
    pub threads: usize,
    /// Extra symmetry breaking on the vertices outside the first edge.
    /// Never changes a verdict.
    pub vertex_pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 0,
            threads: 1,
            vertex_pruning: false,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig {
            budget,
            ..Self::default()
        }
    }

    pub(crate) fn effective_threads(&self) -> usize {
        if self.budget > 0 {
            1
        } else {
            self.threads.max(1)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    /// Left out of serialized output so reports stay reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

/// `r^C(n,k)` if it is within [`EXHAUSTIVE_LIMIT`].
pub(crate) fn enumeration_size(k: usize, r: u32, n: usize) -> Result<u64> {
    let too_large = || {
        Error::TooLarge(format!(
            "{r}^C({n},{k}) colorings exceed the limit of {EXHAUSTIVE_LIMIT}"
        ))
    };
    let m = binomial_u64(n as u64, k as u64).ok_or_else(too_large)?;
    let m = u32::try_from(m).map_err(|_| too_large())?;
    match (r as u64).checked_pow(m) {
        Some(total) if total <= EXHAUSTIVE_LIMIT => Ok(total),
        _ => Err(too_large()),
    }
}

/// Steps `colors` (each in `1..=r`) to the next vector in lexicographic
/// order; false after the last one.
pub(crate) fn next_coloring(colors: &mut [u32], r: u32) -> bool {
    for c in colors.iter_mut().rev() {
        if *c < r {
            *c += 1;
            return true;
        }
        *c = 1;
    }
    false
}
