//! Loose paths in k-uniform hypergraphs: detection, Ramsey and Turán
//! searches, extremal constructions, and the exact arithmetic behind the
//! linear Ramsey bound.
//!
//! ```
//! use ramseylab::{star_clique_coloring, find_mono_loose_path, PathLength};
//!
//! let coloring = star_clique_coloring(3, 2).unwrap();
//! assert_eq!(coloring.vertex_count(), 7);
//! assert!(find_mono_loose_path(&coloring, PathLength::Three).is_none());
//! ```

pub mod coloring;
pub mod constructions;
pub mod error;
pub mod hypergraph;
pub mod machinery;
pub mod patterns;
pub mod search;

pub use coloring::Coloring;
pub use constructions::{
    full_star, pair_cover, ramsey_bounds, star_clique_coloring, BoundsReport, LINEAR_BOUND_CONSTANT,
};
pub use error::{Error, Result};
pub use hypergraph::{
    binomial_u64, complete_edges, Edge, Hypergraph, MultiplicityMap, MAX_VERTICES,
};
pub use patterns::{
    find_loose_path, find_mono_loose_path, is_full_star, is_star, LoosePathWitness, PathLength,
};
pub use search::{
    decide_ramsey, enumerate_loose_paths, exhaustive_decide, export_cnf, turan_max_edges,
    CnfInstance, ForbiddenPattern, RamseyVerdict, SearchConfig, SearchOutcome, SearchStats,
    TuranResult, TuranStatus,
};
