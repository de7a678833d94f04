//! Constructive versions of the degree-peeling, bipartite-pruning,
//! splitting and balancing steps, plus exact verification of the numeric
//! inequalities they rely on.

pub mod exact;
pub mod inequalities;
pub mod partition;
pub mod peel;
pub mod stability;
pub mod suite;

pub use exact::{Interval, Rounding};
pub use inequalities::{
    evaluate, verify_constant_inequalities, Certificate, IneqRecord, IneqReport, Inequality,
    Verdict, DEFAULT_A,
};
pub use partition::{
    balance_pipeline, choose_apexes, derandomized_split, greedy_tripartition, proper_weights,
    BalanceSummary, SplitAssignment, Tripartition, WeightedVertices,
};
pub use peel::{peel_min_degree, prune_bipartite, BipartiteGraph, Peeled};
pub use stability::{
    avoiding_edges_bound, deficiency_coefficient, dense_link_order_bound, stability_deficiency,
    StabilityReport,
};
pub use suite::{property_suite, SuiteReport};
