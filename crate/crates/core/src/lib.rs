//! Exact verification of the Padberg geometric rank of matching polytopes.
//!
//! For a small input graph the crate enumerates the facets of its matching
//! polytope (nonnegativity, degree and blossom inequalities), computes face
//! dimensions and ridge adjacency over exact integer arithmetic, builds the
//! Padberg rank hierarchy from a minimal formulation, and produces for every
//! blossom facet of positive rank an explicit family of witness matchings
//! certifying its ridge with a degree facet. Everything is deterministic and
//! cross-checked against brute-force oracles at desk scale.
//!
//! ```
//! use matchrank::{verify_rank_at_most_one, Graph};
//!
//! let c5 = Graph::parse("n 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 0 4\n")?;
//! let report = verify_rank_at_most_one(&c5)?;
//! assert_eq!(report.rho, 1);
//! # Ok::<(), matchrank::Error>(())
//! ```

pub mod ear;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod polytope;
pub mod rank;
pub mod report;
pub mod witness;

pub use ear::{
    nice_odd_cycle_through_edge, odd_ear_decomposition, proper_odd_ear_decomposition, Ear,
    EarDecomposition,
};
pub use error::{Error, Result};
pub use graph::{
    enumerate_matchings, has_perfect_matching, is_2_connected, is_connected, is_factor_critical,
    is_nice_subgraph, lexmin_perfect_matching, lexmin_pm_avoiding, maximum_matching,
    near_pm_excluding, EdgeId, Graph, Matching, NodeId,
};
pub use polytope::{
    enumerate_facets, face_dimension, is_facet, is_ridge_pair, polytope_dimension, FaceDescriptor,
    Inequality,
};
pub use rank::{
    check_minimal_formulation, is_minimal_formulation, lemma_minimal_formulation, rank_hierarchy,
    rank_report, rank_zero_facets, verify_rank_at_most_one, Certificate, F0Mode, MinimalityReport,
    RankReport,
};
pub use witness::{
    brute_force_witness, build_case3c_scaffold, case3c_nice_cycle, choose_anchor, witness_all,
    witness_matching, AnchorKind, CaseTag, WitnessChecks, WitnessContext, WitnessReport,
    WitnessResult,
};
