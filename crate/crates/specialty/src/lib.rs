//! The *specialty* of a simple undirected graph is
//!
//! ```text
//! S(G) = sum over edges uv of min(deg u, deg v)
//! ```
//!
//! This crate computes the exact maximum of S over all graphs, bipartite
//! graphs, forests, and planar graphs with a prescribed edge count, builds
//! witness graphs achieving those maxima, and re-verifies the closed forms
//! with an isomorph-free brute-force enumeration oracle at desk scale.
//!
//! ```
//! use specialty::{formulas, constructions, graph};
//!
//! let best = formulas::max_specialty_all(31).unwrap();
//! let witness = constructions::build_all_extremal(31).unwrap();
//! assert_eq!(graph::specialty(&witness), best.value);
//! assert_eq!(witness.edge_count(), 31);
//! ```

pub mod canon;
pub mod constructions;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod planarity;

pub use canon::{canonical_form, CanonicalForm};
pub use constructions::build_extremal;
pub use formulas::{max_specialty, ExtremalResult, GraphFamily};
pub use graph::{
    degree_sequence, specialty, triangle_count, zagreb_first, zagreb_irregularity, DegreeSequence,
    Graph,
};
pub use oracle::{CapMode, OracleOptions, OracleReport};

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("edge count must be at least 1")]
    ZeroEdges,

    #[error(
        "no-universal-vertex maximum is undefined for N = {n_edges}: \
         the decomposition N = n(n-1)/2 + m has m = {m} > (n - 1)/2 with n = {n}"
    )]
    UndefinedNoUniversalMax { n_edges: u64, n: u64, m: u64 },

    #[error("graph6 decode failed: {reason}")]
    Graph6 { reason: String },

    #[error("the vertex-count cap derived from the triangular decomposition is only sound for the unrestricted family")]
    LemmaCapRestrictedFamily,

    #[error("estimated enumeration of about {estimate} isomorphism classes exceeds the ceiling of {ceiling}; raise the ceiling to force the run")]
    EnumerationTooLarge { estimate: u64, ceiling: u64 },

    #[error("enumeration supports vertex caps up to 32 (got {cap}); that scale is out of reach regardless")]
    VertexCapTooLarge { cap: usize },

    #[error("shelled planar construction requires at least 21 edges (got {n_edges})")]
    ShellingTooSmall { n_edges: u64 },

    #[error("planar lower-bound constructions cover 10..=32 edges (got {n_edges})")]
    PlanarPoolOutOfRange { n_edges: u64 },

    #[error(
        "rewire precondition violated: maximum degree must equal vertex count - 2 \
         (got maximum degree {max_degree} on {vertices} vertices)"
    )]
    RewirePrecondition { max_degree: usize, vertices: usize },

    #[error("the open planar range is 10..=32 (got {n_edges})")]
    ExploreOutOfRange { n_edges: u64 },
}
