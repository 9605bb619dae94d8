//! Triangle-path convexity on simple undirected graphs.
//!
//! A path is a triangle path when no two of its vertices more than two
//! steps apart are adjacent; a vertex set is t-convex when it contains every
//! triangle path between its members. This crate decides t-convexity,
//! computes t-convex hulls, enumerates the convex sets of prime graphs, and
//! computes the convexity number and hull number of connected graphs, all
//! in polynomial time. The `oracle` feature adds exponential
//! definition-level implementations for cross-checking on small graphs.

#[cfg(feature = "cli")]
pub mod cli;
pub mod convexity;
pub mod convexity_number;
pub mod decomposition;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hull_number;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod prime;
pub mod vertex_set;

pub use convexity::{is_m_convex, is_p3_convex, is_t_convex, is_t_hull_set, t_convex_hull, ConvexityWitness};
pub use convexity_number::{convexity_number, extension_size, ConvexityNumberResult};
pub use decomposition::{decompose, is_prime, pivots, verify_d_ordering, Decomposition};
pub use error::{Error, Result};
pub use generate::GraphKind;
pub use graph::{Format, Graph, Path};
pub use hull_number::{
    hull_number, is_hull_set_by_characterization, satisfies, Condition, HullNumberResult, SatisfactionVerdict,
};
pub use prime::{
    enumerate_prime_convex_sets, prime_is_t_convex, prime_t_hull, PrimeConvexFamily, PrimeGraph,
};
pub use vertex_set::VertexSet;
