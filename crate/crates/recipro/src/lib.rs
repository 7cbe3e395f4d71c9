//! Directed-graph reciprocity analysis.
//!
//! The reciprocity of a digraph is the fraction of its edges whose
//! reverse edge also exists. How large that fraction *could* be is
//! constrained by the joint out-/in-degree sequence alone, and this
//! crate provides the toolkit around that question:
//!
//! - [`Digraph`] and its symmetric/anti-symmetric decomposition,
//!   reciprocity metrics, and [`BiSequence`] degree summaries;
//! - [`graphicality`]: Erdős–Gallai and Fulkerson–Chen–Anstee tests with
//!   constructive realizations;
//! - [`bounds`]: the total-balanced-degree upper bound on reciprocated
//!   edges, necessary and sufficient achievability conditions, exact
//!   values for (nearly) balanced sequences, and the 3-color tomography
//!   encoding that makes bound achievability hard in general;
//! - [`rewire`]: greedy degree-preserving elimination of rewirable
//!   3-paths, structural audits, and an even-cycle improver;
//! - [`oracle`]: exhaustive exact maxima, realization counts, and
//!   tomography feasibility on small instances;
//! - [`netio`]: edge-list ingestion and batch report rows.

pub mod bisequence;
pub mod bounds;
pub mod digraph;
pub mod error;
pub mod graphicality;
pub mod netio;
pub mod oracle;
pub mod ratio;
pub mod rewire;

#[cfg(feature = "testsupport")]
pub mod testsupport;

pub use bisequence::{degree_summary, BiSequence, DegreeSummary};
pub use digraph::{Digraph, EdgeSet, NodeId};
pub use error::{Error, Result};
pub use ratio::Ratio;
