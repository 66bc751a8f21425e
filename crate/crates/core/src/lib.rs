//! Exact chromatic polynomials and DP color functions of small hypergraphs,
//! with procedures that check comparison inequalities between the two.

pub mod chromatic;
pub mod covers;
pub mod error;
pub mod format;
pub mod harness;
pub mod hypergraph;
pub mod instance;
pub mod poly;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, VertexId};
pub use poly::{ExactRational, IntPoly, Sign, Threshold};
