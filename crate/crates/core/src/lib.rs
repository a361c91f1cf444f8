//! Maximum double-weighted source-sink pairs of digraphs, computed through a
//! minimum-cost circulation on an auxiliary network, together with the
//! minimum-cost circular cover that certifies optimality.
//!
//! On top of the digraph layer, [`plane`] solves the double-weighted
//! Clar-Fries problem (Clar numbers, Fries numbers, and their common
//! generalization) for perfectly matchable plane bipartite graphs by passing
//! to the planar dual.
//!
//! Module map:
//!
//! * [`digraph`]: digraphs, bidirection, potentials and tensions, feasible
//!   tensions, and source-sink pair verification.
//! * [`mcc`]: exact minimum-cost circulation with lower bounds and circulation
//!   decomposition.
//! * [`sosi`]: the auxiliary network, pair and cover extraction, and the
//!   specialized wrappers (sink-stable sets, resonant sets, constrained pairs).
//! * [`plane`]: plane bipartite graphs, matching orientations, planar duals.
//! * [`oracle`]: exhaustive reference implementations used for cross-checks.
//! * [`io`] and [`cli`]: JSON formats and the command-line front end.

pub mod cli;
pub mod digraph;
pub mod error;
pub mod io;
pub mod mcc;
pub mod oracle;
pub mod plane;
pub mod sosi;

pub use error::{Error, ErrorKind};

/// Exact rational used for weights, covers and optimum values.
pub type Rational = num_rational::Ratio<i64>;
