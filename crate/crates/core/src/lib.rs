//! Inducibility of oriented stars.
//!
//! An oriented star `S_{k,l}` is a star with `k + l` leaves whose center has
//! out-degree `k` and in-degree `l`. This crate provides:
//!
//! * [`graph`]: oriented graph values, neighborhood profiles, blow-ups and
//!   clone-and-replace moves, plus the `dg` text format;
//! * [`density`]: exact and Monte-Carlo induced-star counting, the normalized
//!   densities `i(S, G)` and `s(G)`, per-vertex conditionals and the typed
//!   decomposition relative to a vertex split;
//! * [`opt`]: the two-variable (or one-variable, for `k = l`) polynomial
//!   whose maximum gives the inducibility, its maximizer, the concave
//!   majorant and the asymptotic expansion of the optimum;
//! * [`construction`]: near-extremal orientations of complete bipartite
//!   graphs;
//! * [`search`]: exhaustive extremal search at tiny orders and a hill-climbing
//!   heuristic;
//! * [`verifier`]: universal per-vertex bounds, partition statistics, the
//!   stability diagnostic, sampled lemma checks and closed-form arithmetic
//!   sweeps;
//! * [`cli`]: the `starind` command-line front end.
//!
//! ```
//! use star_inducibility::{opt, StarSpec};
//!
//! let spec = StarSpec::new(2, 1).unwrap();
//! let res = opt::solve_opt(&spec, 1e-12).unwrap();
//! assert!((res.inducibility - 0.2025).abs() < 1e-9);
//! ```

pub mod cli;
pub mod construction;
pub mod density;
pub mod error;
pub mod graph;
pub mod opt;
pub mod rational;
pub mod search;
pub mod star;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{OrientedGraph, StarRole, VertexProfile, VertexSet};
pub use rational::Rational;
pub use star::StarSpec;
