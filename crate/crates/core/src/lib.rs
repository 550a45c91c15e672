//! Graph signal interpolation with graph basis functions (GBFs) localized by
//! a partition of unity over community subdomains.
//!
//! Pipeline:
//!
//! 1. build or load a simple undirected [`graph::Graph`];
//! 2. decompose its normalized Laplacian ([`spectral::eigendecompose`]);
//! 3. partition it into communities ([`clustering`]), choosing the community
//!    count by modularity;
//! 4. grow communities into overlapping subdomains and build the weights
//!    ([`pum::enlarge_cover`], [`pum::pou_weights`]);
//! 5. interpolate locally with the variational spline GBF and blend
//!    ([`pum::pum_interpolate`]).
//!
//! The [`harness`] module runs the whole pipeline from a config and reports
//! RMAE / RRMSE.

pub mod clustering;
pub mod error;
pub mod gbf;
pub mod graph;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod pum;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
