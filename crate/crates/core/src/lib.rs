//! Exact normalized-Laplacian spectral toolkit for small graphs.
//!
//! * [`graph`]: bit-row graphs and the families F_{p,q}, γ_{4k}, K_n, C_n, ...
//! * [`canon`], [`graph6`]: canonical labeling and interchange.
//! * [`poly`], [`spectral`]: exact characteristic polynomials of `L(G)`.
//! * [`structure`]: the three-eigenvalue equations and degree witnesses.
//! * [`enumerate`]: isomorph-free generation of small graphs.
//! * [`verify`], [`cache`]: cospectral-mate searches and their fingerprint cache.
//! * [`cli`]: the `nlspec` command line.

pub mod cache;
pub mod canon;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod poly;
pub mod spectral;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
