//! Verification laboratory for dominance-chain embeddings of matrix
//! problems into dynamic longest-increasing-subsequence instances.
//!
//! The crate builds labeled point-set embeddings of matrices, verifies the
//! closed-form chain-weight formulas against brute-force oracles, maintains a
//! dynamic weighted-LIS structure, and runs two complete reductions on top of
//! it: the (max,+)-matrix product through weight updates and range queries,
//! and online Boolean matrix-vector multiplication through an unweighted
//! tiled variant.

pub mod chain;
pub mod dynseq;
pub mod embedding;
pub mod error;
pub mod model;
pub mod reduction;
pub mod render;
pub mod script;
pub mod verify;

pub use error::{Error, Result};
