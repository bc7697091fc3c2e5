//! Structure of cyclically h-partite ("h-cyclic") complex matrices.
//!
//! A matrix is h-cyclic when its digraph's vertices split into classes
//! `V_1, …, V_h` and every arc runs from some `V_ℓ` to `V_{ℓ+1}` (indices mod
//! h). The crate detects such partitions, extracts the block cycle
//! `A_{12}, A_{23}, …, A_{h1}`, predicts the spectrum from the block
//! products, rotates Jordan chains through the h-th roots of unity, builds
//! zero-eigenvalue chains and synthesizes h-cyclic matrices from chain data.
//!
//! Vertex, class and chain-position indices are 1-based in every public
//! operation.

pub mod blocks;
pub mod circulant;
pub mod cli;
pub mod digraph;
pub mod eigen;
pub mod error;
pub mod io;
pub mod jordan;
pub mod matrix;
pub mod random;
pub mod samples;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Tolerance, C64};
