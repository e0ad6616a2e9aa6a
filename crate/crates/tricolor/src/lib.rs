//! Graph 3-coloring with a hybrid self-adaptive differential evolution solver.
//!
//! The solver evolves a population of real-valued weight vectors. Each vector
//! is decoded into a partial 3-coloring: the weights order the vertices into a
//! permutation, a DSatur construction heuristic colors vertices in saturation
//! order (permutation rank breaks ties), and vertices that cannot receive any
//! of the three colors stay uncolored. The objective is the number of
//! uncolored vertices; zero means a proper 3-coloring was found.
//!
//! Modules:
//! - [`graph`]: graph representation, DIMACS I/O, seeded random 3-colorable
//!   graph generators (equi-partite, uniform, flat).
//! - [`decode`]: weight vector -> permutation -> DSatur decode -> penalty.
//! - [`solver`]: DE/rand/1/bin with log-normal self-adaptation of F and CR.
//! - [`local_search`]: saturation-ordered 1-swap improvement heuristic.
//! - [`bench`]: multi-run campaigns, SR/AES aggregation, density sweeps,
//!   local-search ablation, CSV output.

pub mod bench;
pub mod decode;
pub mod graph;
pub mod local_search;
pub mod solver;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
