//! Entropy and structure of stochastic matrices and quantum channels.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`] — dense complex matrices and a Hermitian eigensolver,
//!   generic over the real scalar;
//! - [`entropy`] — probability vectors, column-stochastic matrices,
//!   Shannon/relative/weighted entropies and the χ-quantity;
//! - [`structure`] — Birkhoff decomposition, stationary vectors, seeded
//!   samplers, and exact saturation constructors;
//! - [`quantum`] — density matrices, Kraus channels, Jamiołkowski
//!   operators, quantum entropies, Kraus matrices, majorization;
//! - [`verify`] — seeded property suites for every implemented inequality
//!   and identity, plus a fuzzer for the open composition conjecture;
//! - [`io`] — JSON documents shared with the `stochent` binary.
//!
//! Conventions fixed throughout: all logarithms are base 2; stochastic
//! matrices are COLUMN-stochastic and act on column distributions as `T·p`;
//! entries below `1e-12` count as zero probability; every sampler is
//! deterministic given its seed.

pub mod entropy;
pub mod error;
pub mod io;
pub mod linalg;
pub mod quantum;
pub mod rng;
pub mod structure;
pub mod verify;

/// Double-precision complex matrix, the concrete carrier used above the
/// generic kernel.
pub type ComplexMatrix = linalg::Matrix<f64>;
/// Double-precision probability vector.
pub type ProbVector = entropy::ProbVec<f64>;
/// Double-precision column-stochastic matrix.
pub type StochasticMatrix = entropy::StochMat<f64>;
/// Finite-or-infinite relative entropy value.
pub type RelativeEntropy = entropy::RelEntropy<f64>;

pub use error::{Error, Result};
pub use quantum::{DensityMatrix, JamiolkowskiOperator, KrausChannel};
pub use verify::{SuiteReport, Violation};
