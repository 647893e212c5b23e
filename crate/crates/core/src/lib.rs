//! Exact computations with finite-dimensional Lie superalgebras over the
//! rationals: constructions of the classical families, Sylow subalgebras and
//! their normalizers, the 0-superalgebra classification, Duflo-Serganova
//! reductions and relative cohomology.

pub mod dsrep;
pub mod exactla;
pub mod families;
pub mod liesuper;
pub mod relcoh;
pub mod report;
pub mod structure;
pub mod sylow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use exactla::{Mat, Rat, Subspace};
pub use liesuper::{Subalgebra, SuperAlgebra};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    #[error("matrix {0} is not a derivation")]
    NotADerivation(usize),
    #[error("vector is not homogeneous of the required parity")]
    NotHomogeneous,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Eigen(#[from] exactla::EigenError),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("search exhausted: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Deterministic generator used by every sampling routine.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
