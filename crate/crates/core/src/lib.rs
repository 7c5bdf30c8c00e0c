//! Exact-arithmetic checks for second osculating spaces, second fundamental forms,
//! the root-system normality criterion, and SLₙ-orbits of trivectors.

pub mod embeddings;
pub mod error;
pub mod exterior;
pub mod grassmann;
pub mod liecrit;
pub mod linalg;
pub mod orbits;
pub mod sff;

pub use error::{Error, Result};
pub use exterior::{pairing, wedge, KVector, MultiIndex, Rational};
pub use linalg::{rank_exact, MatrixQ, Subspace};
