//! Exact Hochschild (co)homology and explicit splittings for the convolution
//! algebras of finite semilattices.

pub mod algebra;
pub mod caps;
pub mod chains;
pub mod cli;
pub mod error;
pub mod homology;
pub mod homotopy_free;
pub mod io;
pub mod natural_splitting;
pub mod scalar;
pub mod semilattice;
pub mod suite;

pub use error::{Error, Result};
