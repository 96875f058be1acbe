use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong while building or checking the algebraic objects.
#[derive(Debug, Error)]
pub enum Error {
    #[error("product table is malformed: {0}")]
    MalformedTable(String),
    #[error("product is not associative at ({x}, {y}, {z})")]
    NonAssociative { x: usize, y: usize, z: usize },
    #[error("claimed unit {0} does not satisfy 1x = x1 = x")]
    BadUnit(usize),
    #[error("{what} needs {size} but the configured cap is {cap}")]
    ResourceLimit { what: String, size: u128, cap: u128 },
    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operands live over different semigroup tables")]
    BaseMismatch,
    #[error("map is not a homomorphism: f({x}*{y}) != f({x})*f({y})")]
    NotHomomorphism { x: usize, y: usize },
    #[error("map does not send the unit to the unit")]
    UnitNotPreserved,
    #[error("table has no unit element")]
    NotUnital,
    #[error("table has a non-idempotent element")]
    NotIdempotent,
    #[error("table is not a unital semilattice")]
    NotUnitalSemilattice,
    #[error("table already has a unit element")]
    AlreadyUnital,
    #[error("table is not commutative")]
    NotCommutative,
    #[error("degree {degree} is below the minimum {min}")]
    DegreeTooLow { degree: usize, min: usize },
    #[error("degree {degree} is outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("tuple has arity {found}, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operands carry different coefficient modules")]
    ModuleMismatch,
    #[error("bimodule is not symmetric")]
    NotSymmetric,
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("diagonal element property fails: {0}")]
    DiagonalProperty(String),
    #[error("formal identity failed for w[{degree}]")]
    FormalIdentityFailed { degree: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Failures caused by the environment rather than by the mathematics.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. } | Error::Json(_) | Error::Parse(_))
    }

    /// Process exit code: 2 for I/O and usage problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let usage = matches!(
            self,
            Error::ResourceLimit { .. } | Error::DegreeTooLow { .. } | Error::DegreeOutOfRange { .. }
        );
        if self.is_io() || usage {
            2
        } else {
            1
        }
    }
}
