//! Exact rational linear algebra over column collections.

mod echelon;
mod matrix;
mod rational;
pub(crate) mod reduce;

pub use echelon::{canonical_normal, hyperplane_normal, EchelonState};
pub use matrix::{columns_independent, RationalMatrix};
pub use rational::{parse_rational, NumberPolicy, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid number {0:?}")]
    BadNumber(String),
    #[error("floating-point literal {0:?} rejected; enable float conversion to accept it")]
    FloatRejected(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("matrix input: {0}")]
    Format(String),
    #[error("column index {index} outside 1..={columns}")]
    ColumnOutOfRange { index: usize, columns: usize },
    #[error("basis columns are linearly dependent (rank {rank} < {size})")]
    DependentBasis { rank: usize, size: usize },
    #[error("basis has {found} columns, a hyperplane in dimension {dim} needs {expected}")]
    BasisSize { dim: usize, expected: usize, found: usize },
    #[error("matroid rank {rank} differs from ambient dimension {dim}")]
    RankDeficient { rank: usize, dim: usize },
}
