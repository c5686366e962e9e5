//! Binary incidence matrices, cover-free checks and product constructions.

pub mod catalog;
mod check;
mod construct;
mod matrix;
mod sperner;
mod text;

pub use check::{is_d_cff, is_d_lambda_cff, CffChecker, CffViolation, DEFAULT_CHECK_BUDGET};
pub use construct::{const1, kronecker};
pub use matrix::BinaryMatrix;
pub use sperner::{min_t_sperner, sperner_matrix};

pub(crate) use text::split_lines;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BinmatError {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry ({row}, {col}) is {value}, expected 0 or 1")]
    NotBinary { row: usize, col: usize, value: u8 },
    #[error("block element {element} outside ground set of size {ground_size}")]
    ElementOutOfRange { element: usize, ground_size: usize },
    #[error("matrix dimensions overflow")]
    SizeOverflow,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("work {required} exceeds budget {budget}")]
    BudgetExceeded { required: String, budget: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
