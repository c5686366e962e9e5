//! Nested families of cover-free families.
//!
//! A nested family is a sequence of CFF incidence matrices `M(1), M(2), ..`
//! where each matrix holds its predecessor in the upper-left corner and every
//! new row, restricted to the old columns, is all zeros, all ones, or a copy
//! of an old row. That restriction is what lets an unbounded aggregator fold
//! old partial aggregates into new rows without the original signatures.

mod family;
mod generate;
mod report;
mod text;
mod verify;

use std::fmt;
use std::sync::Arc;

use crate::binmat::{BinaryMatrix, BinmatError};

pub use family::{NestedFamily, DEFAULT_LEVEL_BUDGET_BITS};
pub use generate::{const1_nested_level, kronecker_nested_level, sperner_nested_level};
pub use report::{compression_report, compression_report_budgeted, CompressionRow};
pub use text::{parse_level, parse_matrix_or_level};
pub use verify::{canonical_tag, verify_nesting};

/// How a row below the previous level looks on the previous level's columns.
///
/// `Repeat` holds a 0-based row index into the previous level; the text
/// format writes it 1-based (`R1` is the first row).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowProvenance {
    Zero,
    One,
    Repeat(usize),
    /// Rows of the first level, which has no predecessor.
    New,
}

impl fmt::Display for RowProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowProvenance::Zero => f.write_str("Z"),
            RowProvenance::One => f.write_str("O"),
            RowProvenance::Repeat(r) => write!(f, "R{}", r + 1),
            RowProvenance::New => f.write_str("N"),
        }
    }
}

/// One matrix of a nested family with the provenance of its new rows.
///
/// `level` is the family's native index: `t` (the row count, from 2) for the
/// Sperner family and `l` (from 1) for the product families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedLevel {
    pub level: usize,
    pub matrix: BinaryMatrix,
    pub prev_rows: usize,
    pub prev_cols: usize,
    /// One tag per row `prev_rows..rows`.
    pub provenance: Vec<RowProvenance>,
}

impl NestedLevel {
    pub(crate) fn first(level: usize, matrix: BinaryMatrix) -> Self {
        let provenance = vec![RowProvenance::New; matrix.rows()];
        NestedLevel {
            level,
            matrix,
            prev_rows: 0,
            prev_cols: 0,
            provenance,
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

/// Supplies the `(d-1)`-CFF ingredient `B_i` for the stacked construction,
/// given the column count `n_i` it must have.
#[derive(Clone)]
pub enum IngredientPolicy {
    /// Optimal 1-CFFs from `sperner_matrix`; only valid for `d = 2`.
    Sperner,
    /// Smallest Kronecker power of a `(d-1)`-CFF seed with at least `n_i`
    /// columns, truncated to the first `n_i` columns.
    KroneckerPowers(BinaryMatrix),
    Custom(Arc<dyn Fn(usize) -> BinaryMatrix + Send + Sync>),
}

impl fmt::Debug for IngredientPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IngredientPolicy::Sperner => f.write_str("Sperner"),
            IngredientPolicy::KroneckerPowers(seed) => {
                write!(f, "KroneckerPowers({}x{})", seed.rows(), seed.cols())
            }
            IngredientPolicy::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum NestedFamilySpec {
    /// Middle-layer Sperner families, one new row per level.
    Sperner1,
    /// `M(l) = seed (x) M(l-1)`.
    KroneckerNested {
        seed: BinaryMatrix,
        d: usize,
        lambda: usize,
    },
    /// `M(l) = Const1(M(l-1), M(l-1), B_{l-1})`.
    Const1Nested {
        seed: BinaryMatrix,
        d: usize,
        lambda: usize,
        policy: IngredientPolicy,
    },
    /// Another family with every row repeated `copies` times in place, which
    /// multiplies each level's lambda by `copies`.
    RowRepeated {
        base: Box<NestedFamilySpec>,
        copies: usize,
    },
}

impl NestedFamilySpec {
    pub fn d(&self) -> usize {
        match self {
            NestedFamilySpec::Sperner1 => 1,
            NestedFamilySpec::KroneckerNested { d, .. }
            | NestedFamilySpec::Const1Nested { d, .. } => *d,
            NestedFamilySpec::RowRepeated { base, .. } => base.d(),
        }
    }

    /// Guaranteed lambda of the `k`-th level (1-based position).
    pub fn lambda_at(&self, k: usize) -> u64 {
        match self {
            NestedFamilySpec::Sperner1 => 1,
            NestedFamilySpec::KroneckerNested { lambda, .. } => {
                (*lambda as u64).saturating_pow(k as u32)
            }
            NestedFamilySpec::Const1Nested { lambda, .. } => *lambda as u64,
            NestedFamilySpec::RowRepeated { base, copies } => {
                base.lambda_at(k).saturating_mul(*copies as u64)
            }
        }
    }

    /// Native index of the first level.
    pub fn first_native_level(&self) -> usize {
        match self {
            NestedFamilySpec::Sperner1 => 2,
            NestedFamilySpec::RowRepeated { base, .. } => base.first_native_level(),
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NestedError {
    #[error(transparent)]
    Matrix(#[from] BinmatError),
    #[error("seed entry (1,1) must be 1")]
    SeedCorner,
    #[error("seed is not a ({d}; {lambda})-CFF")]
    SeedNotCff { d: usize, lambda: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ingredient for {cols} columns: {reason}")]
    Ingredient { cols: usize, reason: String },
    #[error("level needs {bits} bits, over the budget of {budget}")]
    BudgetExceeded { bits: u128, budget: usize },
    #[error("nesting violated at row {}: {reason}", row + 1)]
    NestingViolation { row: usize, reason: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("no level available covering {0} columns")]
    LevelUnavailable(usize),
}
