use crate::binmat::BinaryMatrix;

use super::{NestedError, RowProvenance};

/// Classifies row `row` of `next` on the first `prev.cols()` columns.
/// Order: Zero, then One, then the smallest matching Repeat.
fn classify(prev: &BinaryMatrix, next: &BinaryMatrix, row: usize) -> Option<RowProvenance> {
    let width = prev.cols();
    let weight = next.row_weight_prefix(row, width);
    if weight == 0 {
        return Some(RowProvenance::Zero);
    }
    if weight == width {
        return Some(RowProvenance::One);
    }
    (0..prev.rows())
        .find(|&r| next.row_prefix_eq(row, prev, r, width))
        .map(RowProvenance::Repeat)
}

/// Checks that `next` extends `prev` as a nested level and classifies every
/// row below `prev`.
pub fn verify_nesting(
    prev: &BinaryMatrix,
    next: &BinaryMatrix,
) -> Result<Vec<RowProvenance>, NestedError> {
    if prev.rows() > next.rows() || prev.cols() > next.cols() {
        return Err(NestedError::NestingViolation {
            row: 0,
            reason: format!(
                "{}x{} cannot extend {}x{}",
                next.rows(),
                next.cols(),
                prev.rows(),
                prev.cols()
            ),
        });
    }
    if let Some(row) = (0..prev.rows()).find(|&i| !next.row_prefix_eq(i, prev, i, prev.cols())) {
        return Err(NestedError::NestingViolation {
            row,
            reason: "upper-left block differs from the previous level".into(),
        });
    }
    (prev.rows()..next.rows())
        .map(|row| {
            classify(prev, next, row).ok_or_else(|| NestedError::NestingViolation {
                row,
                reason: "restriction to the previous columns is not zero, one, or an old row"
                    .into(),
            })
        })
        .collect()
}

/// Rewrites a structural tag into the form `verify_nesting` reports for the
/// same row content.
pub fn canonical_tag(tag: RowProvenance, prev: &BinaryMatrix) -> RowProvenance {
    match tag {
        RowProvenance::Repeat(r) => {
            let weight = prev.row_weight(r);
            if weight == 0 {
                RowProvenance::Zero
            } else if weight == prev.cols() {
                RowProvenance::One
            } else {
                let first = (0..=r)
                    .find(|&q| prev.row_prefix_eq(q, prev, r, prev.cols()))
                    .expect("row r matches itself");
                RowProvenance::Repeat(first)
            }
        }
        other => other,
    }
}
