use super::{BinaryMatrix, BinmatError};

fn checked_dims(rows: Option<usize>, cols: Option<usize>) -> Result<(usize, usize), BinmatError> {
    match (rows, cols) {
        (Some(r), Some(c)) if r.checked_mul(c).is_some() => Ok((r, c)),
        _ => Err(BinmatError::SizeOverflow),
    }
}

/// Kronecker product over {0,1}: block `(i, j)` of the result is `right`
/// when `left[i][j] = 1` and zero otherwise.
pub fn kronecker(left: &BinaryMatrix, right: &BinaryMatrix) -> Result<BinaryMatrix, BinmatError> {
    let (rows, cols) = checked_dims(
        left.rows().checked_mul(right.rows()),
        left.cols().checked_mul(right.cols()),
    )?;
    let mut out = BinaryMatrix::zeros(rows, cols)?;
    for i in 0..left.rows() {
        for j in 0..left.cols() {
            if !left.get(i, j) {
                continue;
            }
            for r in 0..right.rows() {
                for c in 0..right.cols() {
                    if right.get(r, c) {
                        out.set(i * right.rows() + r, j * right.cols() + c, true);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The stacked construction `Const1(a1, a2, b)`.
///
/// The top `b.rows() * a1.rows()` rows are `b (x) a1`, which splits the
/// columns into `a2.cols()` blocks of `a1.cols()` columns. Below that, every
/// column of block `i` gets column `i` of `a2` appended.
pub fn const1(
    a1: &BinaryMatrix,
    a2: &BinaryMatrix,
    b: &BinaryMatrix,
) -> Result<BinaryMatrix, BinmatError> {
    if b.cols() != a2.cols() {
        return Err(BinmatError::DimensionMismatch(format!(
            "Const1 needs B with {} columns (one per column of A2), got {}",
            a2.cols(),
            b.cols()
        )));
    }
    let top_rows = b.rows().checked_mul(a1.rows());
    let (rows, cols) = checked_dims(
        top_rows.and_then(|t| t.checked_add(a2.rows())),
        a1.cols().checked_mul(a2.cols()),
    )?;
    let top_rows = top_rows.expect("checked above");
    let top = kronecker(b, a1)?;
    let mut out = BinaryMatrix::zeros(rows, cols)?;
    for i in 0..top_rows {
        for j in 0..cols {
            if top.get(i, j) {
                out.set(i, j, true);
            }
        }
    }
    for block in 0..a2.cols() {
        for r in 0..a2.rows() {
            if a2.get(r, block) {
                for c in 0..a1.cols() {
                    out.set(top_rows + r, block * a1.cols() + c, true);
                }
            }
        }
    }
    Ok(out)
}
