use crate::binmat::BinaryMatrix;

use super::{
    merge_disjoint, slots_for, verify_rows, AggError, AggregateScheme, AggregateSignature, Signed,
    VerifyOutcome,
};

fn check_len(matrix: &BinaryMatrix, len: usize) -> Result<(), AggError> {
    if len > matrix.cols() {
        return Err(AggError::DimensionMismatch {
            len,
            cols: matrix.cols(),
        });
    }
    Ok(())
}

/// Aggregates two signed sequences against a fixed matrix. Single
/// signatures are expanded along their claim's column first.
pub fn bounded_agg<Sc: AggregateScheme>(
    matrix: &BinaryMatrix,
    scheme: &Sc,
    a: &Signed<Sc::Signature>,
    b: &Signed<Sc::Signature>,
) -> Result<Signed<Sc::Signature>, AggError> {
    check_len(matrix, a.claims.len())?;
    check_len(matrix, b.claims.len())?;
    let claims = merge_disjoint(&a.claims, &b.claims)?;
    let ta = slots_for(scheme, matrix, a)?;
    let tb = slots_for(scheme, matrix, b)?;
    let slots = ta
        .slots
        .iter()
        .zip(&tb.slots)
        .map(|(x, y)| scheme.aggregate(x, y))
        .collect();
    Ok(Signed::aggregate(claims, AggregateSignature::new(slots)))
}

/// Identifies the valid claims of `claims` under the slot vector `tau`.
/// Exact when at most `d` signatures are invalid and `matrix` is a d-CFF.
pub fn bounded_verify<Sc: AggregateScheme>(
    matrix: &BinaryMatrix,
    d: usize,
    scheme: &Sc,
    signed: &Signed<Sc::Signature>,
) -> Result<VerifyOutcome, AggError> {
    check_len(matrix, signed.claims.len())?;
    let tau = slots_for(scheme, matrix, signed)?;
    Ok(verify_rows(
        scheme,
        matrix,
        &signed.claims,
        &tau,
        0..matrix.rows(),
        true,
        d,
    ))
}
