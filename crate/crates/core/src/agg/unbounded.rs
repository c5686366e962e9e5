use std::collections::BTreeSet;

use crate::nested::{NestedFamily, RowProvenance};

use super::{
    merge_disjoint, slots_for, verify_rows, AggError, AggregateScheme, AggregateSignature, Signed,
    VerifyOutcome,
};

fn covering(family: &NestedFamily, len: usize) -> Result<usize, AggError> {
    family.covering(len).ok_or(AggError::LevelUnavailable(len))
}

/// Aggregates two signed sequences under a nested family.
///
/// Each input must carry slots for the level covering its own length (or be
/// a single signature). The output carries slots for the level covering the
/// longer sequence. Rows added between the two levels are filled from their
/// provenance: a Zero row takes the larger side's slot, a One row also folds
/// in the smaller side's slot 0, and a Repeat row folds in the matching slot.
///
/// The family is not grown here; call
/// [`NestedFamily::ensure_covering`] first.
pub fn unbounded_agg<Sc: AggregateScheme>(
    family: &NestedFamily,
    scheme: &Sc,
    a: &Signed<Sc::Signature>,
    b: &Signed<Sc::Signature>,
) -> Result<Signed<Sc::Signature>, AggError> {
    let la = covering(family, a.claims.len())?;
    let lb = covering(family, b.claims.len())?;
    let ((l1, s1), (l2, s2)) = if la <= lb {
        ((la, a), (lb, b))
    } else {
        ((lb, b), (la, a))
    };
    let claims = merge_disjoint(&s1.claims, &s2.claims)?;

    let m1 = family.matrix(l1).expect("covered level exists");
    let m2 = family.matrix(l2).expect("covered level exists");
    let tau1 = slots_for(scheme, m1, s1)?;
    let tau2 = slots_for(scheme, m2, s2)?;

    let mut slots = Vec::with_capacity(tau2.slots.len());
    slots.extend(
        tau1.slots
            .iter()
            .zip(&tau2.slots)
            .map(|(x, y)| scheme.aggregate(x, y)),
    );
    if l2 > l1 {
        let provenance = family.provenance_between(l1, l2)?;
        for (tag, own) in provenance.iter().zip(&tau2.slots[tau1.slots.len()..]) {
            let folded = match *tag {
                RowProvenance::Zero => own.clone(),
                RowProvenance::One => scheme.aggregate(&tau1.slots[0], own),
                RowProvenance::Repeat(r) => scheme.aggregate(&tau1.slots[r + 1], own),
                RowProvenance::New => unreachable!("provenance below the first level is never New"),
            };
            slots.push(folded);
        }
    }
    debug_assert_eq!(slots.len(), m2.rows() + 1);
    Ok(Signed::aggregate(claims, AggregateSignature::new(slots)))
}

/// Identifies the valid claims using the level covering the sequence length.
/// Tries slot 0 first and falls back to the rows when it fails.
pub fn unbounded_verify<Sc: AggregateScheme>(
    family: &NestedFamily,
    scheme: &Sc,
    signed: &Signed<Sc::Signature>,
) -> Result<VerifyOutcome, AggError> {
    let k = covering(family, signed.claims.len())?;
    let matrix = family.matrix(k).expect("covered level exists");
    let tau = slots_for(scheme, matrix, signed)?;
    Ok(verify_rows(
        scheme,
        matrix,
        &signed.claims,
        &tau,
        0..matrix.rows(),
        true,
        family.d(),
    ))
}

/// Like [`unbounded_verify`] with some slots lost. `missing` holds slot
/// indices in `0..=t`. Losing slot 0 only disables the fast path; at most
/// `lambda - 1` row slots may be lost.
pub fn lambda_robust_verify<Sc: AggregateScheme>(
    family: &NestedFamily,
    scheme: &Sc,
    signed: &Signed<Sc::Signature>,
    missing: &BTreeSet<usize>,
) -> Result<VerifyOutcome, AggError> {
    let k = covering(family, signed.claims.len())?;
    let matrix = family.matrix(k).expect("covered level exists");
    let tau = slots_for(scheme, matrix, signed)?;
    if let Some(&slot) = missing.iter().find(|&&s| s > matrix.rows()) {
        return Err(AggError::SlotOutOfRange {
            slot,
            rows: matrix.rows(),
        });
    }
    let lost_rows = missing.iter().filter(|&&s| s > 0).count();
    let lambda = family.lambda_at(k);
    if lost_rows as u64 >= lambda {
        return Err(AggError::RobustnessExceeded {
            missing: lost_rows,
            lambda,
        });
    }
    let rows = (0..matrix.rows()).filter(|i| !missing.contains(&(i + 1)));
    Ok(verify_rows(
        scheme,
        matrix,
        &signed.claims,
        &tau,
        rows,
        !missing.contains(&0),
        family.d(),
    ))
}
