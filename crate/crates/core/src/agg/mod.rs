//! Fault-tolerant aggregation of signatures.
//!
//! An aggregate is a vector of slots `tau[0..=t]`. Slot 0 holds the aggregate
//! of every claim; slot `i` holds the aggregate over the claims selected by
//! row `i` of a d-CFF incidence matrix. When at most `d` signatures are
//! invalid, the rows that still verify cover exactly the valid claims.
//!
//! [`bounded_agg`] works against one fixed matrix. [`unbounded_agg`] works
//! against a [`NestedFamily`](crate::nested::NestedFamily) and grows the
//! slot vector as claims arrive.

mod bounded;
mod claims;
mod scheme;
mod unbounded;

use std::collections::BTreeSet;

use crate::binmat::BinaryMatrix;
use crate::nested::NestedError;

pub use bounded::{bounded_agg, bounded_verify};
pub use claims::{exclusively_mergeable, merge, Claim, ClaimSequence};
pub use scheme::{AggregateScheme, MockScheme, MockSignature, MOCK_MODULUS};
pub use unbounded::{lambda_robust_verify, unbounded_agg, unbounded_verify};

/// The slot vector `tau[0..=t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregateSignature<S> {
    pub slots: Vec<S>,
}

impl<S> AggregateSignature<S> {
    pub fn new(slots: Vec<S>) -> Self {
        AggregateSignature { slots }
    }

    /// Number of matrix rows `t` (one less than the slot count).
    pub fn rows(&self) -> usize {
        self.slots.len().saturating_sub(1)
    }
}

/// Either a plain scheme signature on a one-claim sequence or a full slot
/// vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureInput<S> {
    Single(S),
    Slots(AggregateSignature<S>),
}

/// A claim sequence with its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signed<S> {
    pub claims: ClaimSequence,
    pub signature: SignatureInput<S>,
}

impl<S> Signed<S> {
    /// A one-claim sequence at 0-based `pos` carrying its own signature.
    pub fn single(pos: usize, claim: Claim, sig: S) -> Self {
        Signed {
            claims: ClaimSequence::single(pos, claim),
            signature: SignatureInput::Single(sig),
        }
    }

    pub fn aggregate(claims: ClaimSequence, tau: AggregateSignature<S>) -> Self {
        Signed {
            claims,
            signature: SignatureInput::Slots(tau),
        }
    }

    /// The slot vector, if this is not a single signature.
    pub fn slots(&self) -> Option<&AggregateSignature<S>> {
        match &self.signature {
            SignatureInput::Slots(tau) => Some(tau),
            SignatureInput::Single(_) => None,
        }
    }
}

/// Result of a verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    /// 0-based positions identified as valid.
    pub valid: BTreeSet<usize>,
    /// Claims present in the sequence but not identified as valid.
    pub invalid: BTreeSet<usize>,
    /// Slot 0 verified and no row checks were needed.
    pub fast_path: bool,
    /// More than `d` claims were rejected, so the identification guarantee
    /// does not apply.
    pub guarantee_void: bool,
    /// Number of `AggregateScheme::verify` calls made.
    pub scheme_calls: usize,
}

impl VerifyOutcome {
    pub fn all_valid(&self) -> bool {
        self.invalid.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AggError {
    #[error("claim public key is empty")]
    EmptyPublicKey,
    #[error("sequences hold different claims at position {}", position + 1)]
    NotExclusivelyMergeable { position: usize },
    #[error("both sequences hold the claim at position {}; its signature would be counted twice", position + 1)]
    DuplicateClaim { position: usize },
    #[error("single signature given for a sequence with {claims} claims")]
    SingleSignatureMismatch { claims: usize },
    #[error("expected {expected} slots, found {found}")]
    SlotMismatch { expected: usize, found: usize },
    #[error("sequence of length {len} exceeds the {cols} matrix columns")]
    DimensionMismatch { len: usize, cols: usize },
    #[error("no generated level covers {0} claims")]
    LevelUnavailable(usize),
    #[error("{missing} missing slots, but only {} can be tolerated", lambda.saturating_sub(1))]
    RobustnessExceeded { missing: usize, lambda: u64 },
    #[error("slot {slot} is out of range 1..={rows}")]
    SlotOutOfRange { slot: usize, rows: usize },
    #[error(transparent)]
    Nested(#[from] NestedError),
}

/// Slot vector of a single signature `sig` on 0-based column `col`.
fn expand_single<Sc: AggregateScheme>(
    scheme: &Sc,
    matrix: &BinaryMatrix,
    col: usize,
    sig: &Sc::Signature,
) -> AggregateSignature<Sc::Signature> {
    let mut slots = Vec::with_capacity(matrix.rows() + 1);
    slots.push(sig.clone());
    slots.extend((0..matrix.rows()).map(|i| {
        if matrix.get(i, col) {
            sig.clone()
        } else {
            scheme.empty()
        }
    }));
    AggregateSignature { slots }
}

/// Slot vector of `input` against `matrix`, whose row count must match.
fn slots_for<Sc: AggregateScheme>(
    scheme: &Sc,
    matrix: &BinaryMatrix,
    input: &Signed<Sc::Signature>,
) -> Result<AggregateSignature<Sc::Signature>, AggError> {
    match &input.signature {
        SignatureInput::Single(sig) => {
            let (col, _) =
                input
                    .claims
                    .single_claim()
                    .ok_or(AggError::SingleSignatureMismatch {
                        claims: input.claims.claim_count(),
                    })?;
            Ok(expand_single(scheme, matrix, col, sig))
        }
        SignatureInput::Slots(tau) => {
            if tau.slots.len() != matrix.rows() + 1 {
                return Err(AggError::SlotMismatch {
                    expected: matrix.rows() + 1,
                    found: tau.slots.len(),
                });
            }
            Ok(tau.clone())
        }
    }
}

/// Merges the sequences and rejects shared claims, whose signatures the
/// slot arithmetic cannot deduplicate.
fn merge_disjoint(a: &ClaimSequence, b: &ClaimSequence) -> Result<ClaimSequence, AggError> {
    let merged = merge(a, b)?;
    if let Some(position) = a.support().find(|&p| b.get(p).is_some()) {
        return Err(AggError::DuplicateClaim { position });
    }
    Ok(merged)
}

/// Row-by-row identification over `rows` (0-based matrix rows). `d` only
/// feeds the `guarantee_void` flag.
fn verify_rows<Sc: AggregateScheme>(
    scheme: &Sc,
    matrix: &BinaryMatrix,
    claims: &ClaimSequence,
    tau: &AggregateSignature<Sc::Signature>,
    rows: impl Iterator<Item = usize>,
    use_fast_path: bool,
    d: usize,
) -> VerifyOutcome {
    let support: BTreeSet<usize> = claims.support().collect();
    let mut scheme_calls = 0;
    if use_fast_path {
        scheme_calls += 1;
        if scheme.verify(claims, &tau.slots[0]) {
            return VerifyOutcome {
                valid: support,
                invalid: BTreeSet::new(),
                fast_path: true,
                guarantee_void: false,
                scheme_calls,
            };
        }
    }
    let mut valid = BTreeSet::new();
    for i in rows {
        let selected = claims.select_row(matrix, i);
        scheme_calls += 1;
        if scheme.verify(&selected, &tau.slots[i + 1]) {
            valid.extend(selected.support());
        }
    }
    let invalid: BTreeSet<usize> = support.difference(&valid).copied().collect();
    VerifyOutcome {
        guarantee_void: invalid.len() > d,
        valid,
        invalid,
        fast_path: false,
        scheme_calls,
    }
}
