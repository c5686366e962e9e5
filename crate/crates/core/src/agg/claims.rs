use super::AggError;

/// A `(public key, message)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Claim {
    pk: Vec<u8>,
    msg: Vec<u8>,
}

impl Claim {
    pub fn new(pk: impl Into<Vec<u8>>, msg: impl Into<Vec<u8>>) -> Result<Self, AggError> {
        let pk = pk.into();
        if pk.is_empty() {
            return Err(AggError::EmptyPublicKey);
        }
        Ok(Claim {
            pk,
            msg: msg.into(),
        })
    }

    pub fn pk(&self) -> &[u8] {
        &self.pk
    }

    pub fn msg(&self) -> &[u8] {
        &self.msg
    }
}

/// An ordered list of claims and placeholders (`None`). Positions are
/// 0-based here; file formats and user-facing output are 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ClaimSequence {
    entries: Vec<Option<Claim>>,
}

impl ClaimSequence {
    pub fn new() -> Self {
        Self::default()
    }

    /// `len` placeholders.
    pub fn empty(len: usize) -> Self {
        ClaimSequence {
            entries: vec![None; len],
        }
    }

    pub fn from_entries(entries: Vec<Option<Claim>>) -> Self {
        ClaimSequence { entries }
    }

    /// A sequence of length `pos + 1` holding only `claim` at `pos`.
    pub fn single(pos: usize, claim: Claim) -> Self {
        let mut s = Self::empty(pos + 1);
        s.entries[pos] = Some(claim);
        s
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, pos: usize) -> Option<&Claim> {
        self.entries.get(pos).and_then(Option::as_ref)
    }

    pub fn entries(&self) -> &[Option<Claim>] {
        &self.entries
    }

    /// Sets `pos`, growing the sequence with placeholders if needed.
    pub fn set(&mut self, pos: usize, claim: Option<Claim>) {
        if pos >= self.entries.len() {
            self.entries.resize(pos + 1, None);
        }
        self.entries[pos] = claim;
    }

    /// Positions holding a claim, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_some())
            .map(|(i, _)| i)
    }

    pub fn claim_count(&self) -> usize {
        self.entries.iter().filter(|c| c.is_some()).count()
    }

    pub fn claims(&self) -> impl Iterator<Item = (usize, &Claim)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().map(|c| (i, c)))
    }

    /// The only claim, if there is exactly one.
    pub fn single_claim(&self) -> Option<(usize, &Claim)> {
        let mut it = self.claims();
        match (it.next(), it.next()) {
            (Some(first), None) => Some(first),
            _ => None,
        }
    }

    /// Keeps `self[j]` where `row[j]` is set. `row` is zero-extended or
    /// truncated to `self.len()`.
    pub fn select(&self, row: &[bool]) -> ClaimSequence {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if row.get(j).copied().unwrap_or(false) {
                    c.clone()
                } else {
                    None
                }
            })
            .collect();
        ClaimSequence { entries }
    }

    /// Same as [`ClaimSequence::select`] with row `i` of `matrix`.
    pub fn select_row(&self, matrix: &crate::binmat::BinaryMatrix, i: usize) -> ClaimSequence {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j < matrix.cols() && matrix.get(i, j) {
                    c.clone()
                } else {
                    None
                }
            })
            .collect();
        ClaimSequence { entries }
    }
}

/// First position where both sequences hold different claims.
fn first_conflict(a: &ClaimSequence, b: &ClaimSequence) -> Option<usize> {
    a.entries
        .iter()
        .zip(&b.entries)
        .position(|(x, y)| matches!((x, y), (Some(x), Some(y)) if x != y))
}

/// True when, at every shared position, one side is a placeholder or both
/// hold the same claim.
pub fn exclusively_mergeable(a: &ClaimSequence, b: &ClaimSequence) -> bool {
    first_conflict(a, b).is_none()
}

/// Positionwise union; the result is as long as the longer input.
pub fn merge(a: &ClaimSequence, b: &ClaimSequence) -> Result<ClaimSequence, AggError> {
    if let Some(position) = first_conflict(a, b) {
        return Err(AggError::NotExclusivelyMergeable { position });
    }
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.clone();
    for (slot, other) in out.entries.iter_mut().zip(&short.entries) {
        if slot.is_none() {
            slot.clone_from(other);
        }
    }
    Ok(out)
}
