use crate::binmat::{BinaryMatrix, CffChecker};

use super::generate::{
    check_const1_params, check_seed, const1_step, kronecker_step, repeat_level_rows, sperner_first,
    sperner_step,
};
use super::{canonical_tag, NestedError, NestedFamilySpec, NestedLevel, RowProvenance};

/// Default cap on the bit size of a generated level, `2^28`.
pub const DEFAULT_LEVEL_BUDGET_BITS: usize = 1 << 28;

/// A generated prefix of a nested family.
///
/// Levels are addressed by 1-based position `k`; `NestedLevel::level` keeps
/// the family's native index.
#[derive(Debug, Clone)]
pub struct NestedFamily {
    spec: NestedFamilySpec,
    budget_bits: usize,
    /// Levels of the innermost non-repeated family.
    base: Vec<NestedLevel>,
    /// Row-repeated view of `base`, for `RowRepeated` families.
    repeated: Option<Vec<NestedLevel>>,
}

impl NestedFamily {
    /// Validates the description and generates the first level. Seeds are checked to
    /// be `(d; lambda)`-CFFs within the default checker budget.
    pub fn new(spec: NestedFamilySpec) -> Result<Self, NestedError> {
        Self::with_budget(spec, DEFAULT_LEVEL_BUDGET_BITS)
    }

    pub fn with_budget(spec: NestedFamilySpec, budget_bits: usize) -> Result<Self, NestedError> {
        validate_seed(&spec, true)?;
        Self::build(spec, budget_bits)
    }

    /// Like [`NestedFamily::with_budget`] but trusts the caller that the seed
    /// is a `(d; lambda)`-CFF. The (1,1) entry is still checked.
    pub fn trusted(spec: NestedFamilySpec, budget_bits: usize) -> Result<Self, NestedError> {
        validate_seed(&spec, false)?;
        Self::build(spec, budget_bits)
    }

    fn build(spec: NestedFamilySpec, budget_bits: usize) -> Result<Self, NestedError> {
        let first = match base_spec(&spec) {
            NestedFamilySpec::Sperner1 => sperner_first(),
            NestedFamilySpec::KroneckerNested { seed, .. }
            | NestedFamilySpec::Const1Nested { seed, .. } => {
                super::generate::check_bits(seed.rows(), seed.cols(), budget_bits)?;
                NestedLevel::first(1, seed.clone())
            }
            NestedFamilySpec::RowRepeated { .. } => unreachable!("base_spec strips repetition"),
        };
        let mut family = NestedFamily {
            repeated: row_copies(&spec).map(|_| Vec::new()),
            spec,
            budget_bits,
            base: Vec::new(),
        };
        family.push_base(first)?;
        Ok(family)
    }

    fn push_base(&mut self, level: NestedLevel) -> Result<(), NestedError> {
        if let Some(copies) = row_copies(&self.spec) {
            super::generate::check_bits(level.rows() * copies, level.cols(), self.budget_bits)?;
            let rep = repeat_level_rows(&level, copies)?;
            self.repeated.as_mut().expect("repeated view").push(rep);
        }
        self.base.push(level);
        Ok(())
    }

    /// Generates one more level.
    pub fn grow(&mut self) -> Result<&NestedLevel, NestedError> {
        let prev = self.base.last().expect("family has a first level");
        let next = match base_spec(&self.spec) {
            NestedFamilySpec::Sperner1 => sperner_step(prev, self.budget_bits)?,
            NestedFamilySpec::KroneckerNested { seed, .. } => {
                kronecker_step(seed, prev, self.budget_bits)?
            }
            NestedFamilySpec::Const1Nested { policy, .. } => {
                const1_step(policy, prev, self.budget_bits)?
            }
            NestedFamilySpec::RowRepeated { .. } => unreachable!(),
        };
        self.push_base(next)?;
        Ok(self.levels().last().expect("just pushed"))
    }

    /// Grows until `len()` is at least `count`.
    pub fn ensure_levels(&mut self, count: usize) -> Result<(), NestedError> {
        while self.len() < count {
            self.grow()?;
        }
        Ok(())
    }

    /// Grows until some level has at least `n` columns; returns its position.
    pub fn ensure_covering(&mut self, n: usize) -> Result<usize, NestedError> {
        loop {
            if let Some(k) = self.covering(n) {
                return Ok(k);
            }
            let before = self.levels().last().map(NestedLevel::cols);
            self.grow()?;
            if self.levels().last().map(NestedLevel::cols) == before {
                return Err(NestedError::LevelUnavailable(n));
            }
        }
    }

    /// Smallest generated position `k` with `cols(k) >= n`; an empty sequence
    /// is covered by the first level.
    pub fn covering(&self, n: usize) -> Option<usize> {
        self.levels()
            .iter()
            .position(|l| l.cols() >= n)
            .map(|i| i + 1)
    }

    pub fn spec(&self) -> &NestedFamilySpec {
        &self.spec
    }

    pub fn d(&self) -> usize {
        self.spec.d()
    }

    pub fn lambda_at(&self, k: usize) -> u64 {
        self.spec.lambda_at(k)
    }

    pub fn budget_bits(&self) -> usize {
        self.budget_bits
    }

    pub fn levels(&self) -> &[NestedLevel] {
        self.repeated.as_deref().unwrap_or(&self.base)
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Level at 1-based position `k`.
    pub fn level(&self, k: usize) -> Option<&NestedLevel> {
        k.checked_sub(1).and_then(|i| self.levels().get(i))
    }

    pub fn matrix(&self, k: usize) -> Option<&BinaryMatrix> {
        self.level(k).map(|l| &l.matrix)
    }

    /// Provenance of rows `rows(lo)..rows(hi)` of level `hi` relative to
    /// level `lo`, composed from the stored per-level tags.
    pub fn provenance_between(
        &self,
        lo: usize,
        hi: usize,
    ) -> Result<Vec<RowProvenance>, NestedError> {
        let levels = self.levels();
        if lo == 0 || lo > hi || hi > levels.len() {
            return Err(NestedError::InvalidParameter(format!(
                "provenance between positions {lo} and {hi} of {} levels",
                levels.len()
            )));
        }
        let lo_level = &levels[lo - 1];
        let hi_level = &levels[hi - 1];
        (lo_level.rows()..hi_level.rows())
            .map(|row| {
                let tag = compose_tag(levels, lo, hi, row)?;
                Ok(canonical_tag(tag, &lo_level.matrix))
            })
            .collect()
    }
}

fn compose_tag(
    levels: &[NestedLevel],
    lo: usize,
    hi: usize,
    mut row: usize,
) -> Result<RowProvenance, NestedError> {
    let lo_rows = levels[lo - 1].rows();
    let mut k = hi;
    // Invariant: lo_rows <= row < rows(k), hence k > lo.
    loop {
        let level = &levels[k - 1];
        if row < level.prev_rows {
            k -= 1;
            continue;
        }
        match level.provenance[row - level.prev_rows] {
            RowProvenance::Repeat(r) => {
                if r < lo_rows {
                    return Ok(RowProvenance::Repeat(r));
                }
                row = r;
                k -= 1;
            }
            RowProvenance::New => {
                return Err(NestedError::NestingViolation {
                    row,
                    reason: "first-level row reached while composing provenance".into(),
                })
            }
            tag => return Ok(tag),
        }
    }
}

fn base_spec(spec: &NestedFamilySpec) -> &NestedFamilySpec {
    match spec {
        NestedFamilySpec::RowRepeated { base, .. } => base_spec(base),
        other => other,
    }
}

fn row_copies(spec: &NestedFamilySpec) -> Option<usize> {
    match spec {
        NestedFamilySpec::RowRepeated { base, copies } => {
            Some(copies * row_copies(base).unwrap_or(1))
        }
        _ => None,
    }
}

fn validate_seed(spec: &NestedFamilySpec, check_cff: bool) -> Result<(), NestedError> {
    if let NestedFamilySpec::RowRepeated { copies, .. } = spec {
        if *copies == 0 {
            return Err(NestedError::InvalidParameter(
                "row copies must be positive".into(),
            ));
        }
    }
    let (seed, d, lambda) = match base_spec(spec) {
        NestedFamilySpec::Sperner1 => return Ok(()),
        NestedFamilySpec::KroneckerNested { seed, d, lambda } => (seed, *d, *lambda),
        NestedFamilySpec::Const1Nested {
            seed,
            d,
            lambda,
            policy,
        } => {
            check_const1_params(*d, policy)?;
            if let super::IngredientPolicy::KroneckerPowers(b) = policy {
                check_seed(b)?;
                if check_cff && !cff_within_budget(b, *d - 1, 1)? {
                    return Err(NestedError::Ingredient {
                        cols: b.cols(),
                        reason: format!("ingredient seed is not a {}-CFF", d - 1),
                    });
                }
            }
            (seed, *d, *lambda)
        }
        NestedFamilySpec::RowRepeated { .. } => unreachable!(),
    };
    if d == 0 || lambda == 0 {
        return Err(NestedError::InvalidParameter(
            "d and lambda must be positive".into(),
        ));
    }
    check_seed(seed)?;
    if check_cff && !cff_within_budget(seed, d, lambda)? {
        return Err(NestedError::SeedNotCff { d, lambda });
    }
    Ok(())
}

fn cff_within_budget(m: &BinaryMatrix, d: usize, lambda: usize) -> Result<bool, NestedError> {
    Ok(CffChecker::default()
        .find_violation(m, d, lambda)?
        .is_none())
}
