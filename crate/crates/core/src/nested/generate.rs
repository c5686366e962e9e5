//! Level-by-level generators. Each step emits provenance tags from the
//! construction itself; `verify_nesting` is the independent cross-check.

use crate::binmat::{const1, kronecker, sperner_matrix, BinaryMatrix};
use crate::combinatorics::KSubsets;

use super::{canonical_tag, IngredientPolicy, NestedError, NestedLevel, RowProvenance};

pub(crate) fn check_bits(rows: usize, cols: usize, budget: usize) -> Result<(), NestedError> {
    let bits = rows as u128 * cols as u128;
    if bits > budget as u128 {
        return Err(NestedError::BudgetExceeded { bits, budget });
    }
    Ok(())
}

pub(crate) fn check_seed(seed: &BinaryMatrix) -> Result<(), NestedError> {
    if !seed.get(0, 0) {
        return Err(NestedError::SeedCorner);
    }
    Ok(())
}

pub(crate) fn sperner_first() -> NestedLevel {
    NestedLevel::first(2, BinaryMatrix::identity(2).expect("2x2"))
}

/// Sperner level `t = prev.rows() + 1`.
///
/// Odd `t` keeps the old blocks and appends `S + {t}` for every
/// `(floor(t/2) - 1)`-subset `S` of the old ground set; even `t` adjoins `t`
/// to every old block and appends the `t/2`-subsets of the old ground set.
pub(crate) fn sperner_step(prev: &NestedLevel, budget: usize) -> Result<NestedLevel, NestedError> {
    let old_t = prev.rows();
    let t = old_t + 1;
    let new_elem = old_t;
    let mut blocks = prev.matrix.blocks();
    let tag = if t % 2 == 1 {
        blocks.extend(KSubsets::new(old_t, t / 2 - 1).map(|mut s| {
            s.push(new_elem);
            s
        }));
        RowProvenance::Zero
    } else {
        for b in &mut blocks {
            b.push(new_elem);
        }
        blocks.extend(KSubsets::new(old_t, t / 2));
        RowProvenance::One
    };
    check_bits(t, blocks.len(), budget)?;
    let matrix = BinaryMatrix::from_blocks(t, &blocks)?;
    Ok(NestedLevel {
        level: t,
        matrix,
        prev_rows: prev.rows(),
        prev_cols: prev.cols(),
        provenance: vec![tag],
    })
}

pub(crate) fn kronecker_step(
    seed: &BinaryMatrix,
    prev: &NestedLevel,
    budget: usize,
) -> Result<NestedLevel, NestedError> {
    let rows = seed.rows().checked_mul(prev.rows());
    let cols = seed.cols().checked_mul(prev.cols());
    let (Some(rows), Some(cols)) = (rows, cols) else {
        return Err(NestedError::BudgetExceeded {
            bits: u128::MAX,
            budget,
        });
    };
    check_bits(rows, cols, budget)?;
    let matrix = kronecker(seed, &prev.matrix)?;
    let t = prev.rows();
    // Block-row `a` of the left block column is `seed[a][0] * M(l-1)`.
    let provenance = (t..rows)
        .map(|i| {
            let tag = if seed.get(i / t, 0) {
                RowProvenance::Repeat(i % t)
            } else {
                RowProvenance::Zero
            };
            canonical_tag(tag, &prev.matrix)
        })
        .collect();
    Ok(NestedLevel {
        level: prev.level + 1,
        matrix,
        prev_rows: t,
        prev_cols: prev.cols(),
        provenance,
    })
}

pub(crate) fn ingredient(
    policy: &IngredientPolicy,
    cols: usize,
    budget: usize,
) -> Result<BinaryMatrix, NestedError> {
    let b = match policy {
        IngredientPolicy::Sperner => sperner_matrix(cols),
        IngredientPolicy::KroneckerPowers(seed) => {
            if seed.cols() < 2 {
                return Err(NestedError::Ingredient {
                    cols,
                    reason: "Kronecker powers of a single-column seed never grow".into(),
                });
            }
            let mut power = seed.clone();
            while power.cols() < cols {
                check_bits(
                    power.rows() * seed.rows(),
                    power.cols() * seed.cols(),
                    budget,
                )?;
                power = kronecker(seed, &power)?;
            }
            power.first_cols(cols)?
        }
        IngredientPolicy::Custom(f) => f(cols),
    };
    if b.cols() != cols {
        return Err(NestedError::Ingredient {
            cols,
            reason: format!("policy returned {} columns", b.cols()),
        });
    }
    if !b.get(0, 0) {
        return Err(NestedError::Ingredient {
            cols,
            reason: "entry (1,1) must be 1".into(),
        });
    }
    Ok(b)
}

pub(crate) fn const1_step(
    policy: &IngredientPolicy,
    prev: &NestedLevel,
    budget: usize,
) -> Result<NestedLevel, NestedError> {
    let b = ingredient(policy, prev.cols(), budget)?;
    let t = prev.rows();
    let top = b.rows() * t;
    let rows = top + t;
    let cols = prev
        .cols()
        .checked_mul(prev.cols())
        .ok_or(NestedError::BudgetExceeded {
            bits: u128::MAX,
            budget,
        })?;
    check_bits(rows, cols, budget)?;
    let matrix = const1(&prev.matrix, &prev.matrix, &b)?;
    let provenance = (t..rows)
        .map(|i| {
            let tag = if i < top {
                if b.get(i / t, 0) {
                    RowProvenance::Repeat(i % t)
                } else {
                    RowProvenance::Zero
                }
            } else if prev.matrix.get(i - top, 0) {
                // The first block gets column 1 of M(l-1) appended to every column.
                RowProvenance::One
            } else {
                RowProvenance::Zero
            };
            canonical_tag(tag, &prev.matrix)
        })
        .collect();
    Ok(NestedLevel {
        level: prev.level + 1,
        matrix,
        prev_rows: t,
        prev_cols: prev.cols(),
        provenance,
    })
}

/// Level `t` of the Sperner family: a 1-CFF(t, C(t, floor(t/2))).
pub fn sperner_nested_level(t: usize) -> Result<NestedLevel, NestedError> {
    if t < 2 {
        return Err(NestedError::InvalidParameter(format!(
            "Sperner levels start at t = 2, got {t}"
        )));
    }
    let mut level = sperner_first();
    while level.rows() < t {
        level = sperner_step(&level, usize::MAX)?;
    }
    Ok(level)
}

/// Level `l` of the Kronecker family generated by `seed`.
pub fn kronecker_nested_level(seed: &BinaryMatrix, l: usize) -> Result<NestedLevel, NestedError> {
    kronecker_nested_level_budgeted(seed, l, super::DEFAULT_LEVEL_BUDGET_BITS)
}

pub(crate) fn kronecker_nested_level_budgeted(
    seed: &BinaryMatrix,
    l: usize,
    budget: usize,
) -> Result<NestedLevel, NestedError> {
    if l == 0 {
        return Err(NestedError::InvalidParameter("levels start at 1".into()));
    }
    check_seed(seed)?;
    let mut level = NestedLevel::first(1, seed.clone());
    while level.level < l {
        level = kronecker_step(seed, &level, budget)?;
    }
    Ok(level)
}

/// Level `l` of the stacked family `M(l) = Const1(M(l-1), M(l-1), B_{l-1})`.
///
/// The seed is taken to be a `d`-CFF; `d` selects the ingredient rules.
pub fn const1_nested_level(
    seed: &BinaryMatrix,
    d: usize,
    l: usize,
    policy: &IngredientPolicy,
) -> Result<NestedLevel, NestedError> {
    const1_nested_level_budgeted(seed, d, l, policy, super::DEFAULT_LEVEL_BUDGET_BITS)
}

pub(crate) fn const1_nested_level_budgeted(
    seed: &BinaryMatrix,
    d: usize,
    l: usize,
    policy: &IngredientPolicy,
    budget: usize,
) -> Result<NestedLevel, NestedError> {
    if l == 0 {
        return Err(NestedError::InvalidParameter("levels start at 1".into()));
    }
    check_const1_params(d, policy)?;
    check_seed(seed)?;
    let mut level = NestedLevel::first(1, seed.clone());
    while level.level < l {
        level = const1_step(policy, &level, budget)?;
    }
    Ok(level)
}

pub(crate) fn check_const1_params(d: usize, policy: &IngredientPolicy) -> Result<(), NestedError> {
    if d < 2 {
        return Err(NestedError::InvalidParameter(format!(
            "the stacked family needs d >= 2, got {d}"
        )));
    }
    if d >= 3 && matches!(policy, IngredientPolicy::Sperner) {
        return Err(NestedError::InvalidParameter(format!(
            "d = {d} needs an explicit (d-1)-CFF ingredient seed; Sperner ingredients are only 1-CFFs"
        )));
    }
    Ok(())
}

/// Repeats every row of a level `copies` times, mapping provenance to match.
pub(crate) fn repeat_level_rows(
    level: &NestedLevel,
    copies: usize,
) -> Result<NestedLevel, NestedError> {
    let matrix = level.matrix.repeat_rows(copies)?;
    let provenance = level
        .provenance
        .iter()
        .flat_map(|&tag| {
            let mapped = match tag {
                RowProvenance::Repeat(r) => RowProvenance::Repeat(r * copies),
                other => other,
            };
            std::iter::repeat_n(mapped, copies)
        })
        .collect();
    Ok(NestedLevel {
        level: level.level,
        matrix,
        prev_rows: level.prev_rows * copies,
        prev_cols: level.prev_cols,
        provenance,
    })
}
