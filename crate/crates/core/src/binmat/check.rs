//! Exhaustive `d`-CFF and `(d; lambda)`-CFF checking.
//!
//! A matrix is a `(d; lambda)`-CFF when, for every column `c0` and every set
//! `D` of `d` other columns, at least `lambda` rows have a one in `c0` and
//! zeros in all of `D`. The checker enumerates every `(d+1)`-subset of
//! columns and, for each member, counts its private rows against the other
//! `d` members, which is the permutation-submatrix form of the same property.
//!
//! When `d + 1 > cols` the check runs with `d = cols - 1`: every column must
//! keep `lambda` rows outside the union of all other columns.

use crate::combinatorics::{binomial, KSubsets};

use super::{BinaryMatrix, BinmatError};

/// Default work budget in row-scans, `C(n, d+1) * (d+1) * t`.
pub const DEFAULT_CHECK_BUDGET: u64 = 1_000_000_000;

/// A column that is (lambda-)covered by the union of `others`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CffViolation {
    pub column: usize,
    pub others: Vec<usize>,
    /// Rows private to `column` against `others`; below the required lambda.
    pub private_rows: usize,
}

impl CffViolation {
    /// The full violating column subset, sorted.
    pub fn subset(&self) -> Vec<usize> {
        let mut all = self.others.clone();
        all.push(self.column);
        all.sort_unstable();
        all
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CffChecker {
    budget: Option<u64>,
}

impl Default for CffChecker {
    fn default() -> Self {
        CffChecker {
            budget: Some(DEFAULT_CHECK_BUDGET),
        }
    }
}

impl CffChecker {
    pub fn with_budget(budget: u64) -> Self {
        CffChecker {
            budget: Some(budget),
        }
    }

    pub fn unbounded() -> Self {
        CffChecker { budget: None }
    }

    /// Row-scans needed for an exhaustive check, or `None` on overflow.
    pub fn work(m: &BinaryMatrix, d: usize) -> Option<u128> {
        let k = effective_subset_size(m, d);
        binomial(m.cols() as u64, k as u64)?
            .checked_mul(k as u128)?
            .checked_mul(m.rows() as u128)
    }

    /// First violation in lexicographic subset order, or `None` if `m` is a
    /// `(d; lambda)`-CFF.
    pub fn find_violation(
        &self,
        m: &BinaryMatrix,
        d: usize,
        lambda: usize,
    ) -> Result<Option<CffViolation>, BinmatError> {
        if let Some(budget) = self.budget {
            let required = Self::work(m, d);
            if required.is_none_or(|w| w > budget as u128) {
                return Err(BinmatError::BudgetExceeded {
                    required: required
                        .map(|w| w.to_string())
                        .unwrap_or_else(|| "overflow".into()),
                    budget: budget.to_string(),
                });
            }
        }
        Ok(scan(m, effective_subset_size(m, d), lambda))
    }
}

fn effective_subset_size(m: &BinaryMatrix, d: usize) -> usize {
    (d + 1).min(m.cols())
}

fn scan(m: &BinaryMatrix, k: usize, lambda: usize) -> Option<CffViolation> {
    let cols = m.column_bitsets();
    let words = cols.first().map_or(0, Vec::len);
    let mut union = vec![0u64; words];
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        for (pos, &c0) in subset.iter().enumerate() {
            union.iter_mut().for_each(|w| *w = 0);
            for (q, &c) in subset.iter().enumerate() {
                if q != pos {
                    for (u, w) in union.iter_mut().zip(&cols[c]) {
                        *u |= w;
                    }
                }
            }
            let private: usize = cols[c0]
                .iter()
                .zip(&union)
                .map(|(a, u)| (a & !u).count_ones() as usize)
                .sum();
            if private < lambda {
                let others = subset.iter().copied().filter(|&c| c != c0).collect();
                return Some(CffViolation {
                    column: c0,
                    others,
                    private_rows: private,
                });
            }
        }
        if !KSubsets::advance(&mut subset, m.cols()) {
            return None;
        }
    }
}

/// Whether `m` is a `d`-CFF. Exhaustive and unbudgeted.
pub fn is_d_cff(m: &BinaryMatrix, d: usize) -> bool {
    is_d_lambda_cff(m, d, 1)
}

/// Whether `m` is a `(d; lambda)`-CFF. Exhaustive and unbudgeted.
pub fn is_d_lambda_cff(m: &BinaryMatrix, d: usize, lambda: usize) -> bool {
    scan(m, effective_subset_size(m, d), lambda).is_none()
}
