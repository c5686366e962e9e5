//! Size and operation-count estimates for fault-tolerant aggregates.

use crate::binmat::{min_t_sperner, BinaryMatrix};
use crate::nested::{NestedError, NestedFamily, NestedFamilySpec};

/// Which matrices back the estimate.
#[derive(Debug, Clone)]
pub enum FamilyChoice {
    /// Smallest 1-CFF for exactly `n` columns (`d = 1` only).
    OptimalSperner,
    /// Rows of the smallest generated level covering `n`.
    Nested(NestedFamilySpec),
}

/// Constants of the asymptotic row bound for the stacked family, derived
/// from the seed's column count `n0`: `b = 2 d^2 ln n0 / log2 n0` and
/// `D = 1 - log2 log2 n0`. Informational only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    pub b: f64,
    pub big_d: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostProfile {
    pub n: u64,
    pub d: usize,
    pub sig_bytes: u64,
    pub t: u64,
    /// `(t + 1) * sig_bytes`; slot 0 is included.
    pub total_bytes: u64,
    pub agg_factor: u64,
    pub verify_factor_worst: u64,
    /// Size of `n` separate signatures.
    pub no_agg_bytes: u64,
    /// Native index of the covering level, when a nested family was used.
    pub level: Option<usize>,
    pub constants: Option<AsymptoticConstants>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CostError {
    #[error("n and d must be at least 1")]
    InvalidParameter,
    #[error("the optimal 1-CFF row count only applies to d = 1, not d = {0}")]
    SpernerNeedsD1(usize),
    #[error("family has d = {family}, but d = {requested} was requested")]
    FamilyMismatch { family: usize, requested: usize },
    #[error("n = {0} does not fit in memory-addressable columns")]
    TooLarge(u64),
    #[error(transparent)]
    Nested(#[from] NestedError),
}

pub fn estimate(
    n: u64,
    d: usize,
    sig_bytes: u64,
    choice: &FamilyChoice,
) -> Result<CostProfile, CostError> {
    if n == 0 || d == 0 {
        return Err(CostError::InvalidParameter);
    }
    let (t, level, constants) = match choice {
        FamilyChoice::OptimalSperner => {
            if d != 1 {
                return Err(CostError::SpernerNeedsD1(d));
            }
            (min_t_sperner(n) as u64, None, None)
        }
        FamilyChoice::Nested(spec) => {
            if spec.d() != d {
                return Err(CostError::FamilyMismatch {
                    family: spec.d(),
                    requested: d,
                });
            }
            let cols = usize::try_from(n).map_err(|_| CostError::TooLarge(n))?;
            let mut family = NestedFamily::new(spec.clone())?;
            let k = family.ensure_covering(cols)?;
            let lvl = family.level(k).expect("covering level exists");
            (
                lvl.rows() as u64,
                Some(lvl.level),
                asymptotic_constants(spec),
            )
        }
    };
    Ok(CostProfile {
        n,
        d,
        sig_bytes,
        t,
        total_bytes: (t + 1).saturating_mul(sig_bytes),
        agg_factor: t + 1,
        verify_factor_worst: t + 1,
        no_agg_bytes: n.saturating_mul(sig_bytes),
        level,
        constants,
    })
}

fn asymptotic_constants(spec: &NestedFamilySpec) -> Option<AsymptoticConstants> {
    match spec {
        NestedFamilySpec::Const1Nested { seed, d, .. } if seed.cols() > 2 => {
            let n0 = seed.cols() as f64;
            let d = *d as f64;
            Some(AsymptoticConstants {
                b: 2.0 * d * d * n0.ln() / n0.log2(),
                big_d: 1.0 - n0.log2().log2(),
            })
        }
        NestedFamilySpec::RowRepeated { base, .. } => asymptotic_constants(base),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicationCount {
    pub row_weights: Vec<usize>,
    pub average_weight: f64,
    /// `n - t + sum(w_i)`: aggregating every row plus the rest of slot 0.
    pub total: i64,
}

/// Multiplications needed to build all slots over the first `n` columns of
/// `matrix`.
pub fn verify_multiplications(matrix: &BinaryMatrix, n: usize) -> MultiplicationCount {
    let n = n.min(matrix.cols());
    let row_weights: Vec<usize> = (0..matrix.rows())
        .map(|i| matrix.row_weight_prefix(i, n))
        .collect();
    let sum: usize = row_weights.iter().sum();
    let t = matrix.rows();
    MultiplicationCount {
        average_weight: sum as f64 / t as f64,
        total: n as i64 - t as i64 + sum as i64,
        row_weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binmat::{catalog, sperner_matrix};

    #[test]
    fn single_claim() {
        let p = estimate(1, 1, 48, &FamilyChoice::OptimalSperner).unwrap();
        assert_eq!((p.t, p.total_bytes, p.no_agg_bytes), (1, 96, 48));
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(
            estimate(0, 1, 48, &FamilyChoice::OptimalSperner),
            Err(CostError::InvalidParameter)
        );
        assert_eq!(
            estimate(5, 2, 48, &FamilyChoice::OptimalSperner),
            Err(CostError::SpernerNeedsD1(2))
        );
        let spec = NestedFamilySpec::Sperner1;
        assert_eq!(
            estimate(5, 2, 48, &FamilyChoice::Nested(spec)),
            Err(CostError::FamilyMismatch {
                family: 1,
                requested: 2
            })
        );
    }

    #[test]
    fn nested_choices() {
        let seed = catalog::two_cff_9x12();
        let kron = FamilyChoice::Nested(NestedFamilySpec::KroneckerNested {
            seed: seed.clone(),
            d: 2,
            lambda: 1,
        });
        let p = estimate(100, 2, 48, &kron).unwrap();
        assert_eq!((p.t, p.level, p.total_bytes), (81, Some(2), 82 * 48));
        assert_eq!(estimate(12, 2, 48, &kron).unwrap().t, 9);
        let c1 = FamilyChoice::Nested(NestedFamilySpec::Const1Nested {
            seed,
            d: 2,
            lambda: 1,
            policy: crate::nested::IngredientPolicy::Sperner,
        });
        let p = estimate(100, 2, 48, &c1).unwrap();
        assert_eq!(p.t, 63);
        let k = p.constants.unwrap();
        assert!((k.big_d - (1.0 - 12f64.log2().log2())).abs() < 1e-12);
        // Sperner1 nested levels match the optimal count at full levels.
        let s = estimate(10, 1, 48, &FamilyChoice::Nested(NestedFamilySpec::Sperner1)).unwrap();
        assert_eq!((s.t, s.level), (5, Some(5)));
    }

    #[test]
    fn multiplications() {
        let m = sperner_matrix(10);
        let c = verify_multiplications(&m, 10);
        assert_eq!(c.row_weights, vec![4; 5]);
        assert_eq!(c.average_weight, 4.0);
        assert_eq!(c.total, 10 - 5 + 20);
        assert_eq!(
            verify_multiplications(&sperner_matrix(2), 2).row_weights,
            vec![1, 1]
        );
    }
}
