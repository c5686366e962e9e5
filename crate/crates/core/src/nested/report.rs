use super::{NestedError, NestedFamily, NestedFamilySpec};

#[derive(Debug, Clone, PartialEq)]
pub struct CompressionRow {
    /// Native level index.
    pub level: usize,
    pub n: usize,
    pub t: usize,
    pub ratio: f64,
    /// `log2(n)`, reported for the Sperner family.
    pub log2_n: Option<f64>,
    /// `c = log_t n` of the seed, reported for product families.
    pub seed_exponent: Option<f64>,
}

/// Exact `(n, t)` and `n / t` of the first `max_level` levels.
pub fn compression_report(
    spec: &NestedFamilySpec,
    max_level: usize,
) -> Result<Vec<CompressionRow>, NestedError> {
    compression_report_budgeted(spec, max_level, super::DEFAULT_LEVEL_BUDGET_BITS)
}

pub fn compression_report_budgeted(
    spec: &NestedFamilySpec,
    max_level: usize,
    budget_bits: usize,
) -> Result<Vec<CompressionRow>, NestedError> {
    let mut family = NestedFamily::trusted(spec.clone(), budget_bits)?;
    family.ensure_levels(max_level)?;
    let (is_sperner, seed_exponent) = seed_info(spec);
    Ok(family
        .levels()
        .iter()
        .take(max_level)
        .map(|l| {
            let (n, t) = (l.cols(), l.rows());
            CompressionRow {
                level: l.level,
                n,
                t,
                ratio: n as f64 / t as f64,
                log2_n: is_sperner.then(|| (n as f64).log2()),
                seed_exponent,
            }
        })
        .collect())
}

fn seed_info(spec: &NestedFamilySpec) -> (bool, Option<f64>) {
    match spec {
        NestedFamilySpec::Sperner1 => (true, None),
        NestedFamilySpec::KroneckerNested { seed, .. }
        | NestedFamilySpec::Const1Nested { seed, .. } => {
            let c =
                (seed.rows() > 1).then(|| (seed.cols() as f64).ln() / (seed.rows() as f64).ln());
            (false, c)
        }
        NestedFamilySpec::RowRepeated { base, .. } => seed_info(base),
    }
}
