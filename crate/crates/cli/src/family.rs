use std::path::PathBuf;

use clap::Args;

use nested_cff::binmat::catalog;
use nested_cff::nested::{
    IngredientPolicy, NestedError, NestedFamily, NestedFamilySpec, DEFAULT_LEVEL_BUDGET_BITS,
};

use crate::failure::{CmdResult, Failure};
use crate::files::read_matrix;

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Nested family: sperner1, kron-fig1, const1-fig1, kron:<matrix file>
    /// or const1:<matrix file>
    #[arg(long, default_value = "sperner1")]
    pub family: String,
    /// Fault bound d. Defaults to 1 for sperner1 and 2 for the built-in
    /// 9x12 seed; required for seeds read from a file
    #[arg(long)]
    pub d: Option<usize>,
    /// Private-row count lambda the seed guarantees
    #[arg(long, default_value_t = 1)]
    pub lambda: usize,
    /// Repeat every row this many times, multiplying lambda
    #[arg(long, value_name = "COPIES")]
    pub repeat_rows: Option<usize>,
    /// (d-1)-CFF whose Kronecker powers supply the ingredient of each
    /// const1 level. Without it, optimal 1-CFFs are used (d = 2 only)
    #[arg(long, value_name = "MATRIX")]
    pub ingredient: Option<PathBuf>,
    /// Largest level size in bits
    #[arg(long, default_value_t = DEFAULT_LEVEL_BUDGET_BITS)]
    pub level_budget: usize,
    /// Skip the cover-free check of the seed
    #[arg(long)]
    pub trust_seed: bool,
}

/// Maps construction errors: bad seeds and budgets are domain errors,
/// malformed parameters are usage errors.
pub fn nested_failure(e: NestedError) -> Failure {
    match e {
        NestedError::InvalidParameter(_) | NestedError::Parse { .. } => Failure::usage(e),
        other => Failure::domain(other),
    }
}

impl FamilyArgs {
    pub fn spec(&self) -> CmdResult<NestedFamilySpec> {
        let base = if self.family == "sperner1" {
            if self.d.is_some_and(|d| d != 1) {
                return Err(Failure::usage("sperner1 is a 1-CFF family; --d must be 1"));
            }
            if self.lambda != 1 {
                return Err(Failure::usage(
                    "sperner1 has lambda 1; use --repeat-rows for more",
                ));
            }
            NestedFamilySpec::Sperner1
        } else {
            let (kind, seed, default_d) = match self.family.as_str() {
                "kron-fig1" => ("kron", catalog::two_cff_9x12(), Some(2)),
                "const1-fig1" => ("const1", catalog::two_cff_9x12(), Some(2)),
                other => {
                    let (kind, path) = other
                        .split_once(':')
                        .filter(|(k, _)| *k == "kron" || *k == "const1")
                        .ok_or_else(|| Failure::usage(format!("unknown family {other:?}")))?;
                    (kind, read_matrix(path.as_ref())?.0, None)
                }
            };
            let d = self
                .d
                .or(default_d)
                .ok_or_else(|| Failure::usage("--d is required for a seed read from a file"))?;
            let lambda = self.lambda;
            if kind == "kron" {
                NestedFamilySpec::KroneckerNested { seed, d, lambda }
            } else {
                let policy = match &self.ingredient {
                    Some(p) => IngredientPolicy::KroneckerPowers(read_matrix(p)?.0),
                    None => IngredientPolicy::Sperner,
                };
                NestedFamilySpec::Const1Nested {
                    seed,
                    d,
                    lambda,
                    policy,
                }
            }
        };
        Ok(match self.repeat_rows {
            Some(copies) => NestedFamilySpec::RowRepeated {
                base: Box::new(base),
                copies,
            },
            None => base,
        })
    }

    pub fn build(&self) -> CmdResult<NestedFamily> {
        let spec = self.spec()?;
        let family = if self.trust_seed {
            NestedFamily::trusted(spec, self.level_budget)
        } else {
            NestedFamily::with_budget(spec, self.level_budget)
        };
        family.map_err(nested_failure)
    }
}

/// Position of the level with native index `native`.
pub fn position_of(family: &NestedFamily, native: usize) -> CmdResult<usize> {
    let first = family.spec().first_native_level();
    native
        .checked_sub(first)
        .map(|i| i + 1)
        .ok_or_else(|| Failure::usage(format!("levels of this family start at {first}")))
}

/// Grows `family` to cover `n` claims and returns the covering position.
pub fn cover(family: &mut NestedFamily, n: usize) -> CmdResult<usize> {
    family.ensure_covering(n).map_err(nested_failure)
}
