use std::path::PathBuf;

use clap::Args;

use nested_cff::binmat::{BinmatError, CffChecker, DEFAULT_CHECK_BUDGET};
use nested_cff::nested::{verify_nesting, NestedError, RowProvenance};

use crate::failure::{CmdResult, Failure, Verdict};
use crate::files::read_matrix;

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Matrix or nested level file
    matrix: PathBuf,
    /// Check the d-cover-free property
    #[arg(long)]
    d: Option<usize>,
    /// Required private rows per column (with --d)
    #[arg(long, default_value_t = 1)]
    lambda: usize,
    /// Check that MATRIX extends this previous level
    #[arg(long, value_name = "PREV")]
    nested_prev: Option<PathBuf>,
    /// Row-scan budget of the cover-free check
    #[arg(long, default_value_t = DEFAULT_CHECK_BUDGET, conflicts_with = "no_budget")]
    work_budget: u64,
    /// Run the cover-free check without a budget
    #[arg(long)]
    no_budget: bool,
}

fn list(cols: &[usize]) -> String {
    cols.iter()
        .map(|c| (c + 1).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn run(args: &CheckArgs) -> CmdResult<Verdict> {
    if args.d.is_none() && args.nested_prev.is_none() {
        return Err(Failure::usage(
            "nothing to check: give --d and/or --nested-prev",
        ));
    }
    let (m, _) = read_matrix(&args.matrix)?;
    let mut verdict = Verdict::Positive;

    if let Some(d) = args.d {
        let checker = if args.no_budget {
            CffChecker::unbounded()
        } else {
            CffChecker::with_budget(args.work_budget)
        };
        let what = if args.lambda == 1 {
            format!("{d}-CFF")
        } else {
            format!("({d};{})-CFF", args.lambda)
        };
        match checker.find_violation(&m, d, args.lambda) {
            Ok(None) => println!("PASS: {}x{} matrix is a {what}", m.rows(), m.cols()),
            Ok(Some(v)) => {
                verdict = Verdict::Negative;
                println!("FAIL: {}x{} matrix is not a {what}", m.rows(), m.cols());
                println!(
                    "witness: column {} has {} private rows against columns {}",
                    v.column + 1,
                    v.private_rows,
                    list(&v.others)
                );
            }
            Err(e @ BinmatError::BudgetExceeded { .. }) => {
                return Err(Failure::domain(format!(
                    "{e}; raise --work-budget or pass --no-budget"
                )))
            }
            Err(e) => return Err(Failure::usage(e)),
        }
    }

    if let Some(prev_path) = &args.nested_prev {
        let (prev, _) = read_matrix(prev_path)?;
        match verify_nesting(&prev, &m) {
            Ok(tags) => {
                println!(
                    "PASS: {}x{} extends {}x{}",
                    m.rows(),
                    m.cols(),
                    prev.rows(),
                    prev.cols()
                );
                for (i, tag) in tags.iter().enumerate() {
                    let desc = match tag {
                        RowProvenance::Zero => "zeros".to_string(),
                        RowProvenance::One => "ones".to_string(),
                        RowProvenance::Repeat(r) => format!("row {}", r + 1),
                        RowProvenance::New => "new".to_string(),
                    };
                    println!("row {}: {tag} ({desc})", prev.rows() + i + 1);
                }
            }
            Err(NestedError::NestingViolation { row, reason }) => {
                verdict = Verdict::Negative;
                println!("FAIL: not a nested extension");
                println!("witness: row {}: {reason}", row + 1);
            }
            Err(e) => return Err(Failure::domain(e)),
        }
    }
    Ok(verdict)
}
