use std::path::PathBuf;

use clap::{Args, Subcommand};

use nested_cff::binmat::{const1, kronecker, sperner_matrix};

use crate::failure::{CmdResult, Failure, ResultExt};
use crate::family::{nested_failure, position_of, FamilyArgs};
use crate::files::{read_matrix, write_text};

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(subcommand)]
    kind: BuildKind,
    /// Output file; stdout when omitted
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum BuildKind {
    /// Smallest 1-CFF with n columns (middle-layer subsets)
    Sperner {
        #[arg(long)]
        n: usize,
    },
    /// Kronecker product LEFT (x) RIGHT
    Kronecker {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Stacked product of A1 and A2 with the (d-1)-CFF B
    Const1 {
        #[arg(long)]
        a1: PathBuf,
        #[arg(long)]
        a2: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// One level of a nested family, with its nesting header
    Nested {
        #[command(flatten)]
        family: FamilyArgs,
        /// Native level index (t for sperner1, from 2; l for products, from 1)
        #[arg(long)]
        level: usize,
    },
}

pub fn run(args: &BuildArgs) -> CmdResult {
    let text = match &args.kind {
        BuildKind::Sperner { n } => {
            if *n == 0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            sperner_matrix(*n).to_text()
        }
        BuildKind::Kronecker { left, right } => {
            kronecker(&read_matrix(left)?.0, &read_matrix(right)?.0)
                .domain()?
                .to_text()
        }
        BuildKind::Const1 { a1, a2, b } => {
            const1(&read_matrix(a1)?.0, &read_matrix(a2)?.0, &read_matrix(b)?.0)
                .domain()?
                .to_text()
        }
        BuildKind::Nested { family, level } => {
            let mut fam = family.build()?;
            let k = position_of(&fam, *level)?;
            fam.ensure_levels(k).map_err(nested_failure)?;
            fam.level(k).expect("level generated").to_text()
        }
    };
    write_text(args.out.as_deref(), &text)
}
