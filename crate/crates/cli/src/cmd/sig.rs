//! keygen, sign, agg and verify.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nested_cff::agg::MockSignature;
use nested_cff::agg::{
    lambda_robust_verify, unbounded_agg, unbounded_verify, AggError, AggregateScheme, Claim,
    MockScheme, SignatureInput, Signed,
};
use nested_cff::nested::NestedFamily;

use crate::failure::{CmdResult, Failure, ResultExt, Verdict};
use crate::family::{cover, FamilyArgs};
use crate::files::{
    aggregate_to_text, claims_to_text, read_signed, read_text, write_text, KeyFile,
};

#[derive(Args, Debug)]
pub struct KeygenArgs {
    /// Seed for the secret key
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use these secret key bytes instead of a seeded key
    #[arg(long, value_name = "HEX")]
    sk: Option<String>,
    /// Key file to write; stdout when omitted
    #[arg(short, long)]
    out: Option<PathBuf>,
}

pub fn keygen(args: &KeygenArgs) -> CmdResult {
    let sk = match &args.sk {
        Some(h) => hex::decode(h).context("--sk").usage()?,
        None => ChaCha8Rng::seed_from_u64(args.seed)
            .gen::<[u8; 32]>()
            .to_vec(),
    };
    let (pk, _) = MockScheme.keygen(&sk);
    let file = KeyFile {
        sk: hex::encode(&sk),
        pk: hex::encode(pk),
    };
    let mut text = serde_json::to_string(&file).expect("plain struct serializes");
    text.push('\n');
    write_text(args.out.as_deref(), &text)
}

#[derive(Args, Debug)]
pub struct SignArgs {
    /// Key file written by keygen
    #[arg(long)]
    key: PathBuf,
    /// Message text
    #[arg(
        long,
        conflicts_with = "msg_file",
        required_unless_present = "msg_file"
    )]
    msg: Option<String>,
    /// Read the message bytes from a file
    #[arg(long)]
    msg_file: Option<PathBuf>,
    /// 1-based position of the claim
    #[arg(long)]
    pos: usize,
    /// Produce an invalid signature (for fault experiments)
    #[arg(long)]
    corrupt: bool,
    /// Claim sequence file to write
    #[arg(long)]
    claims_out: PathBuf,
    /// Aggregate file to write
    #[arg(long)]
    agg_out: PathBuf,
}

fn read_key(path: &Path) -> CmdResult<Vec<u8>> {
    let key: KeyFile = serde_json::from_str(&read_text(path)?)
        .with_context(|| format!("parsing {}", path.display()))
        .usage()?;
    let sk = hex::decode(&key.sk).context("sk").usage()?;
    if hex::decode(&key.pk).context("pk").usage()? != MockScheme::public_key(&sk) {
        return Err(Failure::usage(format!(
            "{}: pk does not match sk",
            path.display()
        )));
    }
    Ok(sk)
}

pub fn sign(args: &SignArgs) -> CmdResult {
    if args.pos == 0 {
        return Err(Failure::usage("--pos is 1-based"));
    }
    let sk = read_key(&args.key)?;
    let msg = match (&args.msg, &args.msg_file) {
        (Some(m), _) => m.as_bytes().to_vec(),
        (None, Some(p)) => std::fs::read(p)
            .with_context(|| format!("reading {}", p.display()))
            .usage()?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let scheme = MockScheme;
    let sig = if args.corrupt {
        let mut other = msg.clone();
        other.push(0xFF);
        scheme.sign(&sk, &other)
    } else {
        scheme.sign(&sk, &msg)
    };
    let claim = Claim::new(MockScheme::public_key(&sk), msg).usage()?;
    let signed = Signed::single(args.pos - 1, claim, sig);
    write_text(Some(&args.claims_out), &claims_to_text(&signed.claims))?;
    write_text(
        Some(&args.agg_out),
        &aggregate_to_text(0, &signed.signature),
    )
}

fn agg_failure(e: AggError) -> Failure {
    match e {
        AggError::Nested(n) => crate::family::nested_failure(n),
        other => Failure::domain(other),
    }
}

/// Checks the level recorded in an aggregate file against the family.
fn check_level(
    family: &NestedFamily,
    signed: &Signed<MockSignature>,
    level: usize,
    path: &Path,
) -> CmdResult {
    if let SignatureInput::Slots(_) = signed.signature {
        let k = family
            .covering(signed.claims.len())
            .expect("family covers the input");
        let native = family.level(k).expect("covered").level;
        if native != level {
            return Err(Failure::domain(format!(
                "{}: aggregate is recorded at level {level}, but {} claims use level {native}",
                path.display(),
                signed.claims.len()
            )));
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct AggArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Claims of the first input
    #[arg(long)]
    claims1: PathBuf,
    /// Aggregate of the first input
    #[arg(long)]
    agg1: PathBuf,
    /// Claims of the second input
    #[arg(long)]
    claims2: PathBuf,
    /// Aggregate of the second input
    #[arg(long)]
    agg2: PathBuf,
    /// Claim sequence file to write
    #[arg(long)]
    claims_out: PathBuf,
    /// Aggregate file to write
    #[arg(long)]
    agg_out: PathBuf,
}

pub fn agg(args: &AggArgs) -> CmdResult {
    let (a, la) = read_signed(&args.claims1, &args.agg1)?;
    let (b, lb) = read_signed(&args.claims2, &args.agg2)?;
    let mut family = args.family.build()?;
    let k = cover(&mut family, a.claims.len().max(b.claims.len()))?;
    check_level(&family, &a, la, &args.agg1)?;
    check_level(&family, &b, lb, &args.agg2)?;
    let out = unbounded_agg(&family, &MockScheme, &a, &b).map_err(agg_failure)?;
    let level = family.level(k).expect("covered").level;
    write_text(Some(&args.claims_out), &claims_to_text(&out.claims))?;
    write_text(
        Some(&args.agg_out),
        &aggregate_to_text(level, &out.signature),
    )
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Claim sequence file
    #[arg(long)]
    claims: PathBuf,
    /// Aggregate file
    #[arg(long)]
    agg: PathBuf,
    /// Slot indices lost in transit (0 is the full aggregate), comma-separated
    #[arg(long, value_delimiter = ',')]
    missing: Vec<usize>,
}

fn positions(set: &BTreeSet<usize>) -> String {
    if set.is_empty() {
        return "{}".into();
    }
    let items: Vec<String> = set.iter().map(|p| (p + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn verify(args: &VerifyArgs) -> CmdResult<Verdict> {
    let (signed, level) = read_signed(&args.claims, &args.agg)?;
    let mut family = args.family.build()?;
    cover(&mut family, signed.claims.len())?;
    check_level(&family, &signed, level, &args.agg)?;
    let outcome = if args.missing.is_empty() {
        unbounded_verify(&family, &MockScheme, &signed)
    } else {
        lambda_robust_verify(
            &family,
            &MockScheme,
            &signed,
            &args.missing.iter().copied().collect(),
        )
    }
    .map_err(agg_failure)?;
    println!("valid: {}", positions(&outcome.valid));
    println!("invalid: {}", positions(&outcome.invalid));
    println!(
        "fast path: {}",
        if outcome.fast_path { "yes" } else { "no" }
    );
    println!("scheme verifications: {}", outcome.scheme_calls);
    if outcome.guarantee_void {
        println!(
            "warning: {} claims rejected, more than d = {}; identification is not guaranteed",
            outcome.invalid.len(),
            family.d()
        );
    }
    Ok(if outcome.all_valid() {
        Verdict::Positive
    } else {
        Verdict::Negative
    })
}
