//! Readers and writers for the on-disk formats.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde::{Deserialize, Serialize};

use nested_cff::agg::{
    AggregateSignature, Claim, ClaimSequence, MockSignature, SignatureInput, Signed,
};
use nested_cff::binmat::BinaryMatrix;
use nested_cff::nested::{parse_level, parse_matrix_or_level, NestedLevel};

use crate::failure::{CmdResult, ResultExt};

pub const SCHEME_NAME: &str = "mock-v1";

pub fn read_text(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .usage()
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_text(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .usage(),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads a plain matrix or a nested level file.
pub fn read_matrix(path: &Path) -> CmdResult<(BinaryMatrix, Option<NestedLevel>)> {
    let text = read_text(path)?;
    let ctx = || format!("parsing {}", path.display());
    if text.starts_with('#') {
        let level = parse_level(&text).with_context(ctx).usage()?;
        Ok((level.matrix.clone(), Some(level)))
    } else {
        Ok((
            parse_matrix_or_level(&text).with_context(ctx).usage()?,
            None,
        ))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClaimLine {
    pos: usize,
    pk: String,
    msg: String,
}

/// JSON lines with 1-based, strictly increasing positions. The sequence is
/// as long as the largest position.
pub fn parse_claims(text: &str) -> anyhow::Result<ClaimSequence> {
    let mut seq = ClaimSequence::new();
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let ln = i + 1;
        let entry: ClaimLine = serde_json::from_str(line).with_context(|| format!("line {ln}"))?;
        if entry.pos <= last {
            bail!("line {ln}: position {} is not above {}", entry.pos, last);
        }
        last = entry.pos;
        let pk = hex::decode(&entry.pk).with_context(|| format!("line {ln}: pk"))?;
        let msg = BASE64
            .decode(&entry.msg)
            .with_context(|| format!("line {ln}: msg"))?;
        let claim = Claim::new(pk, msg).map_err(|e| anyhow!("line {ln}: {e}"))?;
        seq.set(entry.pos - 1, Some(claim));
    }
    Ok(seq)
}

pub fn claims_to_text(seq: &ClaimSequence) -> String {
    let mut out = String::new();
    for (pos, claim) in seq.claims() {
        let line = ClaimLine {
            pos: pos + 1,
            pk: hex::encode(claim.pk()),
            msg: BASE64.encode(claim.msg()),
        };
        out.push_str(&serde_json::to_string(&line).expect("plain struct serializes"));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AggregateFile {
    scheme: String,
    level: usize,
    slots: Vec<String>,
}

/// An aggregate file. `level` 0 with one slot stands for a plain signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoredAggregate {
    pub level: usize,
    pub signature: SignatureInput<MockSignature>,
}

pub fn parse_aggregate(text: &str) -> anyhow::Result<StoredAggregate> {
    let file: AggregateFile = serde_json::from_str(text)?;
    if file.scheme != SCHEME_NAME {
        bail!(
            "unsupported scheme {:?}, expected {SCHEME_NAME:?}",
            file.scheme
        );
    }
    let slots = file
        .slots
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let bytes = hex::decode(s).with_context(|| format!("slot {i}"))?;
            MockSignature::from_bytes(&bytes)
                .ok_or_else(|| anyhow!("slot {i}: not a reduced signature value"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let signature = match (file.level, slots.len()) {
        (0, 1) => SignatureInput::Single(slots[0]),
        (0, n) => bail!("level 0 holds one signature, found {n} slots"),
        (_, n) if n < 2 => bail!("an aggregate needs at least two slots, found {n}"),
        _ => SignatureInput::Slots(AggregateSignature::new(slots)),
    };
    Ok(StoredAggregate {
        level: file.level,
        signature,
    })
}

pub fn aggregate_to_text(level: usize, sig: &SignatureInput<MockSignature>) -> String {
    let slots: Vec<String> = match sig {
        SignatureInput::Single(s) => vec![hex::encode(s.to_bytes())],
        SignatureInput::Slots(tau) => tau
            .slots
            .iter()
            .map(|s| hex::encode(s.to_bytes()))
            .collect(),
    };
    let level = if matches!(sig, SignatureInput::Single(_)) {
        0
    } else {
        level
    };
    let file = AggregateFile {
        scheme: SCHEME_NAME.into(),
        level,
        slots,
    };
    let mut out = serde_json::to_string(&file).expect("plain struct serializes");
    out.push('\n');
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyFile {
    pub sk: String,
    pub pk: String,
}

/// Loads a claims file and its aggregate file.
pub fn read_signed(claims: &Path, aggregate: &Path) -> CmdResult<(Signed<MockSignature>, usize)> {
    let seq = parse_claims(&read_text(claims)?)
        .with_context(|| format!("parsing {}", claims.display()))
        .usage()?;
    let stored = parse_aggregate(&read_text(aggregate)?)
        .with_context(|| format!("parsing {}", aggregate.display()))
        .usage()?;
    Ok((
        Signed {
            claims: seq,
            signature: stored.signature,
        },
        stored.level,
    ))
}
