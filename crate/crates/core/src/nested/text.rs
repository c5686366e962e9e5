//! Level files: two `#` header lines followed by the matrix text format.
//!
//! ```text
//! # nested level=<k> prev_rows=<r> prev_cols=<c>
//! # prov=<tag>,<tag>,..
//! <matrix>
//! ```
//!
//! Tags are `Z`, `O`, `R<r>` (1-based row) and `N`.

use crate::binmat::{split_lines, BinaryMatrix, BinmatError};

use super::{NestedError, NestedLevel, RowProvenance};

impl NestedLevel {
    pub fn to_text(&self) -> String {
        let tags: Vec<String> = self.provenance.iter().map(ToString::to_string).collect();
        format!(
            "# nested level={} prev_rows={} prev_cols={}\n# prov={}\n{}",
            self.level,
            self.prev_rows,
            self.prev_cols,
            tags.join(","),
            self.matrix.to_text()
        )
    }
}

fn parse_tag(tag: &str) -> Option<RowProvenance> {
    match tag {
        "Z" => Some(RowProvenance::Zero),
        "O" => Some(RowProvenance::One),
        "N" => Some(RowProvenance::New),
        _ => {
            let r: usize = tag.strip_prefix('R')?.parse().ok()?;
            r.checked_sub(1).map(RowProvenance::Repeat)
        }
    }
}

fn field(part: Option<&str>, key: &str, line: usize) -> Result<usize, NestedError> {
    part.and_then(|p| p.strip_prefix(key))
        .and_then(|v| v.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| NestedError::Parse {
            line,
            reason: format!("expected {key}=<int>"),
        })
}

/// Parses a level file. Tags are checked for count and range but not
/// against the matrix content; use `verify_nesting` for that.
pub fn parse_level(text: &str) -> Result<NestedLevel, NestedError> {
    let lines = split_lines(text)?;
    let header = lines.first().copied().unwrap_or_default();
    let mut parts = header
        .strip_prefix("# nested ")
        .ok_or_else(|| NestedError::Parse {
            line: 1,
            reason: "expected \"# nested\" header".into(),
        })?
        .split(' ');
    let level = field(parts.next(), "level", 1)?;
    let prev_rows = field(parts.next(), "prev_rows", 1)?;
    let prev_cols = field(parts.next(), "prev_cols", 1)?;
    if parts.next().is_some() {
        return Err(NestedError::Parse {
            line: 1,
            reason: "trailing header fields".into(),
        });
    }
    let prov_line = lines
        .get(1)
        .and_then(|l| l.strip_prefix("# prov="))
        .ok_or_else(|| NestedError::Parse {
            line: 2,
            reason: "expected \"# prov=\" line".into(),
        })?;
    let provenance = if prov_line.is_empty() {
        Vec::new()
    } else {
        prov_line
            .split(',')
            .map(|t| {
                parse_tag(t).ok_or_else(|| NestedError::Parse {
                    line: 2,
                    reason: format!("bad tag {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let matrix = BinaryMatrix::parse_lines(lines.into_iter().skip(2), 3)?;
    if prev_rows > matrix.rows() || prev_cols > matrix.cols() {
        return Err(NestedError::Parse {
            line: 1,
            reason: "previous level larger than matrix".into(),
        });
    }
    if provenance.len() != matrix.rows() - prev_rows {
        return Err(NestedError::Parse {
            line: 2,
            reason: format!(
                "{} tags for {} new rows",
                provenance.len(),
                matrix.rows() - prev_rows
            ),
        });
    }
    if provenance
        .iter()
        .any(|t| matches!(t, RowProvenance::Repeat(r) if *r >= prev_rows))
    {
        return Err(NestedError::Parse {
            line: 2,
            reason: "repeat tag beyond previous rows".into(),
        });
    }
    Ok(NestedLevel {
        level,
        matrix,
        prev_rows,
        prev_cols,
        provenance,
    })
}

/// Reads either a plain matrix file or a level file and returns its matrix.
pub fn parse_matrix_or_level(text: &str) -> Result<BinaryMatrix, NestedError> {
    if text.starts_with('#') {
        Ok(parse_level(text)?.matrix)
    } else {
        text.parse::<BinaryMatrix>()
            .map_err(|e: BinmatError| e.into())
    }
}
