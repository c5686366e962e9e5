//! Plain-text matrix format.
//!
//! ```text
//! <rows> <cols>
//! <cols characters from {0,1}>   (repeated `rows` times)
//! ```
//!
//! Every line, including the last, ends in a single LF. No other whitespace
//! is allowed. The parser tolerates a missing final LF and nothing else.

use std::fmt;
use std::str::FromStr;

use super::{BinaryMatrix, BinmatError};

impl BinaryMatrix {
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity((self.cols() + 1) * (self.rows() + 1));
        out.push_str(&format!("{} {}\n", self.rows(), self.cols()));
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(if self.get(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format from an iterator of lines (without terminators).
    /// `first_line` is the 1-based line number of the dimension line, used in errors.
    pub(crate) fn parse_lines<'a, I>(mut lines: I, first_line: usize) -> Result<Self, BinmatError>
    where
        I: Iterator<Item = &'a str>,
    {
        let parse_err = |line: usize, reason: String| BinmatError::Parse { line, reason };
        let header = lines
            .next()
            .ok_or_else(|| parse_err(first_line, "missing dimension line".into()))?;
        let mut dims = header.split(' ');
        let (rows, cols) = match (dims.next(), dims.next(), dims.next()) {
            (Some(r), Some(c), None) => {
                let r: usize = r
                    .parse()
                    .map_err(|_| parse_err(first_line, format!("bad row count {r:?}")))?;
                let c: usize = c
                    .parse()
                    .map_err(|_| parse_err(first_line, format!("bad column count {c:?}")))?;
                (r, c)
            }
            _ => {
                return Err(parse_err(
                    first_line,
                    format!("expected \"<rows> <cols>\", got {header:?}"),
                ))
            }
        };
        let mut m = BinaryMatrix::zeros(rows, cols)?;
        for i in 0..rows {
            let lineno = first_line + 1 + i;
            let line = lines.next().ok_or_else(|| {
                parse_err(lineno, format!("expected {rows} matrix rows, found {i}"))
            })?;
            if line.len() != cols {
                return Err(parse_err(
                    lineno,
                    format!("expected {cols} characters, found {}", line.len()),
                ));
            }
            for (j, ch) in line.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    other => {
                        return Err(parse_err(
                            lineno,
                            format!("unexpected character {:?}", other as char),
                        ))
                    }
                }
            }
        }
        if let Some(extra) = lines.next() {
            return Err(parse_err(
                first_line + 1 + rows,
                format!("trailing content {extra:?}"),
            ));
        }
        Ok(m)
    }
}

/// Splits on LF, rejecting CR and dropping one optional final terminator.
pub(crate) fn split_lines(s: &str) -> Result<Vec<&str>, BinmatError> {
    if let Some(pos) = s.find('\r') {
        let line = s[..pos].matches('\n').count() + 1;
        return Err(BinmatError::Parse {
            line,
            reason: "CR line endings are not allowed".into(),
        });
    }
    let body = s.strip_suffix('\n').unwrap_or(s);
    Ok(body.split('\n').collect())
}

impl FromStr for BinaryMatrix {
    type Err = BinmatError;

    fn from_str(s: &str) -> Result<Self, BinmatError> {
        let lines = split_lines(s)?;
        BinaryMatrix::parse_lines(lines.into_iter(), 1)
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
