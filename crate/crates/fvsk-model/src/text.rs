//! Line tokenizer shared by the file-format parsers.

use crate::error::{ModelError, Result};

/// Hard ceiling on any count read from a header, so a corrupted header
/// cannot trigger a huge allocation.
pub const MAX_COUNT: usize = 1 << 24;

pub(crate) struct Line<'a> {
    pub no: usize,
    pub toks: Vec<&'a str>,
}

impl<'a> Line<'a> {
    pub fn int(&self, idx: usize) -> Result<usize> {
        let tok = self.toks.get(idx).ok_or_else(|| ModelError::parse(self.no, format!("missing field {}", idx + 1)))?;
        parse_uint(tok).ok_or_else(|| ModelError::parse(self.no, format!("bad integer '{tok}'")))
    }

    pub fn expect_len(&self, n: usize) -> Result<()> {
        if self.toks.len() != n {
            return Err(ModelError::parse(self.no, format!("expected {n} fields, found {}", self.toks.len())));
        }
        Ok(())
    }

    pub fn err(&self, msg: impl Into<String>) -> ModelError {
        ModelError::parse(self.no, msg)
    }
}

/// Decimal digits only; rejects signs, blanks and values above `MAX_COUNT`.
pub(crate) fn parse_uint(tok: &str) -> Option<usize> {
    if tok.is_empty() || tok.len() > 9 || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: usize = tok.parse().ok()?;
    (v <= MAX_COUNT).then_some(v)
}

/// Non-blank lines with comment lines (`c ...`) removed.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.split('\n').enumerate().filter_map(|(i, raw)| {
        let toks: Vec<&str> = raw.split_ascii_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            None
        } else {
            Some(Line { no: i + 1, toks })
        }
    })
}
