//! `index value` sequence files.

use std::fmt;

use super::{CliError, Context, SequenceKind};
use crate::closedform::{k1_count_formula, row_sum};
use crate::{BigNat, Error};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfileEntry {
    pub index: usize,
    pub value: BigNat,
}

/// Parses `a..b` (or `a..=b`) as an inclusive range.
pub(crate) fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("range `{text}` is not of the form a..b")))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| CliError::Usage(format!("bad range bound `{s}`: {e}")))
    };
    Ok((parse(a)?, parse(b)?))
}

pub(crate) fn sequence(
    ctx: &mut Context,
    kind: SequenceKind,
    from: usize,
    to: usize,
) -> Result<Vec<BfileEntry>, CliError> {
    (from..=to)
        .map(|index| {
            let value = match kind {
                SequenceKind::Rowsum => row_sum(index, &mut ctx.memo),
                SequenceKind::K1zero => k1_count_formula(index, 0)?,
            };
            Ok(BfileEntry { index, value })
        })
        .collect()
}

pub(crate) fn render(entries: &[BfileEntry]) -> String {
    entries
        .iter()
        .map(|e| format!("{} {}\n", e.index, e.value))
        .collect()
}

/// Reads a b-file: `#` comments and blank lines are skipped, every other line
/// is `index value`.
pub fn parse_bfile(text: &str) -> Result<Vec<BfileEntry>, Error> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<_> = line.split_whitespace().collect();
        let [index, value] = fields[..] else {
            return Err(Error::MalformedInput(format!(
                "b-file line {}: expected `index value`",
                i + 1
            )));
        };
        let index = index
            .parse()
            .map_err(|e| Error::MalformedInput(format!("b-file line {}: bad index: {e}", i + 1)))?;
        let value = value
            .parse()
            .map_err(|e| Error::MalformedInput(format!("b-file line {}: bad value: {e}", i + 1)))?;
        entries.push(BfileEntry { index, value });
    }
    Ok(entries)
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Diff {
    Differs {
        index: usize,
        ours: BigNat,
        theirs: BigNat,
    },
    Missing {
        index: usize,
    },
}

impl fmt::Display for Diff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diff::Differs {
                index,
                ours,
                theirs,
            } => {
                write!(
                    f,
                    "mismatch at {index}: computed {ours}, reference {theirs}"
                )
            }
            Diff::Missing { index } => {
                write!(f, "mismatch at {index}: index absent from reference")
            }
        }
    }
}

/// Every computed term must appear in the reference with the same value.
pub(crate) fn compare(ours: &[BfileEntry], reference: &[BfileEntry]) -> Vec<Diff> {
    ours.iter()
        .filter_map(|e| match reference.iter().find(|r| r.index == e.index) {
            None => Some(Diff::Missing { index: e.index }),
            Some(r) if r.value != e.value => Some(Diff::Differs {
                index: e.index,
                ours: e.value.clone(),
                theirs: r.value.clone(),
            }),
            Some(_) => None,
        })
        .collect()
}
