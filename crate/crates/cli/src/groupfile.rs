//! Group tables on disk: a line `order n`, then `n` rows of `n` 0-based
//! indices, row `g` column `h` holding `g·h`. Lines starting with `#` and
//! blank lines are ignored.

use std::path::Path;

use dualcheck::group::{FiniteGroup, GroupError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Law(#[from] GroupError),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
}

fn err(line: usize, msg: impl Into<String>) -> GroupFileError {
    GroupFileError::Parse { line, msg: msg.into() }
}

// Large enough for anything the suites can handle.
const MAX_ORDER: usize = 512;

pub fn parse_group_text(name: &str, text: &str) -> Result<FiniteGroup, GroupFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, head) = lines.next().ok_or_else(|| err(1, "missing `order n` line"))?;
    let n = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["order", n] => n.parse::<usize>().map_err(|_| err(first, format!("bad order `{n}`")))?,
        _ => return Err(err(first, "expected `order n`")),
    };
    if n == 0 || n > MAX_ORDER {
        return Err(err(first, format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = first;
    for (line, text) in lines {
        last = line;
        if rows.len() == n {
            return Err(err(line, "more rows than the order"));
        }
        let row = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(err(line, format!("row has {} entries, expected {n}", row.len())));
        }
        if let Some(v) = row.iter().find(|&&v| v >= n) {
            return Err(err(line, format!("entry {v} out of range")));
        }
        rows.push(row);
    }
    if rows.len() < n {
        return Err(err(last, format!("only {} of {n} rows", rows.len())));
    }
    Ok(FiniteGroup::validate(name, &rows)?)
}

pub fn parse_group_file(path: &Path) -> Result<FiniteGroup, GroupFileError> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupFileError::Io(path.display().to_string(), e))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("file");
    parse_group_text(name, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let g = parse_group_text("c2", "# cyclic\norder 2\n0 1\n\n1 0\n").unwrap();
        assert_eq!(g.order(), 2);
        match parse_group_text("x", "order 2\n0 1\n1\n") {
            Err(GroupFileError::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_group_text("x", "order 2\n0 1\n0 1\n"), Err(GroupFileError::Law(_))));
        assert!(matches!(parse_group_text("x", "ordre 2"), Err(GroupFileError::Parse { line: 1, .. })));
        assert!(matches!(parse_group_text("x", "order 1\n0\n0\n"), Err(GroupFileError::Parse { line: 3, .. })));
    }
}
