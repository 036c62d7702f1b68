//! Plain-text Cayley table format.
//!
//! ```text
//! # comment
//! 2
//! 0 0
//! 0 1
//! identity=1
//! zero=0
//! name 0 bottom
//! ```
//!
//! Line one holds the order `m`, the next `m` lines the rows (left factor
//! selects the row), followed by optional `identity=`, `zero=` and `name`
//! lines. Everything after `#` on a line is ignored, as are blank lines.

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// Parsed but not yet validated contents of a Cayley file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyFile {
    pub rows: Vec<Vec<usize>>,
    pub identity: Option<usize>,
    pub zero: Option<usize>,
    pub names: Vec<(usize, String)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<CayleyFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing order line"))?;
    let m: usize = header
        .parse()
        .map_err(|_| parse_err(first, format!("expected element count, got {header:?}")))?;
    if m == 0 {
        return Err(parse_err(first, "element count must be positive"));
    }

    let mut rows = Vec::with_capacity(m);
    for r in 0..m {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(first, format!("expected {m} rows, found {r}")))?;
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(no, format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != m {
            return Err(parse_err(no, format!("row has {} entries, expected {m}", row.len())));
        }
        rows.push(row);
    }

    let mut file = CayleyFile { rows, identity: None, zero: None, names: Vec::new() };
    for (no, line) in lines {
        let index = |v: &str| -> Result<usize> {
            v.trim().parse().map_err(|_| parse_err(no, format!("bad index {v:?}")))
        };
        if let Some(v) = line.strip_prefix("identity=") {
            file.identity = Some(index(v)?);
        } else if let Some(v) = line.strip_prefix("zero=") {
            file.zero = Some(index(v)?);
        } else if let Some(rest) = line.strip_prefix("name ") {
            let rest = rest.trim_start();
            let (i, name) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| parse_err(no, "name line needs an index and a string"))?;
            file.names.push((index(i)?, name.trim().to_string()));
        } else {
            return Err(parse_err(no, format!("unrecognized line {line:?}")));
        }
    }
    Ok(file)
}

impl CayleyFile {
    pub fn into_semigroup(self) -> Result<FiniteSemigroup> {
        let m = self.rows.len();
        let s = FiniteSemigroup::validate(&self.rows, self.identity, self.zero)?;
        if self.names.is_empty() {
            return Ok(s);
        }
        let mut names: Vec<String> = (0..m).map(|i| i.to_string()).collect();
        for (i, n) in self.names {
            if i >= m {
                return Err(Error::IndexOutOfRange { index: i, size: m });
            }
            names[i] = n;
        }
        s.with_names(names)
    }
}

/// Parses and validates in one step.
pub fn read_semigroup(text: &str) -> Result<FiniteSemigroup> {
    parse(text)?.into_semigroup()
}

pub fn write(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.size());
    for row in s.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    if let Some(e) = s.identity() {
        out.push_str(&format!("identity={e}\n"));
    }
    if let Some(z) = s.zero() {
        out.push_str(&format!("zero={z}\n"));
    }
    if let Some(names) = s.names() {
        for (i, n) in names.iter().enumerate() {
            out.push_str(&format!("name {i} {n}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn parses_the_documented_example() {
        let text = "# min semilattice\n2\n0 0\n0 1   # row two\nidentity=1\nzero=0\nname 0 bottom\n";
        let f = parse(text).unwrap();
        assert_eq!(f.rows, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(f.identity, Some(1));
        assert_eq!(f.zero, Some(0));
        assert_eq!(f.names, vec![(0, "bottom".to_string())]);
        let s = f.into_semigroup().unwrap();
        assert_eq!(s.name(0), "bottom");
        assert_eq!(s.name(1), "1");
    }

    #[test]
    fn round_trips_the_zoo() {
        for (name, s) in zoo::all() {
            let back = read_semigroup(&write(&s)).unwrap();
            assert_eq!(back, s, "{name}");
        }
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("2\n0 0\n0 x\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, message: "bad entry \"x\"".into() });
        assert!(matches!(parse("3\n0 0 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("1\n0\nfoo=1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn invariant_failures_surface_after_parsing() {
        let err = read_semigroup("2\n1 1\n0 0\n").unwrap_err();
        assert!(matches!(err, Error::NonAssociative(..)));
    }
}
