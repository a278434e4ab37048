//! Plain-text algebra files.
//!
//! ```text
//! # comment
//! dim 3
//! bracket 2 3 : 1 1
//! bracket 1 2 : 3 1/2, 5 -1
//! ```

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};
use crate::table::{validate_lie_algebra, StructureTable, Validation};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn index(token: &str, dim: usize, line: usize) -> Result<usize> {
    let i: usize = token
        .parse()
        .map_err(|_| err(line, format!("expected a basis index, found `{token}`")))?;
    if i == 0 || i > dim {
        return Err(err(line, format!("index {i} is outside 1..={dim}")));
    }
    Ok(i)
}

/// Parses without checking the Jacobi identity.
pub fn parse_table_unchecked(text: &str) -> Result<StructureTable<Scalar>> {
    let mut table: Option<StructureTable<Scalar>> = None;
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(table) = table.as_mut() else {
            let mut words = content.split_whitespace();
            if words.next() != Some("dim") {
                return Err(err(line, "the first line must be `dim <n>`"));
            }
            let dim: usize = match (words.next().map(str::parse), words.next()) {
                (Some(Ok(d)), None) if d > 0 => d,
                _ => return Err(err(line, "`dim` takes one positive integer")),
            };
            table = Some(StructureTable::abelian(dim));
            continue;
        };
        let dim = table.dim();
        let rest = content
            .strip_prefix("bracket")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| {
                err(
                    line,
                    format!("expected `bracket j k : l c, ...`, found `{content}`"),
                )
            })?;
        let (lhs, rhs) = rest
            .split_once(':')
            .ok_or_else(|| err(line, "missing `:`"))?;
        let pair: Vec<&str> = lhs.split_whitespace().collect();
        let [j, k] = pair[..] else {
            return Err(err(line, "a bracket names exactly two indices"));
        };
        let (j, k) = (index(j, dim, line)?, index(k, dim, line)?);
        if j >= k {
            return Err(err(
                line,
                format!("bracket indices must satisfy j < k, found {j} {k}"),
            ));
        }
        if !seen.insert((j, k)) {
            return Err(err(line, format!("duplicate bracket {j} {k}")));
        }
        let mut targets = BTreeSet::new();
        let mut coeffs = Vec::new();
        for term in rhs.split(',') {
            let parts: Vec<&str> = term.split_whitespace().collect();
            let [l, c] = parts[..] else {
                return Err(err(
                    line,
                    format!("expected `<index> <coefficient>`, found `{}`", term.trim()),
                ));
            };
            let l = index(l, dim, line)?;
            if !targets.insert(l) {
                return Err(err(line, format!("index {l} appears twice")));
            }
            let c = parse_scalar(c).map_err(|e| match e {
                Error::Parse { message, .. } => err(line, message),
                other => other,
            })?;
            if !c.is_zero() {
                coeffs.push((l, c));
            }
        }
        table
            .set_bracket(j, k, coeffs)
            .map_err(|e| err(line, e.to_string()))?;
    }
    table.ok_or_else(|| err(text.lines().count().max(1), "missing `dim <n>` line"))
}

/// Parses and validates; a Jacobi failure names its first triple.
pub fn parse_algebra_text(text: &str) -> Result<StructureTable<Scalar>> {
    let table = parse_table_unchecked(text)?;
    match validate_lie_algebra(&table) {
        Validation::Ok => Ok(table),
        Validation::Violations(v) => Err(Error::Jacobi(v[0].triple)),
    }
}

/// Canonical text: brackets in index order, targets ascending.
pub fn serialize_algebra(table: &StructureTable<Scalar>) -> String {
    let mut out = format!("dim {}\n", table.dim());
    for ((j, k), cs) in table.entries() {
        let terms: Vec<String> = cs.iter().map(|(l, c)| format!("{l} {c}")).collect();
        out.push_str(&format!("bracket {j} {k} : {}\n", terms.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn heisenberg_file() {
        let t = parse_algebra_text("dim 3\nbracket 2 3 : 1 1").unwrap();
        assert_eq!(t.coeff(2, 3, 1), int(1));
        assert_eq!(serialize_algebra(&t), "dim 3\nbracket 2 3 : 1 1\n");
    }

    #[test]
    fn abelian_file() {
        let t = parse_algebra_text("dim 2\n").unwrap();
        assert!(t.is_abelian());
        assert_eq!(t.dim(), 2);
    }

    #[test]
    fn comments_fractions_and_composites() {
        let text = "# header\n\ndim 5\nbracket 1 2 : 3 1/2, 5 -1  # composite\n";
        let t = parse_algebra_text(text).unwrap();
        assert_eq!(t.coeff(1, 2, 3), ratio(1, 2));
        assert_eq!(t.coeff(1, 2, 5), int(-1));
        assert_eq!(parse_algebra_text(&serialize_algebra(&t)).unwrap(), t);
    }

    fn line_of(text: &str) -> usize {
        match parse_algebra_text(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("dim 3\nbracket 3 2 : 1 1"), 2);
        assert_eq!(line_of("dim 3\nbracket 2 3 : 1 1\nbracket 2 3 : 1 2"), 3);
        assert_eq!(line_of("dim 3\n\nbracket 2 3 : 4 1"), 3);
        assert_eq!(line_of("dim 3\nbracket 2 3 : 1 x"), 2);
        assert_eq!(line_of("dim 3\nbracket 2 3 : 1 1/0"), 2);
        assert_eq!(line_of("bracket 2 3 : 1 1"), 1);
        assert_eq!(line_of("# only a comment"), 1);
        assert_eq!(line_of("dim 3\nbrackets 2 3 : 1 1"), 2);
    }

    #[test]
    fn jacobi_failure_names_triple() {
        let text = "dim 6\nbracket 1 2 : 3 1\nbracket 1 3 : 4 1\nbracket 1 4 : 6 1\nbracket 2 3 : 5 1\nbracket 2 4 : 6 1";
        assert_eq!(parse_algebra_text(text), Err(Error::Jacobi((1, 2, 3))));
    }
}
