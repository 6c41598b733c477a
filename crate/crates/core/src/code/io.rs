//! Text format: line 1 is `q k n`, then `k` rows of `n` element indices.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::sync::Arc;

use super::{CodeError, LinearCode};
use crate::gf::{Elem, Field};

fn parse_err(line: usize, message: impl Into<String>) -> CodeError {
    CodeError::Parse { line, message: message.into() }
}

pub fn parse_code(text: &str) -> Result<LinearCode, CodeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `q k n`"))?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(hline, format!("expected an integer, found `{t}`"))))
        .collect::<Result<_, _>>()?;
    let &[q, k, n] = nums.as_slice() else {
        return Err(parse_err(hline, format!("header needs 3 integers `q k n`, found {}", nums.len())));
    };
    let field = Arc::new(Field::with_order(q).map_err(|e| parse_err(hline, e.to_string()))?);
    let (k, n) = (k as usize, n as usize);
    if k > n {
        return Err(parse_err(hline, format!("dimension {k} exceeds length {n}")));
    }

    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(k);
    for (lineno, line) in lines.by_ref().take(k) {
        let row = line
            .split_whitespace()
            .map(|t| {
                let v: u64 = t
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("expected an element index, found `{t}`")))?;
                field
                    .elem(v)
                    .ok_or_else(|| parse_err(lineno, format!("element {v} out of range for GF({q})")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(parse_err(lineno, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() < k {
        return Err(parse_err(text.lines().count() + 1, format!("expected {k} rows, found {}", rows.len())));
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(parse_err(lineno, "unexpected content after the last row"));
    }
    LinearCode::from_rows_with_length(field, n, rows)
}

pub fn write_code(code: &LinearCode) -> String {
    let mut out = format!("{} {} {}\n", code.q(), code.dim(), code.len());
    for row in code.generator() {
        let mut first = true;
        for e in row {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{e}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "4 2 3\n1 0 2\n0 1 3\n";
        let code = parse_code(text).unwrap();
        assert_eq!((code.q(), code.dim(), code.len()), (4, 2, 3));
        assert_eq!(write_code(&code), text);
    }

    #[test]
    fn comments_and_blank_lines() {
        let code = parse_code("# X1\n\n2 1 2\n1 1\n").unwrap();
        assert_eq!(code.generator(), &[vec![1, 1]]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line = |t: &str| match parse_code(t) {
            Err(CodeError::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line("2 1\n1 1\n"), 1);
        assert_eq!(line("6 1 2\n1 1\n"), 1);
        assert_eq!(line("3 2 3\n1 0 2\n0 1\n"), 3);
        assert_eq!(line("3 1 3\n1 0 3\n"), 2);
        assert_eq!(line("3 1 3\n1 0 x\n"), 2);
        assert_eq!(line("2 1 2\n1 1\n0 1\n"), 3);
        assert_eq!(line("2 2 2\n1 1\n"), 3);
    }

    #[test]
    fn dependent_rows_rejected() {
        assert_eq!(
            parse_code("2 2 2\n1 1\n1 1\n").unwrap_err(),
            CodeError::RankDeficient { rank: 1, rows: 2 }
        );
    }

    #[test]
    fn zero_code() {
        let code = parse_code("3 0 4\n").unwrap();
        assert_eq!((code.dim(), code.len()), (0, 4));
    }
}
