//! The line-oriented text format for matroids and realizations.
//!
//! ```text
//! # comments start with '#'
//! name: wheel3
//! n: 6
//! presentation: lines
//! lines: 1 2 3 / 3 4 5 / 1 5 6
//! ```
//!
//! A matrix presentation gives `field: Q` (or `GF 32003`) and `rows: <k>`,
//! followed by `k` lines of whitespace-separated entries, one column per point.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, FieldSpec};
use crate::matroid::{Matroid, Presentation};
use crate::realization::Realization;
use crate::subset::Subset;

/// A parsed matroid file.
#[derive(Debug)]
pub struct MatroidFile {
    pub name: Option<String>,
    pub matroid: Matroid,
    pub realization: Option<Realization>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Lines,
    Circuits,
    Matrix,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_sets(line: usize, value: &str, n: usize) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for part in value.split('/') {
        let labels: Vec<usize> = part
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| perr(line, format!("not a point label: {t:?}")))
            })
            .collect::<Result<_>>()?;
        if labels.is_empty() {
            return Err(perr(line, "empty set between '/' separators"));
        }
        let s = Subset::from_labels(&labels, n).map_err(|e| perr(line, e.to_string()))?;
        if s.len() != labels.len() {
            return Err(perr(line, format!("repeated label in {}", part.trim())));
        }
        out.push(s);
    }
    Ok(out)
}

/// Parses a file in the text format. Errors carry 1-based line numbers.
pub fn parse(text: &str) -> Result<MatroidFile> {
    let mut name = None;
    let mut n: Option<usize> = None;
    let mut kind: Option<Kind> = None;
    let mut sets: Option<(usize, String)> = None;
    let mut field = FieldSpec::Rational;
    let mut rows: Option<(usize, Vec<Vec<num_rational::BigRational>>)> = None;
    let mut pending_rows = 0;
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if pending_rows > 0 {
            let row = content
                .split_whitespace()
                .map(|t| {
                    parse_rational(t)
                        .ok_or_else(|| perr(line, format!("not a rational number: {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.as_mut().expect("rows started").1.push(row);
            pending_rows -= 1;
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| perr(line, format!("expected 'key: value', got {content:?}")))?;
        let value = value.trim();
        match key.trim() {
            "name" => name = Some(value.to_string()),
            "n" => {
                n = Some(value.parse().map_err(|_| {
                    perr(line, format!("n must be a natural number, got {value:?}"))
                })?)
            }
            "presentation" => {
                kind = Some(match value {
                    "lines" => Kind::Lines,
                    "circuits" => Kind::Circuits,
                    "matrix" => Kind::Matrix,
                    _ => return Err(perr(line, format!("unknown presentation {value:?}"))),
                })
            }
            "lines" | "circuits" => {
                if sets.is_some() {
                    return Err(perr(line, "sets given twice"));
                }
                sets = Some((line, value.to_string()));
            }
            "field" => {
                field = value
                    .parse()
                    .map_err(|e: Error| perr(line, e.to_string()))?
            }
            "rows" => {
                let k: usize = value.parse().map_err(|_| {
                    perr(
                        line,
                        format!("rows must be a natural number, got {value:?}"),
                    )
                })?;
                rows = Some((line, Vec::with_capacity(k)));
                pending_rows = k;
            }
            other => return Err(perr(line, format!("unknown key {other:?}"))),
        }
    }
    if pending_rows > 0 {
        return Err(perr(
            last_line,
            format!("{pending_rows} matrix row(s) missing"),
        ));
    }

    let kind = kind.ok_or_else(|| perr(last_line, "missing 'presentation'"))?;
    let (matroid, realization) = match kind {
        Kind::Lines | Kind::Circuits => {
            let n = n.ok_or_else(|| perr(last_line, "missing 'n'"))?;
            let (line, value) = sets.unwrap_or((last_line, String::new()));
            let parsed = if value.trim().is_empty() {
                Vec::new()
            } else {
                parse_sets(line, &value, n)?
            };
            let m = if kind == Kind::Lines {
                Matroid::from_lines(n, parsed)?
            } else {
                Matroid::from_circuits(n, parsed)?
            };
            (m, None)
        }
        Kind::Matrix => {
            let (line, rows) = rows.ok_or_else(|| perr(last_line, "missing 'rows'"))?;
            let width = rows.first().map_or(0, Vec::len);
            if let Some(n) = n {
                if rows.iter().any(|r| r.len() != n) {
                    return Err(perr(line, format!("every row must have n = {n} entries")));
                }
            }
            let n = n.unwrap_or(width);
            let r =
                Realization::with_columns(field, n, rows).map_err(|e| perr(line, e.to_string()))?;
            (Matroid::from_matrix(r.clone())?, Some(r))
        }
    };
    Ok(MatroidFile {
        name,
        matroid,
        realization,
    })
}

fn header(out: &mut String, name: &str, n: usize, presentation: &str) {
    if !name.is_empty() {
        let _ = writeln!(out, "name: {name}");
    }
    let _ = writeln!(out, "n: {n}");
    let _ = writeln!(out, "presentation: {presentation}");
}

fn set_list(sets: &[Subset]) -> String {
    sets.iter()
        .map(|s| {
            s.labels()
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" / ")
}

/// Writes a realization as a matrix presentation.
pub fn emit_realization(name: &str, r: &Realization) -> String {
    let mut out = String::new();
    header(&mut out, name, r.n(), "matrix");
    let field = match r.field() {
        FieldSpec::Rational => "Q".to_string(),
        FieldSpec::Prime(p) => format!("GF {p}"),
    };
    let _ = writeln!(out, "field: {field}");
    let _ = writeln!(out, "rows: {}", r.dim());
    for row in r.rows() {
        let _ = writeln!(
            out,
            "{}",
            row.iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    out
}

/// Writes a matroid in its own presentation. Derived presentations
/// (truncations, restrictions) are written through their circuits.
pub fn emit_matroid(name: &str, m: &Matroid) -> Result<String> {
    let mut out = String::new();
    match m.presentation() {
        Presentation::Lines(lines) => {
            header(&mut out, name, m.n(), "lines");
            let _ = writeln!(out, "lines: {}", set_list(lines));
        }
        Presentation::Matrix(r) => return Ok(emit_realization(name, r)),
        _ => {
            header(&mut out, name, m.n(), "circuits");
            let _ = writeln!(out, "circuits: {}", set_list(&m.circuits(None)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_file() {
        let f = parse(
            "# the wheel\nname: wheel3\nn: 6\npresentation: lines\nlines: 1 2 3 / 3 4 5 / 1 5 6\n",
        )
        .unwrap();
        assert_eq!(f.name.as_deref(), Some("wheel3"));
        let m = Matroid::from_lines(6, ["123", "345", "156"].map(Subset::digits).to_vec()).unwrap();
        assert!(f.matroid.same_as(&m));
        assert!(f.realization.is_none());
        let again = parse(&emit_matroid("wheel3", &f.matroid).unwrap()).unwrap();
        assert!(again.matroid.same_as(&m));
    }

    #[test]
    fn matrix_file() {
        let text = "n: 4\npresentation: matrix\nfield: GF 7\nrows: 3\n1 0 0 1\n0 1 0 1  # trailing comment\n\n0 0 1 -1/2\n";
        let f = parse(text).unwrap();
        let r = f.realization.unwrap();
        assert_eq!(r.field(), FieldSpec::Prime(7));
        assert_eq!((r.dim(), r.n()), (3, 4));
        assert!(f.matroid.same_as(&Matroid::uniform(3, 4).unwrap()));
        let back = parse(&emit_realization("", &r))
            .unwrap()
            .realization
            .unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn circuits_and_empty() {
        let f = parse("n: 4\npresentation: circuits\ncircuits: 1 2 3 / 1 2 4 / 1 3 4 / 2 3 4\n")
            .unwrap();
        assert!(f.matroid.same_as(&Matroid::uniform(2, 4).unwrap()));
        let b = parse("n: 3\npresentation: circuits\n").unwrap();
        assert!(b.matroid.same_as(&Matroid::boolean(3).unwrap()));
    }

    #[test]
    fn errors_carry_lines() {
        let line_of = |text: &str| match parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(line_of("n: 6\npresentation: lines\nlines: 1 2 x\n"), 3);
        assert_eq!(line_of("n: 6\npresentation: lines\nlines: 1 2 9\n"), 3);
        assert_eq!(line_of("n: 6\nwhat: 1\n"), 2);
        assert_eq!(line_of("n: 6\npresentation: shapes\n"), 2);
        assert_eq!(line_of("presentation: matrix\nrows: 2\n1 0\n"), 3);
        assert_eq!(line_of("presentation: matrix\nrows: 2\n1 0\n0 1 1\n"), 2);
        assert_eq!(line_of("n: 2\npresentation: matrix\nrows: 1\n1 q\n"), 4);
        assert_eq!(line_of("n: 6\n"), 1);
        // geometric problems surface as constructor errors
        assert!(matches!(
            parse("n: 6\npresentation: lines\nlines: 1 2\n"),
            Err(Error::ShortLine(_))
        ));
    }
}
