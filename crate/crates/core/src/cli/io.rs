//! Plain-text ensemble and POVM files: four numbers per line, `#` comments.

use std::fmt;

use crate::bloch::BlochVector;
use crate::povm::PovmElement;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Rows of exactly four numbers, with their line numbers.
pub fn parse_rows(text: &str) -> Result<Vec<(usize, [f64; 4])>, ParseError> {
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |message: String| ParseError {
            line: k + 1,
            message,
        };
        if fields.len() != 4 {
            return Err(err(format!("expected 4 numbers, found {}", fields.len())));
        }
        let mut row = [0.0; 4];
        for (slot, field) in row.iter_mut().zip(&fields) {
            *slot = field
                .parse::<f64>()
                .map_err(|_| err(format!("{field:?} is not a number")))?;
            if !slot.is_finite() {
                return Err(err(format!("{field:?} is not finite")));
            }
        }
        rows.push((k + 1, row));
    }
    Ok(rows)
}

/// `<prior> <bx> <by> <bz>` lines.
pub fn parse_ensemble(text: &str) -> Result<Vec<(f64, BlochVector)>, ParseError> {
    let rows = parse_rows(text)?;
    if rows.len() < 2 {
        return Err(ParseError {
            line: rows.last().map_or(1, |r| r.0),
            message: format!("need at least 2 states, found {}", rows.len()),
        });
    }
    Ok(rows
        .into_iter()
        .map(|(_, [p, x, y, z])| (p, BlochVector::new(x, y, z)))
        .collect())
}

/// `<a> <vx> <vy> <vz>` lines.
pub fn parse_povm(text: &str) -> Result<Vec<PovmElement>, ParseError> {
    Ok(parse_rows(text)?
        .into_iter()
        .map(|(_, [a, x, y, z])| PovmElement {
            a,
            v: BlochVector::new(x, y, z),
        })
        .collect())
}

pub fn format_ensemble(raw: &[(f64, BlochVector)]) -> String {
    raw.iter()
        .map(|(p, b)| format!("{p:?} {:?} {:?} {:?}\n", b.x, b.y, b.z))
        .collect()
}

pub fn format_povm(elements: &[PovmElement]) -> String {
    elements
        .iter()
        .map(|e| format!("{:?} {:?} {:?} {:?}\n", e.a, e.v.x, e.v.y, e.v.z))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blanks() {
        let text = "# trine-ish\n\n0.5 0 0 1\n  # indented comment\n0.5 0 0 -1\n";
        let e = parse_ensemble(text).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[1].1, BlochVector::new(0.0, 0.0, -1.0));
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = parse_ensemble("0.5 0 0 1\n0.5 0 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_ensemble("0.5 0 0 1\n0,5 0 0 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_ensemble("0.5 0 0 1\n").is_err());
        assert!(parse_ensemble("0.5 0 0 1\nnan 0 0 1\n").is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let raw = vec![
            (0.1, BlochVector::new(0.1 + 0.2, -1e-17, 1.0 / 3.0)),
            (0.9, BlochVector::Z),
        ];
        assert_eq!(parse_ensemble(&format_ensemble(&raw)).unwrap(), raw);
    }
}
