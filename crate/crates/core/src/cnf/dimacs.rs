use std::fmt::Write;

use log::warn;
use thiserror::Error;

use super::{Formula, Lit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: clause data before the 'p cnf' header")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate 'p cnf' header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid token {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {literal} exceeds the declared {num_vars} variables")]
    VariableOutOfRange {
        line: usize,
        literal: i64,
        num_vars: usize,
    },
    #[error("line {line}: last clause is missing its terminating 0")]
    MissingTerminator { line: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match *self {
            ParseError::MalformedHeader { line, .. }
            | ParseError::MissingHeader { line }
            | ParseError::DuplicateHeader { line }
            | ParseError::InvalidToken { line, .. }
            | ParseError::VariableOutOfRange { line, .. }
            | ParseError::MissingTerminator { line } => line,
        }
    }
}

/// Parses a DIMACS CNF document.
///
/// Clauses are normalized on the way in: duplicate literals are removed,
/// tautologies dropped, and an empty clause is recorded in
/// [`Formula::contains_empty`]. A clause count that disagrees with the header
/// only produces a warning. A line starting with `%` ends the clause data, as
/// in the SATLIB benchmark files.
pub fn parse_dimacs(text: &str) -> Result<Formula, ParseError> {
    let mut formula: Option<Formula> = None;
    let mut declared_clauses = 0usize;
    let mut read_clauses = 0usize;
    let mut current: Vec<Lit> = Vec::new();
    let mut open_clause_line = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if formula.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            let (vars, clauses) = parse_header(trimmed, line)?;
            formula = Some(Formula::new(vars));
            declared_clauses = clauses;
            continue;
        }
        let Some(f) = formula.as_mut() else {
            return Err(ParseError::MissingHeader { line });
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::InvalidToken {
                line,
                token: token.to_string(),
            })?;
            if value == 0 {
                f.add_clause(std::mem::take(&mut current));
                read_clauses += 1;
                open_clause_line = None;
                continue;
            }
            if value.unsigned_abs() > f.num_vars as u64 {
                return Err(ParseError::VariableOutOfRange {
                    line,
                    literal: value,
                    num_vars: f.num_vars,
                });
            }
            // In range by the check above, and num_vars never exceeds the encoding.
            current.push(Lit::from_dimacs(value).expect("literal in range"));
            open_clause_line.get_or_insert(line);
        }
    }

    if open_clause_line.is_some() {
        return Err(ParseError::MissingTerminator { line: last_line });
    }
    let formula = formula.ok_or(ParseError::MissingHeader { line: last_line })?;
    if read_clauses != declared_clauses {
        warn!("header declares {declared_clauses} clauses but {read_clauses} were read");
    }
    Ok(formula)
}

fn parse_header(line_text: &str, line: usize) -> Result<(usize, usize), ParseError> {
    let malformed = |reason: &str| ParseError::MalformedHeader {
        line,
        reason: reason.to_string(),
    };
    let fields: Vec<&str> = line_text.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "p" {
        return Err(malformed("expected 'p cnf <vars> <clauses>'"));
    }
    if fields[1] != "cnf" {
        return Err(malformed("format must be 'cnf'"));
    }
    let vars: usize = fields[2]
        .parse()
        .map_err(|_| malformed("variable count is not a non-negative integer"))?;
    if vars as u64 > Lit::MAX_VAR as u64 {
        return Err(malformed("variable count too large"));
    }
    let clauses: usize = fields[3]
        .parse()
        .map_err(|_| malformed("clause count is not a non-negative integer"))?;
    Ok((vars, clauses))
}

/// Serializes a formula as DIMACS CNF. An empty clause recorded in
/// `contains_empty` is written as a trailing lone `0`.
pub fn write_dimacs(formula: &Formula) -> String {
    let count = formula.clauses.len() + formula.contains_empty as usize;
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", formula.num_vars, count);
    for clause in &formula.clauses {
        for lit in &clause.lits {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    if formula.contains_empty {
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clauses(f: &Formula) -> Vec<Vec<i64>> {
        f.to_dimacs_clauses()
    }

    #[test]
    fn parses_simple_document() {
        let f = parse_dimacs("p cnf 2 2\n1 -2 0\n2 0").unwrap();
        assert_eq!(f.num_vars, 2);
        assert_eq!(clauses(&f), vec![vec![1, -2], vec![2]]);
        assert!(!f.contains_empty);
    }

    #[test]
    fn drops_tautology() {
        let f = parse_dimacs("p cnf 1 1\n1 -1 0").unwrap();
        assert_eq!(f.num_vars, 1);
        assert!(f.clauses.is_empty());
    }

    #[test]
    fn removes_duplicates() {
        let f = parse_dimacs("p cnf 3 1\n1 1 -2 0").unwrap();
        assert_eq!(clauses(&f), vec![vec![1, -2]]);
    }

    #[test]
    fn comments_multiline_clauses_and_satlib_trailer() {
        let text = "c hello\nc world\np cnf 3 2\n1 2\n 3 0 -1\n-2 0\n%\n0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(clauses(&f), vec![vec![1, 2, 3], vec![-1, -2]]);
    }

    #[test]
    fn records_empty_clause() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n0\n").unwrap();
        assert!(f.contains_empty);
        assert_eq!(clauses(&f), vec![vec![1, 2]]);
    }

    #[test]
    fn count_mismatch_is_tolerated() {
        let f = parse_dimacs("p cnf 2 5\n1 2 0\n").unwrap();
        assert_eq!(f.num_clauses(), 1);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_dimacs("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::VariableOutOfRange {
                line: 2,
                literal: 3,
                ..
            }
        ));

        let err = parse_dimacs("p cnf 2 1\n1 x 0\n").unwrap_err();
        assert!(matches!(err, ParseError::InvalidToken { line: 2, .. }));

        let err = parse_dimacs("p cnf 2 1\n1 2\n").unwrap_err();
        assert_eq!(err, ParseError::MissingTerminator { line: 2 });

        let err = parse_dimacs("c x\np dnf 2 1\n").unwrap_err();
        assert!(matches!(err, ParseError::MalformedHeader { line: 2, .. }));

        let err = parse_dimacs("p cnf two 1\n").unwrap_err();
        assert_eq!(err.line(), 1);

        let err = parse_dimacs("1 2 0\n").unwrap_err();
        assert_eq!(err, ParseError::MissingHeader { line: 1 });

        let err = parse_dimacs("p cnf 1 1\np cnf 1 1\n").unwrap_err();
        assert_eq!(err, ParseError::DuplicateHeader { line: 2 });

        assert!(parse_dimacs("").is_err());
    }

    #[test]
    fn writes_documents() {
        let f = Formula::from_dimacs_clauses(2, [vec![1, -2], vec![2]]).unwrap();
        assert_eq!(write_dimacs(&f), "p cnf 2 2\n1 -2 0\n2 0\n");
        assert_eq!(write_dimacs(&Formula::new(0)), "p cnf 0 0\n");
    }

    #[test]
    fn empty_clause_survives_round_trip() {
        let f = parse_dimacs("p cnf 1 2\n1 0\n0\n").unwrap();
        assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
    }
}
