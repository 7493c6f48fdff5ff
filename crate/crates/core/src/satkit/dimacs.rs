//! DIMACS CNF reading and writing.
//!
//! The reader is strict: it requires a `p cnf V C` header before any clause,
//! rejects literals outside `1..=V`, empty clauses, a clause count that
//! differs from `C`, and a final clause without its terminating `0`. Comment
//! lines start with `c`; a line holding only `%` ends the input.

use std::fmt::Write as _;

use super::{Cnf, Literal};
use crate::error::{Error, Result};

/// Renders `cnf` as DIMACS text (no comments; names go to a sidecar).
pub fn to_dimacs(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars(), cnf.num_clauses());
    for clause in cnf.clauses() {
        for l in clause {
            write!(out, "{} ", l.to_dimacs()).expect("writing to a String");
        }
        out.push_str("0\n");
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Dimacs {
        line,
        message: message.into(),
    }
}

pub fn from_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(u32, usize)> = None;
    let mut cnf = Cnf::default();
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_line = 0;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line == "%" {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse::<u32>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let Some((v, c)) = parsed else {
                return Err(err(
                    line_no,
                    format!("malformed problem line {line:?}, expected \"p cnf <vars> <clauses>\""),
                ));
            };
            header = Some((v, c));
            cnf = Cnf::new(v);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(err(line_no, "clause before the \"p cnf\" problem line"));
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| err(line_no, format!("invalid literal {tok:?}")))?;
            if lit == 0 {
                if pending.is_empty() {
                    return Err(err(line_no, "empty clause"));
                }
                cnf.add_clause(std::mem::take(&mut pending))
                    .map_err(|e| err(line_no, e.to_string()))?;
                continue;
            }
            if lit.unsigned_abs() > num_vars as u64 {
                let plural = if num_vars == 1 { "" } else { "s" };
                return Err(err(
                    line_no,
                    format!("literal {lit} exceeds declared {num_vars} variable{plural}"),
                ));
            }
            if pending.is_empty() {
                pending_line = line_no;
            }
            pending.push(Literal::from_dimacs(lit).map_err(|e| err(line_no, e.to_string()))?);
        }
    }

    let Some((_, declared)) = header else {
        return Err(err(last_line.max(1), "missing \"p cnf\" problem line"));
    };
    if !pending.is_empty() {
        return Err(err(pending_line, "clause is missing its terminating 0"));
    }
    if cnf.num_clauses() != declared {
        return Err(err(
            last_line,
            format!("header declares {declared} clauses but {} were read", cnf.num_clauses()),
        ));
    }
    Ok(cnf)
}
