//! Projected model enumeration by blocking clauses.

use serde::Serialize;

use super::{solve, Cnf, Literal, SolveResult};
use crate::error::{domain, Result};

/// Distinct assignments to a projection, each extendable to a full model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelEnumeration {
    pub projection: Vec<u32>,
    /// One row per model, aligned with `projection`.
    pub models: Vec<Vec<bool>>,
    /// The limit was reached before the enumeration was exhausted.
    pub truncated: bool,
}

impl ModelEnumeration {
    pub fn count(&self) -> usize {
        self.models.len()
    }
}

/// Repeatedly solves, records the projected model, and blocks it, until UNSAT
/// or `limit` models have been found.
pub fn enumerate_models(cnf: &Cnf, projection: &[u32], limit: usize) -> Result<ModelEnumeration> {
    if let Some(&v) = projection.iter().find(|&&v| v == 0 || v > cnf.num_vars()) {
        return Err(domain(format!(
            "projection variable {v} outside 1..={}",
            cnf.num_vars()
        )));
    }
    let mut work = cnf.clone();
    let mut models = Vec::new();
    loop {
        let SolveResult::Sat(model) = solve(&work) else {
            return Ok(ModelEnumeration {
                projection: projection.to_vec(),
                models,
                truncated: false,
            });
        };
        if models.len() == limit {
            return Ok(ModelEnumeration {
                projection: projection.to_vec(),
                models,
                truncated: true,
            });
        }
        let row: Vec<bool> = projection.iter().map(|&v| model.value(v)).collect();
        if projection.is_empty() {
            // The only projected model is the empty one; nothing to block.
            models.push(row);
            return Ok(ModelEnumeration {
                projection: Vec::new(),
                models,
                truncated: false,
            });
        }
        work.add_clause(
            projection
                .iter()
                .zip(&row)
                .map(|(&v, &val)| Literal::new(v, !val).expect("validated above")),
        )?;
        models.push(row);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjunction_has_three_models() {
        let mut f = Cnf::new(2);
        f.add_clause([Literal::pos(1), Literal::pos(2)]).unwrap();
        let e = enumerate_models(&f, &[1, 2], 100).unwrap();
        assert_eq!(e.count(), 3);
        assert!(!e.truncated);
        assert!(!e.models.contains(&vec![false, false]));

        let e = enumerate_models(&f, &[1, 2], 2).unwrap();
        assert_eq!(e.count(), 2);
        assert!(e.truncated);

        let e = enumerate_models(&f, &[1], 100).unwrap();
        assert_eq!(e.count(), 2);
        assert_eq!(enumerate_models(&f, &[], 100).unwrap().count(), 1);
        assert!(enumerate_models(&f, &[3], 100).is_err());
    }

    #[test]
    fn unsat_has_no_models() {
        let mut f = Cnf::new(1);
        f.add_clause([Literal::pos(1)]).unwrap();
        f.add_clause([Literal::neg(1)]).unwrap();
        assert_eq!(enumerate_models(&f, &[1], 10).unwrap().count(), 0);
        assert_eq!(enumerate_models(&f, &[], 10).unwrap().count(), 0);
    }
}
