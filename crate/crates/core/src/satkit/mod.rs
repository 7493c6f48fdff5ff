//! Propositional clause sets, a DPLL solver, DIMACS I/O, blocking-clause
//! model enumeration, and the CNF encoders for the three-alternative Arrow
//! base case.

mod arrow;
mod dimacs;
mod enumerate;
mod solver;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};

pub use arrow::{
    decode_extensional_model, decode_model, encode_arrow, encode_arrow_extensional, ArrowAxioms, ArrowEncoding,
    ExtensionalArrowEncoding,
};
pub use dimacs::{from_dimacs, to_dimacs};
pub use enumerate::{enumerate_models, ModelEnumeration};
pub use solver::{solve, solve_with_limit, SolverStats};

/// A variable (`>= 1`) with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: u32,
    positive: bool,
}

impl Literal {
    pub fn new(var: u32, positive: bool) -> Result<Self> {
        if var == 0 {
            return Err(domain("variable ids start at 1"));
        }
        Ok(Literal { var, positive })
    }

    /// Positive literal of `var`. Panics on 0.
    pub fn pos(var: u32) -> Self {
        Literal::new(var, true).expect("variable ids start at 1")
    }

    /// Negative literal of `var`. Panics on 0.
    pub fn neg(var: u32) -> Self {
        Literal::new(var, false).expect("variable ids start at 1")
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negate(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn from_dimacs(lit: i64) -> Result<Self> {
        let var = u32::try_from(lit.unsigned_abs()).map_err(|_| domain(format!("literal {lit} out of range")))?;
        Literal::new(var, lit > 0)
    }

    /// Truth value under `assignment`.
    pub fn eval(self, assignment: &Assignment) -> bool {
        assignment.value(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A conjunction of non-empty clauses over variables `1..=num_vars`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Vec<Literal>>,
    var_names: BTreeMap<u32, String>,
}

impl Cnf {
    pub fn new(num_vars: u32) -> Self {
        Cnf {
            num_vars,
            ..Cnf::default()
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn var_names(&self) -> &BTreeMap<u32, String> {
        &self.var_names
    }

    pub fn add_clause(&mut self, clause: impl IntoIterator<Item = Literal>) -> Result<()> {
        let clause: Vec<Literal> = clause.into_iter().collect();
        if clause.is_empty() {
            return Err(domain("clauses must be non-empty"));
        }
        if let Some(l) = clause.iter().find(|l| l.var > self.num_vars) {
            return Err(domain(format!(
                "literal {l} exceeds declared {} variables",
                self.num_vars
            )));
        }
        self.clauses.push(clause);
        Ok(())
    }

    pub fn set_var_name(&mut self, var: u32, name: impl Into<String>) -> Result<()> {
        if var == 0 || var > self.num_vars {
            return Err(domain(format!("cannot name variable {var} of {}", self.num_vars)));
        }
        self.var_names.insert(var, name.into());
        Ok(())
    }

    /// Sorts literals within clauses, removes duplicate literals, then sorts
    /// and deduplicates clauses. Makes emitted DIMACS byte-stable.
    pub fn canonicalize(&mut self) {
        for c in &mut self.clauses {
            c.sort_unstable_by_key(|l| (l.var, l.positive));
            c.dedup();
        }
        self.clauses.sort_unstable_by_key(|c| clause_key(c));
        self.clauses.dedup();
    }

    /// Clauses as sorted DIMACS integer lists, sorted; equal for equal clause multisets.
    pub fn clause_multiset(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .clauses
            .iter()
            .map(|c| {
                let mut v: Vec<i64> = c.iter().map(|l| l.to_dimacs()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        out.sort();
        out
    }

    /// Index of the first clause `assignment` falsifies.
    pub fn first_falsified(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|l| l.eval(assignment)))
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.first_falsified(assignment).is_none()
    }
}

fn clause_key(c: &[Literal]) -> Vec<(u32, bool)> {
    c.iter().map(|l| (l.var, l.positive)).collect()
}

/// A total assignment to variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn all_false(num_vars: u32) -> Self {
        Assignment(vec![false; num_vars as usize])
    }

    pub fn num_vars(&self) -> u32 {
        self.0.len() as u32
    }

    /// Value of variable `var` (1-based).
    pub fn value(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.0[var as usize - 1] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    /// The model as DIMACS literals, e.g. `[1, -2, 3]`.
    pub fn to_literals(&self) -> Vec<i64> {
        (1..=self.num_vars())
            .map(|v| if self.value(v) { v as i64 } else { -(v as i64) })
            .collect()
    }
}

/// Outcome of a satisfiability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Assignment),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SolveResult::Sat(a) => Some(a),
            SolveResult::Unsat => None,
        }
    }
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_sat() { "SAT" } else { "UNSAT" })
    }
}
