//! DPLL with two-watched-literal unit propagation and chronological
//! backtracking. Decisions take the lowest-index unassigned variable and try
//! `true` first, so results are fully deterministic.

use super::{Assignment, Cnf, SolveResult};

/// Work counters from one solver run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct SolverStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

// Literal codes: 2*(var-1) for positive, 2*(var-1)+1 for negative.
type Lit = usize;

fn code(l: super::Literal) -> Lit {
    2 * (l.var() as usize - 1) + usize::from(!l.is_positive())
}

fn var_of(l: Lit) -> usize {
    l >> 1
}

const UNASSIGNED: i8 = -1;

struct Frame {
    trail_start: usize,
    lit: Lit,
    flipped: bool,
}

struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    value: Vec<i8>,
    trail: Vec<Lit>,
    head: usize,
    frames: Vec<Frame>,
    units: Vec<Lit>,
    next_var: usize,
    stats: SolverStats,
}

impl Solver {
    fn new(cnf: &Cnf) -> Option<Self> {
        let n = cnf.num_vars() as usize;
        let mut s = Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            value: vec![UNASSIGNED; n],
            trail: Vec::with_capacity(n),
            head: 0,
            frames: Vec::new(),
            units: Vec::new(),
            next_var: 0,
            stats: SolverStats::default(),
        };
        for clause in cnf.clauses() {
            let mut c: Vec<Lit> = clause.iter().map(|&l| code(l)).collect();
            c.sort_unstable();
            c.dedup();
            if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
                continue; // tautology
            }
            match c.len() {
                0 => return None,
                1 => s.units.push(c[0]),
                _ => {
                    let idx = s.clauses.len();
                    s.watches[c[0]].push(idx);
                    s.watches[c[1]].push(idx);
                    s.clauses.push(c);
                }
            }
        }
        Some(s)
    }

    fn lit_value(&self, l: Lit) -> i8 {
        match self.value[var_of(l)] {
            UNASSIGNED => UNASSIGNED,
            v => v ^ (l & 1) as i8,
        }
    }

    fn assign(&mut self, l: Lit) {
        self.value[var_of(l)] = 1 ^ (l & 1) as i8;
        self.trail.push(l);
    }

    /// Enqueues a literal at the root. Returns false on contradiction.
    fn assign_root(&mut self, l: Lit) -> bool {
        match self.lit_value(l) {
            1 => true,
            0 => false,
            _ => {
                self.assign(l);
                true
            }
        }
    }

    /// Unit propagation over the watch lists. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = self.trail[self.head] ^ 1;
            self.head += 1;
            let mut watchers = std::mem::take(&mut self.watches[falsified]);
            let mut i = 0;
            let mut ok = true;
            while i < watchers.len() {
                let ci = watchers[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_val = match self.value[var_of(other)] {
                    UNASSIGNED => UNASSIGNED,
                    v => v ^ (other & 1) as i8,
                };
                if other_val == 1 {
                    i += 1;
                    continue;
                }
                let replacement = (2..clause.len()).find(|&k| {
                    let l = clause[k];
                    match self.value[var_of(l)] {
                        UNASSIGNED => true,
                        v => v ^ (l & 1) as i8 == 1,
                    }
                });
                if let Some(k) = replacement {
                    clause.swap(1, k);
                    let new_watch = clause[1];
                    self.watches[new_watch].push(ci);
                    watchers.swap_remove(i);
                    continue;
                }
                if other_val == UNASSIGNED {
                    self.stats.propagations += 1;
                    self.assign(other);
                    i += 1;
                } else {
                    ok = false;
                    break;
                }
            }
            self.watches[falsified].append(&mut watchers);
            if !ok {
                self.stats.conflicts += 1;
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for l in self.trail.drain(len..) {
            self.value[var_of(l)] = UNASSIGNED;
            self.next_var = self.next_var.min(var_of(l));
        }
        self.head = self.head.min(len);
    }

    /// Chronological backtrack: flip the most recent unflipped decision.
    fn backtrack(&mut self) -> bool {
        while let Some(frame) = self.frames.pop() {
            self.undo_to(frame.trail_start);
            if !frame.flipped {
                let lit = frame.lit ^ 1;
                self.frames.push(Frame {
                    trail_start: frame.trail_start,
                    lit,
                    flipped: true,
                });
                self.assign(lit);
                return true;
            }
        }
        false
    }

    fn decide(&mut self) -> bool {
        while self.next_var < self.value.len() && self.value[self.next_var] != UNASSIGNED {
            self.next_var += 1;
        }
        if self.next_var == self.value.len() {
            return false;
        }
        self.stats.decisions += 1;
        let lit = 2 * self.next_var;
        self.frames.push(Frame {
            trail_start: self.trail.len(),
            lit,
            flipped: false,
        });
        self.assign(lit);
        true
    }

    fn run(&mut self, conflict_limit: Option<u64>) -> Option<bool> {
        let units = std::mem::take(&mut self.units);
        for l in units {
            if !self.assign_root(l) {
                return Some(false);
            }
        }
        loop {
            if !self.propagate() {
                if conflict_limit.is_some_and(|lim| self.stats.conflicts >= lim) {
                    return None;
                }
                if !self.backtrack() {
                    return Some(false);
                }
                continue;
            }
            if !self.decide() {
                return Some(true);
            }
        }
    }

    fn model(&self) -> Assignment {
        Assignment::new(self.value.iter().map(|&v| v == 1).collect())
    }
}

/// Decides satisfiability; a returned model is re-checked against every clause.
pub fn solve(cnf: &Cnf) -> SolveResult {
    solve_with_limit(cnf, None).expect("no conflict limit was set").0
}

/// Like [`solve`] but gives up (returns `None`) after `conflict_limit` conflicts.
pub fn solve_with_limit(cnf: &Cnf, conflict_limit: Option<u64>) -> Option<(SolveResult, SolverStats)> {
    let Some(mut solver) = Solver::new(cnf) else {
        return Some((SolveResult::Unsat, SolverStats::default()));
    };
    let sat = solver.run(conflict_limit)?;
    let result = if sat {
        let model = solver.model();
        if let Some(i) = cnf.first_falsified(&model) {
            panic!("solver produced a model falsifying clause {i}: {:?}", cnf.clauses()[i]);
        }
        SolveResult::Sat(model)
    } else {
        SolveResult::Unsat
    };
    Some((result, solver.stats))
}

#[cfg(test)]
mod tests {
    use super::super::Literal;
    use super::*;

    fn cnf(num_vars: u32, clauses: &[&[i64]]) -> Cnf {
        let mut f = Cnf::new(num_vars);
        for c in clauses {
            f.add_clause(c.iter().map(|&l| Literal::from_dimacs(l).unwrap()))
                .unwrap();
        }
        f
    }

    #[test]
    fn equivalence_is_sat() {
        // (¬p ∨ q) ∧ (p ∨ ¬q)
        let f = cnf(2, &[&[-1, 2], &[1, -2]]);
        let SolveResult::Sat(m) = solve(&f) else {
            panic!("expected SAT")
        };
        assert_eq!(m.values(), &[true, true]);
    }

    #[test]
    fn contradiction_is_unsat() {
        assert_eq!(solve(&cnf(1, &[&[1], &[-1]])), SolveResult::Unsat);
    }

    #[test]
    fn losers_pay_nothing_formula() {
        // wins_i = 2i-1, pays_i = 2i
        let f = cnf(6, &[&[1, -2], &[3, -4], &[5, -6]]);
        assert!(solve(&f).is_sat());
        let mut paper = Assignment::all_false(6);
        paper.set(1, true);
        paper.set(2, true);
        assert!(f.is_satisfied_by(&paper));
    }

    #[test]
    fn empty_formula_is_sat() {
        assert!(solve(&Cnf::new(3)).is_sat());
        assert!(solve(&Cnf::new(0)).is_sat());
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p(i,h) = 2*i + h + 1
        let mut clauses: Vec<Vec<i64>> = (0..3).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
        for h in 1..=2 {
            for i in 0..3 {
                for j in i + 1..3 {
                    clauses.push(vec![-(2 * i + h), -(2 * j + h)]);
                }
            }
        }
        let refs: Vec<&[i64]> = clauses.iter().map(|c| c.as_slice()).collect();
        let (res, stats) = solve_with_limit(&cnf(6, &refs), None).unwrap();
        assert_eq!(res, SolveResult::Unsat);
        assert!(stats.conflicts > 0);
    }

    #[test]
    fn conflict_limit_interrupts() {
        let mut clauses: Vec<Vec<i64>> = (0..6).map(|i| (1..=5).map(|h| 5 * i + h).collect()).collect();
        for h in 1..=5 {
            for i in 0..6 {
                for j in i + 1..6 {
                    clauses.push(vec![-(5 * i + h), -(5 * j + h)]);
                }
            }
        }
        let refs: Vec<&[i64]> = clauses.iter().map(|c| c.as_slice()).collect();
        assert!(solve_with_limit(&cnf(30, &refs), Some(3)).is_none());
    }
}
