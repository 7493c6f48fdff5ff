//! CNF encodings of the three-alternative Arrow base case.
//!
//! The structural encoding has one variable per truth-table entry (`3·2^n`
//! variables), so IIA holds by construction. The extensional encoding has one
//! variable per (profile, pair) and states IIA with equality clauses; it
//! exists to cross-validate the structural one.

use serde::Serialize;

use super::{Assignment, Cnf, Literal};
use crate::budget::Budget;
use crate::error::{domain, Error, Result};
use crate::orders::{order_of_bits, profile_count, PairCode};
use crate::swf::{check_agents, entry_triples, ExtensionalSwf, PairwiseSwf, PAIR_NAMES};

/// Which axioms besides IIA and acyclicity the encoding states.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ArrowAxioms {
    pub unanimity: bool,
    pub non_dictatorship: bool,
}

impl ArrowAxioms {
    pub const NONE: ArrowAxioms = ArrowAxioms {
        unanimity: false,
        non_dictatorship: false,
    };
    pub const UN: ArrowAxioms = ArrowAxioms {
        unanimity: true,
        non_dictatorship: false,
    };
    pub const ARROW: ArrowAxioms = ArrowAxioms {
        unanimity: true,
        non_dictatorship: true,
    };
}

/// A structural Arrow encoding and its variable map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowEncoding {
    pub cnf: Cnf,
    pub agents: usize,
    pub axioms: ArrowAxioms,
}

impl ArrowEncoding {
    fn entries(&self) -> usize {
        1 << self.agents
    }

    /// Variable of table entry `entry` for pair `pair` (`0 = ab, 1 = ac, 2 = bc`).
    pub fn var(&self, pair: usize, entry: usize) -> u32 {
        table_var(self.agents, pair, entry)
    }

    /// Inverse of [`ArrowEncoding::var`].
    pub fn entry_of(&self, var: u32) -> Option<(usize, usize)> {
        let idx = (var as usize).checked_sub(1)?;
        (idx < 3 * self.entries()).then(|| (idx / self.entries(), idx % self.entries()))
    }

    /// All table variables, in order.
    pub fn table_vars(&self) -> Vec<u32> {
        (1..=self.cnf.num_vars()).collect()
    }
}

fn table_var(agents: usize, pair: usize, entry: usize) -> u32 {
    (1 + pair * (1 << agents) + entry) as u32
}

fn entry_name(agents: usize, pair: usize, entry: usize) -> String {
    format!("{}[{:0width$b}]", PAIR_NAMES[pair], entry, width = agents)
}

fn check_profiles(agents: usize, budget: &Budget) -> Result<()> {
    check_agents(agents)?;
    Budget::check("profiles", profile_count(agents, 3), budget.profiles)?;
    Ok(())
}

/// Literal stating that social bit `bit` holds, given the variable of that bit.
fn lit(var: u32, bit: bool) -> Literal {
    Literal::new(var, bit).expect("variables start at 1")
}

/// Clauses forbidding the cyclic codes 010 and 101 on three social-bit variables.
fn acyclicity(cnf: &mut Cnf, v: [u32; 3]) -> Result<()> {
    for cyc in PairCode::CYCLIC {
        cnf.add_clause((0..3).map(|pair| lit(v[pair], !cyc.bit(pair))))?;
    }
    Ok(())
}

/// Encodes acyclicity over every profile, plus unanimity and
/// non-dictatorship when enabled. Clauses are canonicalized.
pub fn encode_arrow(agents: usize, axioms: ArrowAxioms, budget: &Budget) -> Result<ArrowEncoding> {
    check_profiles(agents, budget)?;
    let entries = 1usize << agents;
    let mut cnf = Cnf::new((3 * entries) as u32);
    for pair in 0..3 {
        for e in 0..entries {
            cnf.set_var_name(table_var(agents, pair, e), entry_name(agents, pair, e))?;
        }
    }
    for t in entry_triples(agents) {
        acyclicity(&mut cnf, [0, 1, 2].map(|pair| table_var(agents, pair, t[pair])))?;
    }
    if axioms.unanimity {
        for pair in 0..3 {
            cnf.add_clause([Literal::pos(table_var(agents, pair, entries - 1))])?;
            cnf.add_clause([Literal::neg(table_var(agents, pair, 0))])?;
        }
    }
    if axioms.non_dictatorship {
        for agent in 0..agents {
            // Some entry must differ from agent's own bit.
            cnf.add_clause((0..3).flat_map(|pair| {
                (0..entries).map(move |e| {
                    let agent_bit = (e >> (agents - 1 - agent)) & 1 == 1;
                    lit(table_var(agents, pair, e), !agent_bit)
                })
            }))?;
        }
    }
    cnf.canonicalize();
    Ok(ArrowEncoding { cnf, agents, axioms })
}

/// Reads the truth tables off a model of an [`ArrowEncoding`].
pub fn decode_model(enc: &ArrowEncoding, model: &Assignment) -> Result<PairwiseSwf> {
    if model.num_vars() < enc.cnf.num_vars() {
        return Err(domain(format!(
            "model assigns {} variables, encoding has {}",
            model.num_vars(),
            enc.cnf.num_vars()
        )));
    }
    let entries = enc.entries();
    let mut codes = [0u64; 3];
    for (pair, code) in codes.iter_mut().enumerate() {
        for e in 0..entries {
            *code = (*code << 1) | model.value(enc.var(pair, e)) as u64;
        }
    }
    PairwiseSwf::new(enc.agents, codes).map_err(|e| Error::Invariant(format!("decoded model is not a valid SWF: {e}")))
}

/// An extensional Arrow encoding: one variable per (profile, pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionalArrowEncoding {
    pub cnf: Cnf,
    pub agents: usize,
    pub axioms: ArrowAxioms,
}

impl ExtensionalArrowEncoding {
    /// Variable for the social bit of `pair` at canonical profile index `profile`.
    pub fn var(&self, profile: usize, pair: usize) -> u32 {
        (1 + 3 * profile + pair) as u32
    }
}

pub fn encode_arrow_extensional(
    agents: usize,
    axioms: ArrowAxioms,
    budget: &Budget,
) -> Result<ExtensionalArrowEncoding> {
    check_profiles(agents, budget)?;
    let triples = entry_triples(agents);
    let var = |p: usize, pair: usize| (1 + 3 * p + pair) as u32;
    let mut cnf = Cnf::new((3 * triples.len()) as u32);
    let entries = 1usize << agents;
    // Representative profile for each (pair, agents' bits) class.
    let mut rep = vec![[None::<usize>; 3]; entries];
    for (p, t) in triples.iter().enumerate() {
        acyclicity(&mut cnf, [var(p, 0), var(p, 1), var(p, 2)])?;
        for pair in 0..3 {
            match rep[t[pair]][pair] {
                None => rep[t[pair]][pair] = Some(p),
                Some(r) => {
                    cnf.add_clause([Literal::neg(var(p, pair)), Literal::pos(var(r, pair))])?;
                    cnf.add_clause([Literal::pos(var(p, pair)), Literal::neg(var(r, pair))])?;
                }
            }
            if axioms.unanimity && t[pair] == entries - 1 {
                cnf.add_clause([Literal::pos(var(p, pair))])?;
            }
            if axioms.unanimity && t[pair] == 0 {
                cnf.add_clause([Literal::neg(var(p, pair))])?;
            }
        }
    }
    if axioms.non_dictatorship {
        for agent in 0..agents {
            let mut clause = Vec::new();
            for (p, t) in triples.iter().enumerate() {
                for (pair, &entry) in t.iter().enumerate() {
                    let agent_bit = (entry >> (agents - 1 - agent)) & 1 == 1;
                    clause.push(lit(var(p, pair), !agent_bit));
                }
            }
            cnf.add_clause(clause)?;
        }
    }
    cnf.canonicalize();
    Ok(ExtensionalArrowEncoding { cnf, agents, axioms })
}

/// Reads the social order of every profile off a model.
pub fn decode_extensional_model(enc: &ExtensionalArrowEncoding, model: &Assignment) -> Result<ExtensionalSwf> {
    let profiles = enc.cnf.num_vars() as usize / 3;
    let outputs = (0..profiles)
        .map(|p| {
            let code = PairCode::from_bits(
                model.value(enc.var(p, 0)),
                model.value(enc.var(p, 1)),
                model.value(enc.var(p, 2)),
            );
            order_of_bits(code).map_err(|e| Error::Invariant(format!("decoded model: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    ExtensionalSwf::new(enc.agents, 3, outputs)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::super::{enumerate_models, from_dimacs, solve, to_dimacs, SolveResult};
    use super::*;
    use crate::swf::{classify, enumerate_iia_swfs, ClassTag, Swf};

    fn models(enc: &ArrowEncoding) -> Vec<PairwiseSwf> {
        let all = enumerate_models(&enc.cnf, &enc.table_vars(), 10_000).unwrap();
        assert!(!all.truncated);
        all.models
            .iter()
            .map(|row| decode_model(enc, &Assignment::new(row.clone())).unwrap())
            .collect()
    }

    #[test]
    fn arrow_is_unsat_at_two_agents() {
        let b = Budget::default();
        let enc = encode_arrow(2, ArrowAxioms::ARROW, &b).unwrap();
        assert_eq!(enc.cnf.num_vars(), 12);
        assert_eq!(solve(&enc.cnf), SolveResult::Unsat);
    }

    #[test]
    fn model_counts() {
        let b = Budget::default();
        let un = models(&encode_arrow(2, ArrowAxioms::UN, &b).unwrap());
        assert_eq!(un.len(), 2);
        for s in &un {
            assert_eq!(classify(&Swf::Pairwise(*s)).tag(), ClassTag::Dictatorial);
        }
        let none = models(&encode_arrow(2, ArrowAxioms::NONE, &b).unwrap());
        let decoded: BTreeSet<_> = none.into_iter().collect();
        let enumerated: BTreeSet<_> = enumerate_iia_swfs(2, &b).unwrap().into_iter().collect();
        assert_eq!(decoded.len(), 94);
        assert_eq!(decoded, enumerated);
    }

    #[test]
    fn decodes_dictators() {
        let b = Budget::default();
        let enc = encode_arrow(2, ArrowAxioms::NONE, &b).unwrap();
        let mut m = Assignment::all_false(12);
        for pair in 0..3 {
            for e in 0..4 {
                m.set(enc.var(pair, e), (e >> 1) & 1 == 1);
            }
        }
        assert_eq!(decode_model(&enc, &m).unwrap(), PairwiseSwf::dictator(2, 0).unwrap());
        for pair in 0..3 {
            for e in 0..4 {
                m.set(enc.var(pair, e), e & 1 == 0);
            }
        }
        assert_eq!(
            decode_model(&enc, &m).unwrap(),
            PairwiseSwf::inverse_dictator(2, 1).unwrap()
        );

        // ab=0, ac=1, bc=0 everywhere is cyclic.
        let mut bad = Assignment::all_false(12);
        for e in 0..4 {
            bad.set(enc.var(1, e), true);
        }
        assert!(matches!(decode_model(&enc, &bad), Err(Error::Invariant(_))));
    }

    #[test]
    fn variable_map() {
        let enc = encode_arrow(2, ArrowAxioms::NONE, &Budget::default()).unwrap();
        assert_eq!(enc.cnf.var_names()[&1], "ab[00]");
        assert_eq!(enc.cnf.var_names()[&12], "bc[11]");
        for v in 1..=12 {
            let (pair, e) = enc.entry_of(v).unwrap();
            assert_eq!(enc.var(pair, e), v);
        }
        assert_eq!(enc.entry_of(13), None);
        assert_eq!(enc.entry_of(0), None);
    }

    #[test]
    fn dimacs_is_byte_stable() {
        let b = Budget::default();
        let enc = encode_arrow(2, ArrowAxioms::ARROW, &b).unwrap();
        let text = to_dimacs(&enc.cnf);
        assert_eq!(text, to_dimacs(&encode_arrow(2, ArrowAxioms::ARROW, &b).unwrap().cnf));
        let back = from_dimacs(&text).unwrap();
        assert_eq!(back.clause_multiset(), enc.cnf.clause_multiset());
    }

    #[test]
    fn extensional_encoding_agrees() {
        let b = Budget::default();
        let enc = encode_arrow_extensional(2, ArrowAxioms::NONE, &b).unwrap();
        let vars: Vec<u32> = (1..=enc.cnf.num_vars()).collect();
        let all = enumerate_models(&enc.cnf, &vars, 1000).unwrap();
        assert_eq!(all.count(), 94);
        let decoded: BTreeSet<PairwiseSwf> = all
            .models
            .iter()
            .map(|r| {
                decode_extensional_model(&enc, &Assignment::new(r.clone()))
                    .unwrap()
                    .to_pairwise()
                    .unwrap()
            })
            .collect();
        let enumerated: BTreeSet<_> = enumerate_iia_swfs(2, &b).unwrap().into_iter().collect();
        assert_eq!(decoded, enumerated);

        let un = encode_arrow_extensional(2, ArrowAxioms::UN, &b).unwrap();
        assert_eq!(enumerate_models(&un.cnf, &vars, 1000).unwrap().count(), 2);
        let arrow = encode_arrow_extensional(2, ArrowAxioms::ARROW, &b).unwrap();
        assert_eq!(solve(&arrow.cnf), SolveResult::Unsat);
    }
}
