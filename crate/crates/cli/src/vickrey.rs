use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use implab_core::auctions::{
    abstract_grid, check_abstract_dominance, check_efficiency, check_weak_dominance, max_classical, max_constructive,
    parse_value, parse_values, run_spa, soundness_sweep, soundness_sweep_with, AuctionOutcome, AuctionRule, BidGrid,
    Bids, Valuations, Value,
};
use implab_core::Budget;

use crate::{CliError, CliResult, Fault, Outcome, Report, VickreyCommand, EXIT_COUNTEREXAMPLE, EXIT_OK};

/// Failures listed individually in soundness reports.
const MAX_LISTED_FAILURES: usize = 20;

fn exit_for(holds: bool) -> i32 {
    if holds {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    }
}

fn verdict(holds: bool) -> String {
    if holds { "holds" } else { "counterexample" }.to_string()
}

pub fn cmd_vickrey(cmd: &VickreyCommand, budget: &Budget) -> CliResult<Outcome> {
    match cmd {
        VickreyCommand::Dominance(a) => {
            let v = Valuations::new(parse_values(&a.values)?)?;
            if let Some(n) = a.n {
                if n != v.participants() {
                    return Err(CliError(format!("--n {n} but {} values given", v.participants())));
                }
            }
            let grid = BidGrid::parse(&a.grid, budget)?;
            let rule = AuctionRule::from(a.rule);
            let r = check_weak_dominance(rule, &v, &grid, budget)?;
            let holds = r.holds();
            let summary = vec![match &r.counterexample {
                None => format!(
                    "{rule}: truthful bidding is weakly dominant for all {} bidders over {} cells",
                    v.participants(),
                    r.cells
                ),
                Some(ce) => format!("{rule}: {ce}"),
            }];
            let mut report = Report::new("vickrey dominance", a);
            report.verdict = verdict(holds);
            report.counts = json!({
                "participants": r.participants,
                "grid_points": grid.len(),
                "cells": r.cells,
                "cases": r.cases,
                "truthful_nonnegative": r.truthful_nonnegative,
            });
            report.witnesses = json!({"counterexample": r.counterexample});
            Ok(Outcome {
                report,
                exit_code: exit_for(holds),
                summary,
            })
        }
        VickreyCommand::Efficiency(a) => {
            let v = Valuations::new(parse_values(&a.values)?)?;
            let rule = AuctionRule::from(a.rule);
            let r = check_efficiency(rule, &v);
            let holds = r.holds();
            let summary = vec![format!(
                "{rule}: winner {} with valuation {} (max {})",
                r.winner, r.winner_value, r.max_value
            )];
            let mut report = Report::new("vickrey efficiency", a);
            report.verdict = verdict(holds);
            report.counts = json!({"participants": v.participants()});
            report.witnesses = json!({"outcome": r});
            Ok(Outcome {
                report,
                exit_code: exit_for(holds),
                summary,
            })
        }
        VickreyCommand::Soundness(a) => {
            let grid = BidGrid::parse(&a.grid, budget)?;
            let rule = AuctionRule::from(a.rule);
            let s = match a.inject_fault {
                None => soundness_sweep(rule, a.n, &grid, budget)?,
                Some(Fault::LoserPays) => {
                    let faulty = move |b: &Bids| -> AuctionOutcome {
                        let mut o = rule.run(b);
                        for (won, p) in o.allocation.iter().zip(o.payments.iter_mut()) {
                            if !won {
                                *p = Value::from_integer(1);
                            }
                        }
                        o
                    };
                    soundness_sweep_with(&faulty, a.n, &grid, budget)?
                }
            };
            let holds = s.sound();
            let summary = vec![format!(
                "{} bid vectors, {} unsound, parallel and sequential runs {}",
                s.inputs,
                s.failures.len(),
                if s.parallel_agrees { "agree" } else { "DISAGREE" }
            )];
            let mut report = Report::new("vickrey soundness", a);
            report.verdict = if holds { "sound" } else { "violations" }.into();
            report.counts = json!({
                "inputs": s.inputs,
                "unsound_inputs": s.failures.len(),
                "parallel_agrees": s.parallel_agrees,
            });
            report.witnesses = json!({
                "failures": s.failures.iter().take(MAX_LISTED_FAILURES).collect::<Vec<_>>(),
                "single_bidder": run_spa(&Bids::new(vec![grid.points()[grid.len() - 1]])?),
            });
            Ok(Outcome {
                report,
                exit_code: exit_for(holds),
                summary,
            })
        }
        VickreyCommand::Abstract(a) => {
            let v = parse_value(&a.value)?;
            let delta = parse_value(&a.delta)?;
            let rule = AuctionRule::from(a.rule);
            let grid = abstract_grid(v, delta)?;
            if a.n_max < 2 {
                return Err(CliError("--n-max must be at least 2".into()));
            }
            let mut per_n = Vec::new();
            let mut summary = Vec::new();
            let mut holds = true;
            for n in 2..=a.n_max {
                let r = check_abstract_dominance(rule, n, v, delta, budget)?;
                holds &= r.holds();
                summary.push(match &r.counterexample {
                    None => format!("n = {n}: holds ({} cells)", r.cells),
                    Some(ce) => format!("n = {n}: {ce}"),
                });
                per_n.push(json!({
                    "n": n,
                    "holds": r.holds(),
                    "cells": r.cells,
                    "counterexample": r.counterexample,
                }));
            }
            let mut report = Report::new("vickrey abstract", a);
            report.verdict = verdict(holds);
            report.counts = json!({"grid": grid, "sizes": per_n.len()});
            report.witnesses = json!({"per_n": per_n});
            Ok(Outcome {
                report,
                exit_code: exit_for(holds),
                summary,
            })
        }
        VickreyCommand::Max(a) => {
            let lists: Vec<Vec<Value>> = match &a.values {
                Some(list) => vec![parse_values(list)?],
                None => {
                    if a.max_len == 0 {
                        return Err(CliError("--max-len must be positive".into()));
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
                    (0..a.lists)
                        .map(|_| {
                            let len = rng.gen_range(1..=a.max_len);
                            (0..len)
                                .map(|_| Value::new(rng.gen_range(-1000..=1000), rng.gen_range(1..=12)))
                                .collect()
                        })
                        .collect()
                }
            };
            let mut disagreements = Vec::new();
            let mut maxima = Vec::new();
            for (i, xs) in lists.iter().enumerate() {
                let c = max_classical(xs)?;
                let k = max_constructive(xs)?;
                if c.value != k || !xs.iter().all(|&x| x <= k) {
                    disagreements
                        .push(json!({"list": i, "classical": c.value.to_string(), "constructive": k.to_string()}));
                }
                if a.values.is_some() {
                    maxima.push(
                        json!({"classical": c.value.to_string(), "index": c.index, "constructive": k.to_string()}),
                    );
                }
            }
            let holds = disagreements.is_empty();
            let summary = vec![format!("{} lists, {} disagreements", lists.len(), disagreements.len())];
            let mut report = Report::new("vickrey max", a);
            report.verdict = if holds { "agree" } else { "disagree" }.into();
            report.counts = json!({"lists": lists.len(), "disagreements": disagreements.len()});
            report.witnesses = json!({"disagreements": disagreements, "maxima": maxima});
            Ok(Outcome {
                report,
                exit_code: exit_for(holds),
                summary,
            })
        }
    }
}
