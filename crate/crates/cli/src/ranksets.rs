use serde_json::json;

use implab_core::ranksets::{
    check_relation, encode_ranksets, find_inconsistent_subsets, ground_axiom, minmax_relation, parse_axioms, AxiomId,
    CheckStatus, DiscoveryOptions, RelationClass, Universe,
};
use implab_core::satkit::{solve_with_limit, SolveResult};

use crate::arrow::emit_dimacs;
use crate::{CliError, CliResult, Outcome, RanksetsCommand, Report, EXIT_OK};

fn parse_class(s: &str) -> CliResult<RelationClass> {
    Ok(s.parse()?)
}

fn names(axioms: &[AxiomId]) -> Vec<String> {
    axioms.iter().map(|a| a.to_string()).collect()
}

pub fn cmd_ranksets(cmd: &RanksetsCommand) -> CliResult<Outcome> {
    match cmd {
        RanksetsCommand::Check(a) => {
            let axioms = parse_axioms(&a.axioms)?;
            let class = parse_class(&a.class)?;
            let u = Universe::new(a.m)?;
            let enc = encode_ranksets(&u, &axioms, class);
            if let Some(path) = &a.emit_dimacs {
                emit_dimacs(&enc.cnf, path)?;
            }
            let (status, witness, stats) = match solve_with_limit(&enc.cnf, a.conflict_limit) {
                None => (CheckStatus::Timeout, None, None),
                Some((SolveResult::Unsat, stats)) => (CheckStatus::Unsat, None, Some(stats)),
                Some((SolveResult::Sat(model), stats)) => {
                    (CheckStatus::Sat, Some(enc.decode(&model)?.to_string()), Some(stats))
                }
            };
            let vacuous: Vec<String> = axioms
                .iter()
                .filter(|&&ax| ground_axiom(&u, ax).vacuous)
                .map(|ax| ax.to_string())
                .collect();
            let verdict = match status {
                CheckStatus::Sat => "SAT",
                CheckStatus::Unsat => "UNSAT",
                CheckStatus::Timeout => "TIMEOUT",
            };
            let mut report = Report::new("ranksets check", a);
            report.verdict = verdict.to_string();
            report.counts = json!({
                "subsets": u.subset_count(),
                "sat_variables": enc.cnf.num_vars(),
                "sat_clauses": enc.cnf.num_clauses(),
                "solver": stats,
            });
            report.witnesses = json!({
                "axioms": names(&axioms),
                "class": class,
                "vacuous_axioms": vacuous,
                "relation": witness,
            });
            let summary = vec![format!(
                "{} over {} objects ({class}): {verdict}",
                names(&axioms).join(", "),
                a.m
            )];
            Ok(Outcome {
                report,
                exit_code: EXIT_OK,
                summary,
            })
        }
        RanksetsCommand::Discover(a) => {
            let catalog = parse_axioms(&a.axioms)?;
            let class = parse_class(&a.class)?;
            let options = DiscoveryOptions {
                prune: a.prune,
                conflict_limit: a.conflict_limit,
            };
            let found = find_inconsistent_subsets(a.u_max, &catalog, class, options)?;
            let impossible: Vec<_> = found.impossibilities().collect();
            let timeouts = found
                .results
                .iter()
                .filter(|r| r.per_m.iter().any(|s| s.status == CheckStatus::Timeout))
                .count();
            let mut summary: Vec<String> = impossible
                .iter()
                .map(|r| {
                    format!(
                        "{{{}}} inconsistent from m = {}",
                        names(&r.axioms).join(", "),
                        r.minimal_m.unwrap()
                    )
                })
                .collect();
            summary.push(format!(
                "{} of {} subsets inconsistent up to m = {} ({class})",
                impossible.len(),
                found.results.len(),
                a.u_max
            ));
            let mut report = Report::new("ranksets discover", a);
            report.verdict = if impossible.is_empty() {
                "consistent"
            } else {
                "inconsistent-subsets-found"
            }
            .into();
            report.counts = json!({
                "subsets": found.results.len(),
                "inconsistent": impossible.len(),
                "pruned": found.results.iter().filter(|r| r.pruned).count(),
                "timeouts": timeouts,
            });
            report.witnesses = json!({ "results": found.results });
            Ok(Outcome {
                report,
                exit_code: EXIT_OK,
                summary,
            })
        }
        RanksetsCommand::Minmax(a) => {
            let u = Universe::new(a.m)?;
            let axioms: Vec<AxiomId> = if a.axiom.is_empty() {
                AxiomId::ALL.to_vec()
            } else {
                parse_axioms(&a.axiom.join(","))?
            };
            if axioms.is_empty() {
                return Err(CliError("no axiom given".into()));
            }
            let rel = minmax_relation(&u);
            let mut results = Vec::new();
            let mut summary = Vec::new();
            for &ax in &axioms {
                let g = ground_axiom(&u, ax);
                let violation = check_relation(&rel, ax).err();
                summary.push(match &violation {
                    Some(c) => format!("{ax}: violated by {c}"),
                    None => format!("{ax}: holds ({} instances)", g.constraints.len()),
                });
                results.push(json!({
                    "axiom": ax,
                    "instances": g.constraints.len(),
                    "vacuous": g.vacuous,
                    "holds": violation.is_none(),
                    "violation": violation.map(|c| json!({"constraint": c, "text": c.to_string()})),
                }));
            }
            let violated = results.iter().filter(|r| r["holds"] == false).count();
            let mut report = Report::new("ranksets minmax", a);
            report.verdict = if violated == 0 { "holds" } else { "violated" }.into();
            report.counts = json!({"axioms": axioms.len(), "violated": violated, "subsets": u.subset_count()});
            report.witnesses = json!({"ordering": rel.to_string(), "results": results});
            Ok(Outcome {
                report,
                exit_code: EXIT_OK,
                summary,
            })
        }
    }
}
