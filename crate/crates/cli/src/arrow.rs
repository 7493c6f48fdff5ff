use std::collections::BTreeSet;
use std::path::Path;

use serde_json::json;

use implab_core::satkit::{
    decode_model, encode_arrow, enumerate_models, solve, to_dimacs, ArrowAxioms, Assignment, Cnf, SolveResult,
};
use implab_core::swf::{
    arrow_base_case, candidate_count, enumerate_iia_swfs, is_dictatorial, satisfies_unanimity, verify_tang_lin,
    wilson_base_case, PairwiseSwf, Swf,
};
use implab_core::Budget;

use crate::{io_error, ArrowArgs, CliResult, DroppableAxiom, Outcome, Report, EXIT_DISAGREEMENT, EXIT_OK};

/// Writes `cnf` as DIMACS at `path` and its variable names at `<path>.vars.json`.
pub(crate) fn emit_dimacs(cnf: &Cnf, path: &Path) -> CliResult<()> {
    std::fs::write(path, to_dimacs(cnf)).map_err(|e| io_error(path, e))?;
    let mut sidecar = path.as_os_str().to_owned();
    sidecar.push(".vars.json");
    let names = serde_json::to_string_pretty(cnf.var_names()).expect("names serialize") + "\n";
    std::fs::write(&sidecar, names).map_err(|e| io_error(Path::new(&sidecar), e))
}

fn satisfies(axioms: ArrowAxioms, swf: &PairwiseSwf) -> bool {
    let s = Swf::from(*swf);
    (!axioms.unanimity || satisfies_unanimity(&s).is_ok()) && (!axioms.non_dictatorship || is_dictatorial(&s).is_none())
}

pub fn cmd_arrow(args: &ArrowArgs, budget: &Budget) -> CliResult<Outcome> {
    let n = args.agents;
    let axioms = ArrowAxioms {
        unanimity: !args.drop_axiom.contains(&DroppableAxiom::Un),
        non_dictatorship: !args.drop_axiom.contains(&DroppableAxiom::Nd),
    };

    let tang_lin = verify_tang_lin(n, budget)?;
    let unanimous = arrow_base_case(n, true, budget)?;
    let wilson = wilson_base_case(n, budget)?;
    let expected: BTreeSet<PairwiseSwf> = enumerate_iia_swfs(n, budget)?
        .into_iter()
        .filter(|s| satisfies(axioms, s))
        .collect();

    let enc = encode_arrow(n, axioms, budget)?;
    if let Some(path) = &args.emit_dimacs {
        emit_dimacs(&enc.cnf, path)?;
    }
    let result = solve(&enc.cnf);
    let mut agree = result.is_sat() != expected.is_empty();
    let mut disagreements = Vec::new();
    if !agree {
        disagreements.push(format!(
            "SAT route says {result}, enumeration finds {} SWFs",
            expected.len()
        ));
    }
    let sat_model = match &result {
        SolveResult::Sat(model) => {
            let swf = decode_model(&enc, model)?;
            if !expected.contains(&swf) {
                agree = false;
                disagreements.push(format!("decoded model {swf:?} is not among the enumerated SWFs"));
            }
            Some(swf)
        }
        SolveResult::Unsat => None,
    };

    let mut model_count = None;
    if args.count_models {
        let limit = candidate_count(n).map_or(usize::MAX, |c| c.min(usize::MAX as u128) as usize);
        let models = enumerate_models(&enc.cnf, &enc.table_vars(), limit)?;
        let decoded: BTreeSet<PairwiseSwf> = models
            .models
            .iter()
            .map(|row| {
                let mut a = Assignment::all_false(enc.cnf.num_vars());
                for (&v, &b) in enc.table_vars().iter().zip(row) {
                    a.set(v, b);
                }
                decode_model(&enc, &a)
            })
            .collect::<Result<_, _>>()?;
        if decoded != expected {
            agree = false;
            disagreements.push(format!(
                "{} decoded models versus {} enumerated SWFs",
                decoded.len(),
                expected.len()
            ));
        }
        model_count = Some(models.count());
    }

    let mut report = Report::new("arrow", args);
    report.verdict = result.to_string();
    report.counts = json!({
        "iia_count": tang_lin.iia_count,
        "census": tang_lin.census,
        "unanimity_survivors": unanimous.survivors.len(),
        "unanimity_census": unanimous.census,
        "surjective_survivors": wilson.survivors.len(),
        "surjective_census": wilson.census,
        "axiom_survivors": expected.len(),
        "sat_variables": enc.cnf.num_vars(),
        "sat_clauses": enc.cnf.num_clauses(),
        "models": model_count,
    });
    report.witnesses = json!({
        "axioms": {"iia": true, "unanimity": axioms.unanimity, "non_dictatorship": axioms.non_dictatorship},
        "cross_check": if agree { "agree" } else { "disagree" },
        "disagreements": disagreements,
        "unanimity_survivors": unanimous.survivors,
        "surjective_survivors": wilson.survivors,
        "unclassified": tang_lin.unclassified,
        "sat_model": sat_model,
    });

    let mut summary = vec![
        format!(
            "{n} agents: {} IIA SWFs (dictatorial {}, inversely dictatorial {}, constant {}, small range {}, unclassified {})",
            tang_lin.iia_count,
            tang_lin.census.dictatorial,
            tang_lin.census.inversely_dictatorial,
            tang_lin.census.constant,
            tang_lin.census.small_range,
            tang_lin.census.unclassified
        ),
        format!(
            "unanimity leaves {} ({} dictatorial); surjectivity leaves {}",
            unanimous.survivors.len(),
            unanimous.census.dictatorial,
            wilson.survivors.len()
        ),
        format!(
            "SAT route: {result} ({} vars, {} clauses); enumeration route: {} SWFs; routes {}",
            enc.cnf.num_vars(),
            enc.cnf.num_clauses(),
            expected.len(),
            if agree { "agree" } else { "DISAGREE" }
        ),
    ];
    if let Some(count) = model_count {
        summary.push(format!("{count} models of the encoding"));
    }
    Ok(Outcome {
        report,
        exit_code: if agree { EXIT_OK } else { EXIT_DISAGREEMENT },
        summary,
    })
}
