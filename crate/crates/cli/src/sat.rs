use serde_json::json;

use implab_core::satkit::{from_dimacs, solve_with_limit, SolveResult};

use crate::{io_error, CliResult, Outcome, Report, SatArgs, EXIT_OK, EXIT_UNSAT};

pub fn cmd_sat(args: &SatArgs) -> CliResult<Outcome> {
    let text = std::fs::read_to_string(&args.file).map_err(|e| io_error(&args.file, e))?;
    let cnf = from_dimacs(&text)?;
    let (result, stats) = solve_with_limit(&cnf, None).expect("no conflict limit was set");
    let model = result.model().map(|m| m.to_literals());
    if let (Some(path), Some(lits)) = (&args.model, &model) {
        let line: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
        std::fs::write(path, format!("v {} 0\n", line.join(" "))).map_err(|e| io_error(path, e))?;
    }
    let sat = matches!(result, SolveResult::Sat(_));
    let mut report = Report::new("sat", args);
    report.verdict = result.to_string();
    report.counts = json!({
        "variables": cnf.num_vars(),
        "clauses": cnf.num_clauses(),
        "solver": stats,
    });
    report.witnesses = json!({ "model": model });
    Ok(Outcome {
        report,
        exit_code: if sat { EXIT_OK } else { EXIT_UNSAT },
        summary: vec![format!(
            "{}: {result} ({} vars, {} clauses, {} conflicts)",
            args.file.display(),
            cnf.num_vars(),
            cnf.num_clauses(),
            stats.conflicts
        )],
    })
}
