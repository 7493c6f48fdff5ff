//! Batch front end: every subcommand produces a JSON [`Report`] and an exit code.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0    | expected verdict (for `sat`: satisfiable) |
//! | 1    | invalid input, budget exceeded, or I/O failure |
//! | 2    | `arrow`: the enumeration and SAT routes disagree |
//! | 3    | `vickrey`: a counterexample or soundness violation was found |
//! | 20   | `sat`: unsatisfiable |

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};

use implab_core::Budget;

mod arrow;
mod ranksets;
mod sat;
mod vickrey;

pub use arrow::cmd_arrow;
pub use ranksets::cmd_ranksets;
pub use sat::cmd_sat;
pub use vickrey::cmd_vickrey;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Parser)]
#[command(
    name = "implab",
    version,
    about = "Base-case checks of social choice impossibility theorems and auction properties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Print a short human-readable summary.
    #[arg(long, global = true)]
    pub summary: bool,
    /// Worker threads for parallel sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arrow's theorem for three alternatives: enumeration and SAT routes.
    Arrow(ArrowArgs),
    /// Axioms for ranking sets of objects.
    #[command(subcommand)]
    Ranksets(RanksetsCommand),
    /// Second-price auction properties.
    #[command(subcommand)]
    Vickrey(VickreyCommand),
    /// Solve a DIMACS CNF file.
    Sat(SatArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DroppableAxiom {
    /// Unanimity.
    Un,
    /// Non-dictatorship.
    Nd,
}

#[derive(Debug, Args, Serialize)]
pub struct ArrowArgs {
    #[arg(long, default_value_t = 2)]
    pub agents: usize,
    /// Leave an axiom out of the SAT encoding (IIA is built into the encoding).
    #[arg(long = "drop-axiom", value_enum)]
    pub drop_axiom: Vec<DroppableAxiom>,
    /// Enumerate every model of the encoding and compare with the enumeration route.
    #[arg(long)]
    pub count_models: bool,
    /// Write the encoding as DIMACS, with variable names in `<path>.vars.json`.
    #[arg(long)]
    pub emit_dimacs: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum RanksetsCommand {
    /// Decide whether a set of axioms admits a relation of the given class.
    Check(RanksetsCheckArgs),
    /// Find the inconsistent subsets of an axiom catalog.
    Discover(RanksetsDiscoverArgs),
    /// Check the min-max ordering against axioms.
    Minmax(RanksetsMinmaxArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct RanksetsCheckArgs {
    /// Comma-separated axioms: dominance, independence, aversion, appeal, topmono.
    #[arg(long)]
    pub axioms: String,
    #[arg(long)]
    pub m: usize,
    /// transitive, weak-order or linear-order.
    #[arg(long, default_value = "linear-order")]
    pub class: String,
    #[arg(long)]
    pub conflict_limit: Option<u64>,
    #[arg(long)]
    pub emit_dimacs: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct RanksetsDiscoverArgs {
    #[arg(long = "u-max", default_value_t = 4)]
    pub u_max: usize,
    /// Catalog to search (default: every axiom).
    #[arg(long, default_value = "dominance,independence,aversion,appeal,topmono")]
    pub axioms: String,
    #[arg(long, default_value = "linear-order")]
    pub class: String,
    /// Skip strict supersets of inconsistent subsets.
    #[arg(long)]
    pub prune: bool,
    #[arg(long)]
    pub conflict_limit: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct RanksetsMinmaxArgs {
    #[arg(long)]
    pub m: usize,
    /// Axiom to check (repeatable; default: every axiom).
    #[arg(long)]
    pub axiom: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum VickreyCommand {
    /// Exhaustive weak-dominance sweep of truthful bidding.
    Dominance(DominanceArgs),
    /// Truthful bidding allocates to a highest valuation.
    Efficiency(EfficiencyArgs),
    /// Outcome invariants over every bid vector on a grid.
    Soundness(SoundnessArgs),
    /// Dominance over the three-point bid abstraction for growing n.
    Abstract(AbstractArgs),
    /// Classical and constructive maximum on seeded random lists.
    Max(MaxArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleArg {
    SecondPrice,
    FirstPrice,
}

impl From<RuleArg> for implab_core::auctions::AuctionRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::SecondPrice => implab_core::auctions::AuctionRule::SecondPrice,
            RuleArg::FirstPrice => implab_core::auctions::AuctionRule::FirstPrice,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct DominanceArgs {
    /// Comma-separated valuations, e.g. `3,1,2` or `3/2,1`.
    #[arg(long)]
    pub values: String,
    /// Number of participants; must match the number of values when given.
    #[arg(long)]
    pub n: Option<usize>,
    /// `start:stop:step` or a comma-separated list.
    #[arg(long)]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = RuleArg::SecondPrice)]
    pub rule: RuleArg,
}

#[derive(Debug, Args, Serialize)]
pub struct EfficiencyArgs {
    #[arg(long)]
    pub values: String,
    #[arg(long, value_enum, default_value_t = RuleArg::SecondPrice)]
    pub rule: RuleArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Every losing bidder pays 1.
    LoserPays,
}

#[derive(Debug, Args, Serialize)]
pub struct SoundnessArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = RuleArg::SecondPrice)]
    pub rule: RuleArg,
    /// Wrap the rule in a deliberately broken mechanism.
    #[arg(long, value_enum)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Args, Serialize)]
pub struct AbstractArgs {
    #[arg(long = "n-max", default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value = "10")]
    pub value: String,
    #[arg(long, default_value = "1")]
    pub delta: String,
    #[arg(long, value_enum, default_value_t = RuleArg::SecondPrice)]
    pub rule: RuleArg,
}

#[derive(Debug, Args, Serialize)]
pub struct MaxArgs {
    /// Compare on this list instead of random ones.
    #[arg(long)]
    pub values: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub lists: usize,
    #[arg(long = "max-len", default_value_t = 50)]
    pub max_len: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct SatArgs {
    pub file: PathBuf,
    /// On SAT, write the model as a DIMACS `v` line.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

/// Machine-readable result of one subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Json,
    pub verdict: String,
    pub counts: Json,
    pub witnesses: Json,
    pub duration_ms: u64,
}

impl Report {
    pub(crate) fn new(command: &str, config: impl Serialize) -> Self {
        Report {
            tool: "implab",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config: serde_json::to_value(config).expect("configs serialize"),
            verdict: String::new(),
            counts: json!({}),
            witnesses: json!({}),
            duration_ms: 0,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A report plus the process exit code and summary lines.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
    pub summary: Vec<String>,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<implab_core::Error> for CliError {
    fn from(e: implab_core::Error) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub(crate) fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError(format!("{}: {e}", path.display()))
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli, budget: &Budget) -> CliResult<Outcome> {
    let start = Instant::now();
    let mut outcome = match &cli.command {
        Command::Arrow(a) => cmd_arrow(a, budget)?,
        Command::Ranksets(r) => cmd_ranksets(r)?,
        Command::Vickrey(v) => cmd_vickrey(v, budget)?,
        Command::Sat(s) => cmd_sat(s)?,
    };
    outcome.report.duration_ms = start.elapsed().as_millis() as u64;
    Ok(outcome)
}
