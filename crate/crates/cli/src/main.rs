use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tetraham::gadgets::{absorb, find_absorber, is_absorber, Absorber, DonationPath};
use tetraham::generators::{complete, complete_partite, conditioned_sampler, extremal_construction, random_threegraph};
use tetraham::io::{graph_to_string, read_three_graph};
use tetraham::report::{
    analyze, check_path_system, demo_absorb, demo_configurations, mine_threshold, rows_to_csv, AnalyzeOptions,
    DemoLimits,
};
use tetraham::search::{find_squared_tight_hamilton_cycle, find_squared_tight_path, SearchOutcome};
use tetraham::tight::phi_colouring;
use tetraham::verify::{parse_tags, verify, LemmaId, Mode, VerifyOptions};
use tetraham::walks::TripleOrdered;
use tetraham::{Error, ThreeGraph, VertexSet};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(Error::InsufficientAbsorbers(_)) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Accepts `1000`, `10^9` or `1e9`.
fn parse_budget(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.parse().map_err(|_| format!("bad base in {s:?}"))?;
        let e: u32 = e.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        return b.checked_pow(e).ok_or_else(|| format!("{s} overflows"));
    }
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(f) if f.is_finite() && f >= 0.0 && f.fract() == 0.0 && f < u64::MAX as f64 => Ok(f as u64),
        _ => Err(format!("{s:?} is not a budget")),
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("{t:?} is not a vertex")))
        .collect()
}

fn parse_tuple(s: &str) -> Result<[usize; 4], String> {
    parse_list(s)?
        .try_into()
        .map_err(|v: Vec<usize>| format!("expected four vertices, got {}", v.len()))
}

#[derive(Parser)]
#[command(name = "tetraham", version, about = "Tetrahedral structure and squared tight paths in 3-graphs")]
struct Cli {
    /// Worker threads; 1 also makes every search run sequentially.
    #[arg(long, global = true, env = "TETRAHAM_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated 3-graph in the text format.
    Gen(GenArgs),
    /// Summarise a graph and run checks on it.
    Analyze(AnalyzeArgs),
    /// Run the named checks; exits 1 if a hypothesis holds and its conclusion fails.
    Verify(VerifyArgs),
    #[command(subcommand)]
    Search(SearchCommand),
    #[command(subcommand)]
    Absorber(AbsorberCommand),
    /// CSV of sampled graphs across codegree targets.
    Mine(MineArgs),
    /// Build gadgets, chain them, absorb a leftover set and print the final path.
    DemoAbsorb(DemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    #[value(alias = "extremal")]
    Pikhurko,
    Complete,
    Partite,
    Random,
    Conditioned,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for `random`.
    #[arg(long)]
    p: Option<f64>,
    /// Codegree target for `conditioned`.
    #[arg(long)]
    d: Option<usize>,
    /// Part sizes for `partite`, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the part assignment of `pikhurko` as JSON.
    #[arg(long)]
    parts: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Check tags such as LEM_1_4 or LEM_3_8; repeat or comma-separate.
    #[arg(long = "lemma", value_delimiter = ',')]
    lemmas: Vec<String>,
    #[arg(long, value_enum, default_value = "assert")]
    mode: ModeArg,
    #[arg(long, value_parser = parse_budget, default_value = "10^9")]
    budget: u64,
    /// Seeds the random pair families.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Assert,
    Scan,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[command(flatten)]
    checks: CheckArgs,
    /// Include per-stage wall-clock times.
    #[arg(long)]
    timings: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[command(flatten)]
    checks: CheckArgs,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Exhaustive search for the square of a tight Hamilton cycle.
    HamSquare {
        file: PathBuf,
        #[arg(long, value_parser = parse_budget, default_value = "10^9")]
        budget: u64,
    },
    /// A squared tight path between two ordered edges.
    Connect {
        file: PathBuf,
        #[arg(long)]
        from: TripleOrdered,
        #[arg(long)]
        to: TripleOrdered,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(long, value_parser = parse_budget, default_value = "10^7")]
        budget: u64,
        /// File of vertex ids the path must avoid.
        #[arg(long)]
        forbid: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AbsorberCommand {
    /// Build an absorber for a 4-tuple.
    Find {
        file: PathBuf,
        #[arg(long, value_parser = parse_tuple)]
        target: [usize; 4],
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = parse_budget, default_value = "10^7")]
        budget: u64,
    },
    /// Check a labelled absorber (JSON) against a 4-tuple.
    Check {
        file: PathBuf,
        #[arg(long)]
        absorber: PathBuf,
        #[arg(long, value_parser = parse_tuple)]
        target: [usize; 4],
    },
    /// Rewrite gadget paths so that they also cover a leftover set.
    Absorb {
        file: PathBuf,
        /// JSON array of absorbers.
        #[arg(long)]
        absorbers: PathBuf,
        /// JSON donation path.
        #[arg(long)]
        donation: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        leftover: Vec<usize>,
    },
}

#[derive(Args)]
struct MineArgs {
    #[arg(long)]
    n: usize,
    /// Codegree targets, comma separated.
    #[arg(long, value_delimiter = ',')]
    deltas: Vec<usize>,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    file: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 16)]
    attempts: usize,
    #[arg(long, value_parser = parse_budget, default_value = "2^20")]
    budget: u64,
    #[arg(long, default_value_t = 8)]
    connector_cap: usize,
}

fn require_seed(seed: Option<u64>, what: &str) -> CliResult<u64> {
    seed.ok_or_else(|| CliError::Usage(format!("{what} is randomized; pass --seed")))
}

fn require<T>(v: Option<T>, flag: &str, what: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{what} needs {flag}")))
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_json(v: &impl serde::Serialize, output: Option<&Path>) -> CliResult<()> {
    let mut s = serde_json::to_string_pretty(v).map_err(Error::from)?;
    s.push('\n');
    emit(&s, output)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

fn verify_options(c: &CheckArgs, sequential: bool) -> CliResult<(Vec<LemmaId>, VerifyOptions)> {
    let mut ids = Vec::new();
    for tag in &c.lemmas {
        ids.extend(parse_tags(tag)?);
    }
    let opts = VerifyOptions {
        mode: match c.mode {
            ModeArg::Assert => Mode::Assert,
            ModeArg::Scan => Mode::Scan,
        },
        budget: c.budget,
        sequential,
        seed: c.seed,
        ..VerifyOptions::default()
    };
    Ok((ids, opts))
}

fn gen(a: GenArgs) -> CliResult<u8> {
    let n = || require(a.n, "--n", "this generator");
    let h: ThreeGraph = match a.kind {
        GenKind::Pikhurko => {
            let (h, spec) = extremal_construction(n()?)?;
            if let Some(p) = &a.parts {
                emit_json(&spec, Some(p))?;
            }
            h
        }
        GenKind::Complete => complete(n()?)?,
        GenKind::Partite => complete_partite(&a.sizes)?,
        GenKind::Random => {
            let seed = require_seed(a.seed, "gen random")?;
            random_threegraph(n()?, require(a.p, "--p", "random")?, seed)?
        }
        GenKind::Conditioned => {
            let seed = require_seed(a.seed, "gen conditioned")?;
            conditioned_sampler(n()?, require(a.d, "--d", "conditioned")?, seed)?
        }
    };
    emit(&graph_to_string(h.as_uniform()), a.output.as_deref())?;
    Ok(0)
}

fn analyze_cmd(a: AnalyzeArgs, sequential: bool) -> CliResult<u8> {
    let h = read_three_graph(&a.file)?;
    let (ids, verify) = verify_options(&a.checks, sequential)?;
    let opts = AnalyzeOptions {
        lemmas: if ids.is_empty() { LemmaId::ALL.to_vec() } else { ids },
        verify,
        timings: a.timings,
    };
    let report = analyze(&h, &opts)?;
    emit_json(&report, a.output.as_deref())?;
    Ok(0)
}

fn verify_cmd(a: VerifyArgs, sequential: bool) -> CliResult<u8> {
    let h = read_three_graph(&a.file)?;
    let (ids, opts) = verify_options(&a.checks, sequential)?;
    if ids.is_empty() {
        return Err(CliError::Usage("verify needs at least one --lemma".into()));
    }
    let pc = phi_colouring(&h)?;
    let reports = verify(&pc, &ids, &opts);
    emit_json(&reports, None)?;
    Ok(if reports.iter().any(|r| r.is_violation()) {
        EXIT_FAILURE
    } else if reports.iter().any(|r| r.budget_exhausted) {
        EXIT_BUDGET
    } else {
        0
    })
}

fn outcome_json<T: serde::Serialize>(o: &SearchOutcome<T>, key: &str) -> (Value, u8) {
    match o {
        SearchOutcome::Found(t) => (json!({"result": "found", "exhaustive": false, key: t}), 0),
        SearchOutcome::None => (json!({"result": "none", "exhaustive": true}), 0),
        SearchOutcome::BudgetExhausted => (json!({"result": "budget_exhausted", "exhaustive": false}), EXIT_BUDGET),
    }
}

fn search_cmd(c: SearchCommand, sequential: bool) -> CliResult<u8> {
    let (v, code) = match c {
        SearchCommand::HamSquare { file, budget } => {
            let h = read_three_graph(file)?;
            outcome_json(&find_squared_tight_hamilton_cycle(&h, budget, sequential)?, "cycle")
        }
        SearchCommand::Connect {
            file,
            from,
            to,
            max_vertices,
            budget,
            forbid,
        } => {
            let h = read_three_graph(file)?;
            let mut forbidden = VertexSet::empty(h.n());
            if let Some(p) = forbid {
                for v in parse_list(&fs::read_to_string(p)?).map_err(CliError::Usage)? {
                    if v >= h.n() {
                        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() }.into());
                    }
                    forbidden.insert(v);
                }
            }
            outcome_json(
                &find_squared_tight_path(&h, &from, &to, &forbidden, max_vertices, budget)?,
                "path",
            )
        }
    };
    emit_json(&v, None)?;
    Ok(code)
}

fn absorber_cmd(c: AbsorberCommand) -> CliResult<u8> {
    match c {
        AbsorberCommand::Find {
            file,
            target,
            seed,
            budget,
        } => {
            let seed = require_seed(seed, "absorber find")?;
            let h = read_three_graph(file)?;
            let out = find_absorber(&h, &target, budget, seed)?;
            let (v, code) = outcome_json(&out, "absorber");
            emit_json(&v, None)?;
            Ok(code)
        }
        AbsorberCommand::Check { file, absorber, target } => {
            let h = read_three_graph(file)?;
            let a: Absorber = read_json(&absorber)?;
            let ok = is_absorber(&h, &a, &target)?;
            emit_json(&json!({ "is_absorber": ok }), None)?;
            Ok(if ok { 0 } else { EXIT_FAILURE })
        }
        AbsorberCommand::Absorb {
            file,
            absorbers,
            donation,
            leftover,
        } => {
            let h = read_three_graph(file)?;
            let absorbers: Vec<Absorber> = read_json(&absorbers)?;
            let donation: Option<DonationPath> = donation.map(|p| read_json(&p)).transpose()?;
            let r = absorb(&h, donation.as_ref(), &absorbers, &leftover)?;
            let check = check_path_system(&h, &r.before, &r.after, &leftover);
            let passed = check.passed();
            emit_json(&json!({ "absorption": r, "check": check }), None)?;
            Ok(if passed { 0 } else { EXIT_FAILURE })
        }
    }
}

fn mine_cmd(a: MineArgs) -> CliResult<u8> {
    let seed = require_seed(a.seed, "mine")?;
    if a.deltas.is_empty() {
        return Err(CliError::Usage("mine needs --deltas".into()));
    }
    let rows = mine_threshold(a.n, &a.deltas, a.samples, seed)?;
    emit(&rows_to_csv(&rows), a.output.as_deref())?;
    Ok(0)
}

fn demo_cmd(a: DemoArgs) -> CliResult<u8> {
    let seed = require_seed(a.seed, "demo-absorb")?;
    let h = read_three_graph(&a.file)?;
    let limits = DemoLimits {
        budget: a.budget,
        connector_cap: a.connector_cap,
        attempts: a.attempts,
        ..DemoLimits::default()
    };
    let report = demo_absorb(&h, &demo_configurations(h.n()), &limits, seed)?;
    emit_json(&report, None)?;
    Ok(if report.succeeded() { 0 } else { EXIT_FAILURE })
}

fn run(cli: Cli) -> CliResult<u8> {
    let threads = cli.threads.filter(|&t| t > 0);
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let sequential = threads == Some(1);
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Analyze(a) => analyze_cmd(a, sequential),
        Command::Verify(a) => verify_cmd(a, sequential),
        Command::Search(c) => search_cmd(c, sequential),
        Command::Absorber(c) => absorber_cmd(c),
        Command::Mine(a) => mine_cmd(a),
        Command::DemoAbsorb(a) => demo_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("10^9"), Ok(1_000_000_000));
        assert_eq!(parse_budget("1e9"), Ok(1_000_000_000));
        assert_eq!(parse_budget("2^20"), Ok(1 << 20));
        assert_eq!(parse_budget("12345"), Ok(12345));
        assert!(parse_budget("1.5").is_err());
        assert!(parse_budget("-3").is_err());
        assert!(parse_budget("10^30").is_err());
    }

    #[test]
    fn tuples_and_lists() {
        assert_eq!(parse_tuple("1,2,3,4"), Ok([1, 2, 3, 4]));
        assert!(parse_tuple("1,2,3").is_err());
        assert_eq!(parse_list("4 5,6\n7"), Ok(vec![4, 5, 6, 7]));
        assert_eq!(parse_list(""), Ok(vec![]));
    }
}
