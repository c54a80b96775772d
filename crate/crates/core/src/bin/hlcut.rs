//! Command-line front end: generate graphs, run the solvers and verifiers,
//! print reproduction tables, write JSON reports.
//!
//! Exit status: 0 all checks pass, 1 verified mismatch or counterexample,
//! 2 usage error, 3 search budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use hlcut::builder::{self, ConstructionTrace, HlGraph};
use hlcut::kappa::{kappa_sh_exact, KappaOutcome};
use hlcut::lemma::{self, LabOptions, LemmaId};
use hlcut::report::{write_reports, IncompleteCut, Report};
use hlcut::solver::{self, theorem_value, Method, SolverOptions, DEFAULT_GATE, HARD_GATE};
use hlcut::{Error, Graph};

#[derive(Parser)]
#[command(
    name = "hlcut",
    version,
    about = "Exact h-super edge-connectivity of hypercube-like graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph file and its construction trace.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compute the h-super edge-connectivity of a graph file.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        h: Level,
        #[arg(long, value_enum, default_value = "exhaustive")]
        method: MethodArg,
        #[command(flatten)]
        run: RunArgs,
        /// Seconds before the search gives up.
        #[arg(long)]
        budget: Option<f64>,
        /// Fail unless every value equals 2^h (n - h).
        #[arg(long)]
        expect_theorem: bool,
    },
    /// Check one of the bounds (3.2, 3.5, 3.7) or the theorem (thm).
    Verify {
        #[arg(long, value_parser = parse_lemma)]
        lemma: LemmaId,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        h: Level,
        #[arg(long, value_enum, default_value = "exhaustive")]
        method: MethodArg,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Decide the h-super vertex-connectivity by brute force.
    Kappa {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        h: Level,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON report destination.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Lift the default order gate of 32 up to 64.
    #[arg(long)]
    allow_large: bool,
}

impl RunArgs {
    fn gate(&self) -> usize {
        if self.allow_large {
            HARD_GATE
        } else {
            DEFAULT_GATE
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hypercube,
    Random,
    Fig1,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    #[value(alias = "bnb")]
    BranchAndBound,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exhaustive => Method::Exhaustive,
            MethodArg::BranchAndBound => Method::BranchAndBound,
        }
    }
}

#[derive(Clone, Copy)]
enum Level {
    All,
    One(usize),
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Level::All);
        }
        s.parse()
            .map(Level::One)
            .map_err(|_| format!("expected a level or \"all\", got {s:?}"))
    }
}

fn parse_lemma(s: &str) -> Result<LemmaId, String> {
    LemmaId::from_cli(s).ok_or_else(|| format!("unknown lemma {s:?} (expected 3.2, 3.5, 3.7 or thm)"))
}

/// Terminal state of a subcommand.
enum Status {
    Pass,
    Mismatch,
    Incomplete,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        Ok(Status::Incomplete) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Status, Error> {
    match command {
        Command::Generate {
            kind,
            n,
            seed,
            out,
            trace,
        } => generate(kind, n, seed, &out, trace.as_deref()),
        Command::Solve {
            graph,
            h,
            method,
            run,
            budget,
            expect_theorem,
        } => solve(&graph, h, method.into(), &run, budget, expect_theorem),
        Command::Verify {
            lemma,
            trace,
            h,
            method,
            run,
            budget,
        } => verify(lemma, &trace, h, method.into(), &run, budget),
        Command::Kappa { graph, h, run } => kappa(&graph, h, &run),
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn generate(
    kind: Kind,
    n: Option<usize>,
    seed: Option<u64>,
    out: &Path,
    trace: Option<&Path>,
) -> Result<Status, Error> {
    let need_n = || n.ok_or_else(|| usage("--n is required for this kind"));
    let hl = match kind {
        Kind::Hypercube => builder::hypercube(need_n()?)?,
        Kind::Random => {
            let seed = seed.ok_or_else(|| usage("--seed is required for random graphs"))?;
            builder::random_hl(need_n()?, seed)?
        }
        Kind::Fig1 => {
            if n.is_some_and(|n| n != 4) {
                return Err(usage("the fig1 graph has n = 4"));
            }
            builder::fig1_graph()
        }
    };
    fs::write(out, hl.graph().to_text())?;
    if let Some(path) = trace {
        fs::write(path, hl.trace().to_json())?;
    }
    println!(
        "{}: {} vertices, {} edges",
        hl.descriptor(),
        hl.graph().order(),
        hl.graph().size()
    );
    Ok(Status::Pass)
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    Graph::from_text(&fs::read_to_string(path)?)
}

/// `n` when the graph is `n`-regular of order `2^n`.
fn hl_dimension(g: &Graph) -> Option<usize> {
    g.regular_degree()
        .filter(|&d| d < usize::BITS as usize && g.order() == 1 << d)
}

fn budget_of(secs: Option<f64>) -> Result<Option<Duration>, Error> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|e| usage(format!("--budget: {e}"))))
        .transpose()
}

fn write_out(out: Option<&Path>, reports: &[Report]) -> Result<(), Error> {
    if let Some(path) = out {
        fs::write(path, write_reports(reports))?;
    }
    Ok(())
}

fn solve(
    path: &Path,
    h: Level,
    method: Method,
    run: &RunArgs,
    budget: Option<f64>,
    expect_theorem: bool,
) -> Result<Status, Error> {
    let g = read_graph(path)?;
    let n = hl_dimension(&g);
    if expect_theorem && n.is_none() {
        return Err(usage("--expect-theorem needs an n-regular graph of order 2^n"));
    }
    let levels: Vec<usize> = match h {
        Level::One(h) => vec![h],
        Level::All => match n {
            Some(n) => (0..n).collect(),
            None => (0..=g.min_degree()).collect(),
        },
    };
    let opts = SolverOptions {
        method,
        budget: budget_of(budget)?,
        threads: run.threads,
        gate: run.gate(),
    };

    let mut reports = Vec::new();
    let mut status = Status::Pass;
    println!("h  value  formula  match?");
    for h in levels {
        let formula = n.filter(|&n| h < n).map(|n| theorem_value(n, h));
        let fmt_formula = formula.map_or("-".to_string(), |f| f.to_string());
        match solver::lambda_sh_exact(&g, h, &opts) {
            Ok(outcome) => {
                let value = outcome.value();
                let shown = value.map_or("nonexistent".to_string(), |v| v.to_string());
                let verdict = match formula {
                    Some(f) if value == Some(f) => "yes",
                    Some(_) => {
                        if expect_theorem {
                            status = Status::Mismatch;
                        }
                        "no"
                    }
                    None => "-",
                };
                println!("{h}  {shown}  {fmt_formula}  {verdict}");
                reports.push(Report::Cut(outcome));
            }
            Err(Error::Incomplete {
                budget,
                elapsed,
                best,
            }) => {
                let best_value = best.as_ref().map_or("none".to_string(), |b| b.value.to_string());
                println!("{h}  incomplete(best {best_value})  {fmt_formula}  -");
                reports.push(Report::Incomplete(IncompleteCut {
                    h,
                    budget,
                    elapsed,
                    best: best.map(|b| *b),
                }));
                if !matches!(status, Status::Mismatch) {
                    status = Status::Incomplete;
                }
            }
            Err(e) => return Err(e),
        }
    }
    write_out(run.out.as_deref(), &reports)?;
    Ok(status)
}

fn verify(
    id: LemmaId,
    trace_path: &Path,
    h: Level,
    method: Method,
    run: &RunArgs,
    budget: Option<f64>,
) -> Result<Status, Error> {
    let trace = ConstructionTrace::from_json(&fs::read_to_string(trace_path)?)?;
    let descriptor = trace_path
        .file_stem()
        .map_or("trace".into(), |s| s.to_string_lossy().into_owned());
    let hl = HlGraph::from_trace(trace, descriptor)?;
    let range = id.levels(hl.dimension());
    let levels: Vec<usize> = match h {
        Level::All => range.collect(),
        Level::One(h) if range.contains(&h) => vec![h],
        Level::One(h) => {
            return Err(Error::LevelOutOfRange {
                h,
                min: range.start,
                max: range.end.saturating_sub(1),
            })
        }
    };
    let lab = LabOptions {
        threads: run.threads,
        gate: run.gate(),
    };
    let solver_opts = SolverOptions {
        method,
        budget: budget_of(budget)?,
        threads: run.threads,
        gate: run.gate(),
    };

    let mut reports = Vec::new();
    let mut status = Status::Pass;
    println!("lemma  h  holds  checked  tight");
    for h in levels {
        let verdict = match id {
            LemmaId::MinOrder => lemma::check_lemma_32(&hl, h, &lab),
            LemmaId::OrderPlusBoundary => lemma::check_lemma_35(&hl, h, &lab),
            LemmaId::BipartitionBoundary => lemma::check_lemma_37(&hl, h, &lab),
            LemmaId::Theorem => lemma::check_theorem(&hl, h, &solver_opts),
        };
        let verdict = match verdict {
            Ok(v) => v,
            Err(Error::Incomplete {
                budget,
                elapsed,
                best,
            }) => {
                println!("{}  {h}  incomplete  -  -", cli_name(id));
                reports.push(Report::Incomplete(IncompleteCut {
                    h,
                    budget,
                    elapsed,
                    best: best.map(|b| *b),
                }));
                if !matches!(status, Status::Mismatch) {
                    status = Status::Incomplete;
                }
                continue;
            }
            Err(e) => return Err(e),
        };
        println!(
            "{}  {h}  {}  {}  {}",
            cli_name(id),
            if verdict.holds { "yes" } else { "no" },
            verdict.subsets_checked,
            verdict.tight_witnesses
        );
        if !verdict.holds {
            status = Status::Mismatch;
        }
        reports.push(Report::Lemma(verdict));
    }
    write_out(run.out.as_deref(), &reports)?;
    Ok(status)
}

fn cli_name(id: LemmaId) -> &'static str {
    match id {
        LemmaId::MinOrder => "3.2",
        LemmaId::OrderPlusBoundary => "3.5",
        LemmaId::BipartitionBoundary => "3.7",
        LemmaId::Theorem => "thm",
    }
}

fn kappa(path: &Path, h: Level, run: &RunArgs) -> Result<Status, Error> {
    let g = read_graph(path)?;
    let levels: Vec<usize> = match h {
        Level::One(h) => vec![h],
        Level::All => (0..=g.max_degree()).collect(),
    };
    let mut reports = Vec::new();
    println!("h  outcome  value  checked");
    for h in levels {
        let r = kappa_sh_exact(&g, h, run.gate())?;
        match &r.outcome {
            KappaOutcome::Exists { value, .. } => {
                println!("{h}  exists  {value}  {}", r.subsets_checked)
            }
            KappaOutcome::Nonexistent => println!("{h}  nonexistent  -  {}", r.subsets_checked),
        }
        reports.push(Report::Kappa(r));
    }
    write_out(run.out.as_deref(), &reports)?;
    Ok(Status::Pass)
}
