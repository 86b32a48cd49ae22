//! Command-line front end: exact counts, streaming enumeration, structure
//! validation and generation, covering diagrams, Brunnian constructions,
//! and link expressions. Structured results go to stdout, diagnostics to
//! stderr; exit code 1 flags domain failures, 2 usage errors.

use std::fs;
use std::io::{self, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use connective::dot::generic_graph_dot;
use connective::json::{GenericGraphJson, StatsReport, StructureJson};
use connective::{
    count_isomorphism_classes, count_stats_with_progress, enumerate_free, free_violation,
    iterated_brunnian, link_structure, parse_link_expr, realize_labeled, BrunnianTree,
    ConnectivityStructure, GroundSet, Subset,
};

#[derive(Parser)]
#[command(
    name = "connective",
    version,
    about = "Finite connectivity spaces: counts, enumeration, diagrams, and link expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count structures on n labeled points (exact, parallel)
    Count {
        /// Number of points (n >= 6 needs --stretch)
        #[arg(long)]
        n: u32,
        /// Report a single statistic instead of the full summary
        #[arg(long, value_enum)]
        what: Option<Stat>,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        /// Opt in to long runs and print a heartbeat on stderr
        #[arg(long)]
        stretch: bool,
    },
    /// Stream every structure on n labeled points, one JSON object per line
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = StreamFormat::Jsonl)]
        format: StreamFormat,
    },
    /// Close a generator family and print the resulting structure
    Generate {
        #[arg(long)]
        n: u32,
        /// Semicolon-separated sets of comma-separated points: "1,2;2,3"
        #[arg(long)]
        sets: String,
    },
    /// Validate a family: closure axiom or freeness
    #[command(group(ArgGroup::new("mode").required(true).args(["axiom", "free"])))]
    Check {
        /// Verify the closure axiom
        #[arg(long)]
        axiom: bool,
        /// Verify that every member stays irreducible in the closure
        #[arg(long)]
        free: bool,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        sets: String,
    },
    /// Covering diagram of the irreducible parts
    #[command(group(ArgGroup::new("source").required(true).args(["input", "n"])))]
    GenericGraph {
        /// Structure JSON file
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, requires = "sets")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        sets: Option<String>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Build the iterated Brunnian space of a tree such as "((.,.,.),.,.)"
    Brunnian {
        #[arg(long)]
        tree: String,
    },
    /// Evaluate link expressions such as "N(.,.,.)" or "S(.,N(.,.))"
    #[command(group(ArgGroup::new("exprs").required(true).args(["expr", "input"])))]
    Link {
        #[arg(long)]
        expr: Option<String>,
        /// File with one expression per line
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Structure)]
        emit: Emit,
    },
    /// Express a structure as a link expression, if its parts form a tree
    Realize {
        #[arg(long)]
        input: PathBuf,
    },
    /// Order of a structure (deepest nesting of its irreducible parts)
    Order {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Stat {
    S,
    C,
    K,
    F,
    T,
}

#[derive(Clone, Copy, ValueEnum)]
enum StreamFormat {
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Structure,
    Order,
}

#[derive(Serialize)]
struct CheckReport {
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct RealizeReport {
    expr: String,
    leaf_elements: Vec<u32>,
}

#[derive(Serialize)]
struct RealizeFailure {
    realizable: bool,
    reason: String,
}

#[derive(Serialize)]
struct OrderReport {
    n: u32,
    order: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn run(command: Command) -> CliResult {
    match command {
        Command::Count {
            n,
            what,
            jobs,
            stretch,
        } => cmd_count(n, what, jobs, stretch),
        Command::Enumerate { n, format } => cmd_enumerate(n, format),
        Command::Generate { n, sets } => cmd_generate(n, &sets),
        Command::Check {
            axiom,
            free: _,
            n,
            sets,
        } => cmd_check(axiom, n, &sets),
        Command::GenericGraph {
            input,
            n,
            sets,
            format,
        } => cmd_generic_graph(input.as_deref(), n, sets.as_deref(), format),
        Command::Brunnian { tree } => cmd_brunnian(&tree),
        Command::Link { expr, input, emit } => cmd_link(expr.as_deref(), input.as_deref(), emit),
        Command::Realize { input } => cmd_realize(&input),
        Command::Order { input } => cmd_order(&input),
    }
}

fn cmd_count(n: u32, what: Option<Stat>, jobs: Option<usize>, stretch: bool) -> CliResult {
    if n >= 6 && !stretch {
        eprintln!("error: --n {n} is a long run; pass --stretch to confirm");
        return Ok(ExitCode::from(2));
    }
    let ground = GroundSet::new(n)?;
    let jobs = jobs.unwrap_or_else(default_jobs).max(1);
    let started = Instant::now();
    let heartbeat = stretch.then(Heartbeat::start);
    let line = match what {
        Some(Stat::T) => {
            let classes = count_isomorphism_classes(ground, jobs)?;
            format!("{{\"n\":{n},\"t\":{classes}}}")
        }
        _ => {
            let ticker = heartbeat.as_ref().map(Heartbeat::callback);
            let stats = count_stats_with_progress(ground, jobs, |done, total| {
                if let Some(tick) = &ticker {
                    tick(done, total);
                }
            })?;
            let report = StatsReport::new(n, &stats);
            match what {
                None => report.to_json(),
                Some(Stat::S) => format!("{{\"n\":{n},\"s\":{}}}", report.s),
                Some(Stat::C) => format!("{{\"n\":{n},\"c\":{}}}", report.c),
                Some(Stat::K) => format!("{{\"n\":{n},\"k\":{}}}", report.k),
                Some(Stat::F) => format!("{{\"n\":{n},\"f\":{}}}", report.f),
                Some(Stat::T) => unreachable!(),
            }
        }
    };
    if let Some(hb) = heartbeat {
        hb.stop();
    }
    println!("{line}");
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    Ok(ExitCode::SUCCESS)
}

/// Progress reporter for long runs: a thread prints branch completion to
/// stderr every few seconds until stopped.
struct Heartbeat {
    done: Arc<AtomicU64>,
    total: Arc<AtomicU64>,
    stopped: Arc<AtomicBool>,
    handle: std::thread::JoinHandle<()>,
}

impl Heartbeat {
    fn start() -> Self {
        let done = Arc::new(AtomicU64::new(0));
        let total = Arc::new(AtomicU64::new(0));
        let stopped = Arc::new(AtomicBool::new(false));
        let handle = {
            let done = Arc::clone(&done);
            let total = Arc::clone(&total);
            let stopped = Arc::clone(&stopped);
            std::thread::spawn(move || loop {
                for _ in 0..50 {
                    std::thread::sleep(Duration::from_millis(100));
                    if stopped.load(Ordering::Relaxed) {
                        return;
                    }
                }
                let t = total.load(Ordering::Relaxed);
                if t > 0 {
                    eprintln!(
                        "progress: {}/{} first-level branches",
                        done.load(Ordering::Relaxed),
                        t
                    );
                }
            })
        };
        Heartbeat {
            done,
            total,
            stopped,
            handle,
        }
    }

    fn callback(&self) -> impl Fn(u64, u64) + Sync {
        let done = Arc::clone(&self.done);
        let total = Arc::clone(&self.total);
        move |d, t| {
            done.store(d, Ordering::Relaxed);
            total.store(t, Ordering::Relaxed);
        }
    }

    fn stop(self) {
        self.stopped.store(true, Ordering::Relaxed);
        let _ = self.handle.join();
    }
}

fn cmd_enumerate(n: u32, _format: StreamFormat) -> CliResult {
    let ground = GroundSet::new(n)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failure: Option<io::Error> = None;
    enumerate_free(ground, |family| {
        let json = StructureJson::from_structure(&family.to_structure()).to_json();
        match writeln!(out, "{json}") {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                // a closed pipe just ends the stream
                if e.kind() != io::ErrorKind::BrokenPipe {
                    failure = Some(e);
                }
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(ExitCode::SUCCESS),
    }
}

fn cmd_generate(n: u32, sets: &str) -> CliResult {
    let ground = GroundSet::new(n)?;
    let generators = parse_sets(sets)?;
    let s = ConnectivityStructure::generate(ground, &generators)?;
    println!("{}", StructureJson::from_structure(&s).to_json());
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(axiom: bool, n: u32, sets: &str) -> CliResult {
    let ground = GroundSet::new(n)?;
    let family = parse_sets(sets)?;
    let reason = if axiom {
        match ConnectivityStructure::new(ground, &family) {
            Ok(_) => None,
            Err(err @ connective::Error::AxiomViolation { .. }) => Some(err.to_string()),
            Err(err) => return Err(err.into()),
        }
    } else {
        free_violation(ground, &family)?.map(|member| format!("member {member} reducible"))
    };
    let report = CheckReport {
        ok: reason.is_none(),
        reason,
    };
    println!("{}", serde_json::to_string(&report)?);
    if report.ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_generic_graph(
    input: Option<&Path>,
    n: Option<u32>,
    sets: Option<&str>,
    format: GraphFormat,
) -> CliResult {
    let (structure, labels) = match input {
        Some(path) => {
            let parsed = StructureJson::from_json(&fs::read_to_string(path)?)?;
            let s = parsed.to_structure()?;
            (s, parsed.labels)
        }
        None => {
            let ground = GroundSet::new(n.expect("clap enforces the source group"))?;
            let family = parse_sets(sets.unwrap_or_default())?;
            (ConnectivityStructure::new(ground, &family)?, None)
        }
    };
    let graph = structure.generic_graph();
    match format {
        GraphFormat::Dot => print!("{}", generic_graph_dot(&graph, labels.as_deref())),
        GraphFormat::Json => println!(
            "{}",
            GenericGraphJson::new(structure.size(), &graph).to_json()
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_brunnian(tree: &str) -> CliResult {
    let tree: BrunnianTree = tree.parse()?;
    let s = iterated_brunnian(&tree)?;
    println!("{}", StructureJson::from_structure(&s).to_json());
    Ok(ExitCode::SUCCESS)
}

fn cmd_link(expr: Option<&str>, input: Option<&Path>, emit: Emit) -> CliResult {
    let sources: Vec<String> = match (expr, input) {
        (Some(e), None) => vec![e.to_string()],
        (None, Some(path)) => fs::read_to_string(path)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect(),
        _ => unreachable!("clap enforces the exprs group"),
    };
    for source in sources {
        let parsed = parse_link_expr(&source)?;
        let s = link_structure(&parsed)?;
        match emit {
            Emit::Structure => println!("{}", StructureJson::from_structure(&s).to_json()),
            Emit::Order => println!(
                "{}",
                serde_json::to_string(&OrderReport {
                    n: s.size(),
                    order: s.order(),
                })?
            ),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_realize(input: &Path) -> CliResult {
    let s = StructureJson::from_json(&fs::read_to_string(input)?)?.to_structure()?;
    match realize_labeled(&s) {
        Ok((expr, leaf_elements)) => {
            let report = RealizeReport {
                expr: expr.to_string(),
                leaf_elements,
            };
            println!("{}", serde_json::to_string(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Err(witness) => {
            let report = RealizeFailure {
                realizable: false,
                reason: witness.to_string(),
            };
            println!("{}", serde_json::to_string(&report)?);
            eprintln!("not realizable: {witness}");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_order(input: &Path) -> CliResult {
    let s = StructureJson::from_json(&fs::read_to_string(input)?)?.to_structure()?;
    println!(
        "{}",
        serde_json::to_string(&OrderReport {
            n: s.size(),
            order: s.order(),
        })?
    );
    Ok(ExitCode::SUCCESS)
}

/// Parses "1,2;2,3;1,2,3" into subsets; an empty string is an empty family.
fn parse_sets(text: &str) -> connective::Result<Vec<Subset>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(';')
        .map(|part| part.parse::<Subset>())
        .collect()
}

fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
}
