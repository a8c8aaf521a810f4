//! `e4c`: validate, solve, certify and generate planar instances.
//!
//! Exit codes: 0 success, 1 the checked property fails, 2 usage or input
//! error, 3 internal error.

mod failure;
mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use e4c_core::engine::{certify, solve, SolveConfig};
use e4c_core::instances::format::{parse_cycle, parse_embedding, serialize_cycle, serialize_graph};
use e4c_core::instances::{gen_inserted_antiprism, named_graph, GraphName};
use e4c_core::oracle::{longest_cycle_exact, search_oi3_cycle, OracleConfig};
use e4c_core::planar::check_essentially_4_connected;
use e4c_core::{CycleSeq, PlanarEmbedding};

use failure::Failure;
use output::{Format, Record};

#[derive(Debug, Parser)]
#[command(name = "e4c", version, about = "Long cycles in essentially 4-connected planar graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Kv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report connectivity and the essential 4-connectivity verdict.
    Validate { file: PathBuf },
    /// Solve and print the cycle with its certificate.
    FindCycle {
        file: PathBuf,
        /// Start from this OI3-cycle instead of searching for one.
        #[arg(long)]
        initial: Option<PathBuf>,
        /// Print one line per engine step.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Audit a given cycle.
    Certify { file: PathBuf, cycle: PathBuf },
    /// Exact searches for small graphs.
    Oracle {
        #[command(subcommand)]
        search: OracleSearch,
    },
    /// Write instance files.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
}

#[derive(Debug, Subcommand)]
enum OracleSearch {
    /// Circumference with a longest cycle.
    Circ {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Some OI3-cycle, if one exists.
    Oi3 {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Debug, Subcommand)]
enum GenFamily {
    /// Capped antiprism on 2k + 2 vertices with every face stacked.
    Antiprism {
        k: usize,
        /// Writes PREFIX.graph and PREFIX.cycle (default `antiprism-K`).
        #[arg(long)]
        out: Option<String>,
    },
    /// A named small graph.
    Named {
        #[arg(value_enum)]
        name: NameArg,
        /// Writes PREFIX.graph (default NAME).
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NameArg {
    K4,
    Octahedron,
    Cube,
    Wheel5,
    Wheel6,
    Tritower,
    Icosahedron,
}

impl From<NameArg> for GraphName {
    fn from(n: NameArg) -> Self {
        match n {
            NameArg::K4 => GraphName::K4,
            NameArg::Octahedron => GraphName::Octahedron,
            NameArg::Cube => GraphName::Cube,
            NameArg::Wheel5 => GraphName::Wheel5,
            NameArg::Wheel6 => GraphName::Wheel6,
            NameArg::Tritower => GraphName::Tritower,
            NameArg::Icosahedron => GraphName::Icosahedron,
        }
    }
}

#[derive(Debug, Args)]
struct Limits {
    /// Largest n for the exact longest-cycle search.
    #[arg(long)]
    max_n_longest: Option<usize>,
    /// Largest n for the OI3-cycle search.
    #[arg(long)]
    max_n_oi3: Option<usize>,
    /// Wall-clock budget for a search, in milliseconds.
    #[arg(long)]
    time_budget_ms: Option<u64>,
}

impl Limits {
    fn config(&self) -> Result<OracleConfig, Failure> {
        let mut cfg = OracleConfig::default();
        if let Some(n) = self.max_n_longest {
            cfg.max_n_longest = n;
        }
        if let Some(n) = self.max_n_oi3 {
            cfg.max_n_oi3 = n;
        }
        cfg.time_budget = self.time_budget_ms.map(Duration::from_millis);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<PlanarEmbedding, Failure> {
    parse_embedding(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_cycle(path: &Path, emb: &PlanarEmbedding) -> Result<CycleSeq, Failure> {
    parse_cycle(&read(path)?, emb).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &str, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn validate(file: &Path) -> Result<(Record, bool), Failure> {
    let emb = load_graph(file)?;
    let v = check_essentially_4_connected(&emb);
    let mut r = Record::new();
    r.count("n", emb.vertex_count());
    r.count("m", emb.edge_count());
    r.count("vertex_connectivity", v.vertex_connectivity);
    r.flag("three_connected", v.three_connected);
    r.flag("essentially_4_connected", v.essentially_4_connected);
    r.list("witness", v.witness.as_deref().unwrap_or_default());
    Ok((r, v.essentially_4_connected))
}

fn find_cycle(
    file: &Path,
    initial: Option<&Path>,
    trace: bool,
    limits: &Limits,
) -> Result<(Record, bool), Failure> {
    let emb = load_graph(file)?;
    let initial = initial.map(|p| load_cycle(p, &emb)).transpose()?;
    let cfg = SolveConfig { oracle: limits.config()? };
    let sol = solve(&emb, initial.as_ref(), &cfg).map_err(|e| Failure::engine(e, &emb, &cfg))?;
    let mut r = Record::new();
    r.list("cycle", sol.cycle.vertices());
    r.count("length", sol.cycle.len());
    r.certificate(&sol.certificate);
    r.count("iterations", sol.trace.iterations);
    if trace {
        r.steps(&sol.trace.steps);
    }
    Ok((r, sol.certificate.is_valid()))
}

fn certify_cycle(file: &Path, cycle: &Path) -> Result<(Record, bool), Failure> {
    let emb = load_graph(file)?;
    let cycle = load_cycle(cycle, &emb)?;
    let cert = certify(&emb, &cycle).map_err(|e| Failure::engine(e, &emb, &SolveConfig::default()))?;
    let mut r = Record::new();
    r.certificate(&cert);
    Ok((r, cert.is_valid()))
}

fn oracle(search: &OracleSearch) -> Result<(Record, bool), Failure> {
    let mut r = Record::new();
    match search {
        OracleSearch::Circ { file, limits } => {
            let emb = load_graph(file)?;
            let (circ, cycle) = longest_cycle_exact(&emb, &limits.config()?)?;
            r.count("circumference", circ);
            r.list("cycle", cycle.vertices());
            Ok((r, true))
        }
        OracleSearch::Oi3 { file, limits } => {
            let emb = load_graph(file)?;
            let found = search_oi3_cycle(&emb, &limits.config()?)?;
            r.flag("found", found.is_some());
            if let Some(c) = &found {
                r.list("cycle", c.vertices());
                r.count("length", c.len());
            }
            Ok((r, found.is_some()))
        }
    }
}

fn generate(family: &GenFamily) -> Result<(Record, bool), Failure> {
    let mut r = Record::new();
    match family {
        GenFamily::Antiprism { k, out } => {
            let inst = gen_inserted_antiprism(*k)?;
            let prefix = out.clone().unwrap_or_else(|| format!("antiprism-{k}"));
            let (graph, cycle) = (format!("{prefix}.graph"), format!("{prefix}.cycle"));
            write(&graph, &serialize_graph(inst.embedding.table()))?;
            write(&cycle, &serialize_cycle(&inst.initial_cycle))?;
            r.text("graph", &graph);
            r.text("cycle", &cycle);
            r.count("n", inst.vertex_count());
            r.count("initial_length", inst.initial_cycle.len());
        }
        GenFamily::Named { name, out } => {
            let g = named_graph((*name).into())?;
            let prefix = out.clone().unwrap_or_else(|| g.name.to_string());
            let graph = format!("{prefix}.graph");
            write(&graph, &serialize_graph(g.embedding.table()))?;
            r.text("graph", &graph);
            r.count("n", g.embedding.vertex_count());
        }
    }
    Ok((r, true))
}

fn run(cli: &Cli) -> Result<(Record, bool), Failure> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::FindCycle { file, initial, trace, limits } => {
            find_cycle(file, initial.as_deref(), *trace, limits)
        }
        Command::Certify { file, cycle } => certify_cycle(file, cycle),
        Command::Oracle { search } => oracle(search),
        Command::Gen { family } => generate(family),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((record, holds)) => {
            print!("{}", record.render(cli.format));
            ExitCode::from(if holds { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
