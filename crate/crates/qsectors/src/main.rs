//! `qsectors`: sector lengths, separability bounds and noise thresholds of
//! qudit graph states from the command line.
//!
//! Exit status is 0 on success, 1 when a self-check fails and 2 on usage
//! errors. Set `QSECTORS_THREADS` to fix the number of enumeration workers.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qudit_sectors::bounds::{all_bounds, BoundMode};
use qudit_sectors::dense::suite::run_suite;
use qudit_sectors::graph::make_family;
use qudit_sectors::io::{bounds_csv, family_table_csv, fmt_sig, read_graph, thresholds_csv, StateSpec};
use qudit_sectors::sector::{ame4_analytic, family_full_body, puzzle_colorings, sector_brute, sector_from_group};
use qudit_sectors::thresholds::{threshold_table, Criterion, NoiseKind};
use qudit_sectors::{AdjacencyMatrix, Error, GraphFamily, RingDim, SectorDistribution};

#[derive(Debug, Parser)]
#[command(name = "qsectors", version, about = "Sector lengths and noise thresholds of qudit graph states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Analytic,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Global,
    Local,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sector-length distribution as CSV.
    Sector {
        #[arg(long, conflicts_with_all = ["family", "n", "d"])]
        graph: Option<PathBuf>,
        #[arg(long, requires_all = ["n", "d"])]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
    },
    /// Separability bounds for every partition of n.
    Bounds {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        qubit_tight: bool,
    },
    /// Threshold report for a state.
    Thresholds {
        /// ghz:D,n | ame4:D | family:KIND,n,D | graph:PATH
        #[arg(long)]
        state: String,
        #[arg(long, value_enum)]
        model: Model,
        /// Comma-separated criteria; all when omitted.
        #[arg(long, default_value = "")]
        criteria: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Counts black/white colorings of a qubit graph.
    Puzzle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        list: bool,
    },
    /// Qubit family rows as CSV.
    Tables {
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Dense cross-checks of the closed forms.
    Verify {
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn resolve_graph(graph: Option<PathBuf>, family: Option<String>, n: Option<usize>, d: Option<u64>) -> Result<AdjacencyMatrix, Failure> {
    match (graph, family, n, d) {
        (Some(path), None, None, None) => Ok(read_graph(&path)?),
        (None, Some(kind), Some(n), Some(d)) => Ok(make_family(kind.parse()?, n, RingDim::new(d)?)?),
        _ => Err(Failure::Usage("give either --graph FILE or --family KIND --n N --d D".into())),
    }
}

/// Group enumeration, with closed forms checked where they exist.
fn analytic(g: &AdjacencyMatrix, family: Option<GraphFamily>) -> Result<SectorDistribution, Failure> {
    let dist = sector_from_group(&g.stabilizer_spec())?;
    match family {
        Some(GraphFamily::Ame4Ring) if g.dim().get() % 2 == 1 => {
            let closed = ame4_analytic(g.dim())?;
            if closed != dist {
                return Err(Failure::Check(format!("ame4 closed form {:?} differs from group {:?}", closed.l, dist.l)));
            }
        }
        Some(kind) if g.dim().get() == 2 && GraphFamily::QUBIT_FAMILIES.contains(&kind) => {
            let full = family_full_body(kind, g.n())?;
            if full != dist.full_body() {
                return Err(Failure::Check(format!("{} full body {full} differs from group {}", kind.name(), dist.full_body())));
            }
        }
        _ => {}
    }
    Ok(dist)
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    match cli.command {
        Command::Sector { graph, family, n, d, method } => {
            let kind = family.as_deref().map(str::parse::<GraphFamily>).transpose()?;
            let g = resolve_graph(graph, family, n, d)?;
            let dist = match method {
                Method::Brute => sector_brute(&g)?,
                Method::Analytic => analytic(&g, kind)?,
                Method::Both => {
                    let brute = sector_brute(&g)?;
                    let exact = analytic(&g, kind)?;
                    if brute != exact {
                        return Err(Failure::Check(format!("brute {:?} and analytic {:?} differ", brute.l, exact.l)));
                    }
                    brute
                }
            };
            writeln!(out, "{}", SectorDistribution::csv_header(dist.n))?;
            writeln!(out, "{}", dist.csv_row())?;
        }
        Command::Bounds { d, n, qubit_tight } => {
            let mode = if qubit_tight { BoundMode::QubitTight } else { BoundMode::Generic };
            write!(out, "{}", bounds_csv(&all_bounds(RingDim::new(d)?, n, mode)?))?;
        }
        Command::Thresholds { state, model, criteria, format } => {
            let spec: StateSpec = state.parse()?;
            let criteria = Criterion::parse_list(&criteria)?;
            let kind = match model {
                Model::Global => NoiseKind::Global,
                Model::Local => NoiseKind::Local,
            };
            let rows = threshold_table(&spec.resolve()?, &criteria, kind)?;
            match format {
                Format::Json => {
                    let json = serde_json::to_string_pretty(&rows).map_err(|e| Failure::Check(e.to_string()))?;
                    writeln!(out, "{json}")?;
                }
                Format::Csv => write!(out, "{}", thresholds_csv(&rows))?,
            }
        }
        Command::Puzzle { graph, list } => {
            let g = read_graph(&graph)?;
            let (count, colorings) = puzzle_colorings(&g, list)?;
            writeln!(out, "{count}")?;
            for c in colorings.unwrap_or_default() {
                writeln!(out, "{}", c.bitstring())?;
            }
        }
        Command::Tables { family, max_n } => {
            write!(out, "{}", family_table_csv(family.parse()?, max_n)?)?;
        }
        Command::Verify { deep } => {
            let checks = run_suite(deep);
            let failed = checks.iter().filter(|c| !c.passed()).count();
            for c in &checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {} residual={} tol={}", c.name, fmt_sig(c.residual), fmt_sig(c.tolerance))?;
            }
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} verification checks failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("qsectors: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("qsectors: {msg}");
            ExitCode::from(1)
        }
    }
}
