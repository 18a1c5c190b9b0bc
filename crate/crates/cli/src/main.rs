use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use specbisect::experiment::{
    bisect_report, refine_report, run_experiment, CutReport, ExperimentConfig, ExperimentSummary,
    Method, RefineReport,
};
use specbisect::generators::{complete, cycle, erdos_renyi, path, roach};
use specbisect::io::{read_graph_file, read_partition, write_edge_list, write_partition};
use specbisect::oracle::{
    integer_program_identity, max_bisection_bf, min_bisection_bf, organized_partition_bf,
    second_min_bisection_bf,
};
use specbisect::{Bisection, Error, Graph, Result, SpectralConfig};

/// Spectral graph bisection with a two-eigenvector rotation sweep.
#[derive(Parser)]
#[command(name = "specbisect", version)]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Eigenpair residual tolerance
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Seed for random graphs and experiments
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file: the graph for `generate`, the partition for `bisect` and
    /// `refine`, the report for `oracle` and `experiment`
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list
    Generate {
        #[arg(value_enum)]
        kind: GraphKind,
        /// Roach parameter: two paths of 2k vertices joined on their first k
        #[arg(long)]
        k: Option<usize>,
        /// Number of vertices
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability for `er`
        #[arg(long)]
        p: Option<f64>,
    },
    /// Bisect a graph (edge list or Matrix Market)
    Bisect {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Alg1)]
        method: MethodArg,
    },
    /// Refine a given bisection of a graph
    Refine { input: PathBuf, partition: PathBuf },
    /// Exact brute-force answers for small graphs
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        /// Bisection for `dc` and `identity`; defaults to the first minimum bisection
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Mean gain of the sweep over spectral bisection on connected G(n, p) samples
    Experiment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Roach,
    Er,
    Path,
    Cycle,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Sb,
    Alg1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Min,
    Max,
    Second,
    Dc,
    Identity,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("specbisect: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Error::Input(format!(
            "tolerance must be positive, got {}",
            cli.tol
        )));
    }
    let cfg = SpectralConfig::with_tol(cli.tol);
    match &cli.command {
        Command::Generate { kind, k, n, p } => {
            let g = generate(*kind, *k, *n, *p, cli.seed)?;
            with_output(cli.out.as_deref(), |w| write_edge_list(&g, w))
        }
        Command::Bisect { input, method } => {
            let g = read_graph_file(input)?;
            let method = match method {
                MethodArg::Sb => Method::Sb,
                MethodArg::Alg1 => Method::Alg1,
            };
            let (report, best) = bisect_report(&graph_id(input), &g, method, &cfg)?;
            save_partition(cli.out.as_deref(), &best)?;
            print_report(
                cli.format,
                &report,
                CutReport::CSV_HEADER,
                &report.csv_row(),
            )
        }
        Command::Refine { input, partition } => {
            let g = read_graph_file(input)?;
            let given = load_partition(partition, g.n())?;
            let (report, best) = refine_report(&graph_id(input), &g, &given, &cfg)?;
            save_partition(cli.out.as_deref(), &best)?;
            print_report(
                cli.format,
                &report,
                RefineReport::CSV_HEADER,
                &report.csv_row(),
            )
        }
        Command::Oracle {
            input,
            which,
            partition,
        } => {
            let g = read_graph_file(input)?;
            let value = oracle(&g, *which, partition.as_deref())?;
            let text = value.to_string();
            with_output(cli.out.as_deref(), |w| Ok(writeln!(w, "{text}")?))
        }
        Command::Experiment { n, p, samples } => {
            let summary = run_experiment(
                &ExperimentConfig {
                    n: *n,
                    p: *p,
                    samples: *samples,
                    seed: cli.seed,
                },
                &cfg,
            )?;
            let text = match cli.format {
                Format::Json => serde_json::to_string(&summary).expect("summary serializes"),
                Format::Csv => format!("{}\n{}", ExperimentSummary::CSV_HEADER, summary.csv_row()),
            };
            with_output(cli.out.as_deref(), |w| Ok(writeln!(w, "{text}")?))
        }
    }
}

fn require(value: Option<usize>, flag: &str, kind: &str) -> Result<usize> {
    value.ok_or_else(|| Error::Input(format!("`generate {kind}` needs --{flag}")))
}

fn generate(
    kind: GraphKind,
    k: Option<usize>,
    n: Option<usize>,
    p: Option<f64>,
    seed: u64,
) -> Result<Graph> {
    match kind {
        GraphKind::Roach => roach(require(k, "k", "roach")?),
        GraphKind::Er => {
            let p = p.ok_or_else(|| Error::Input("`generate er` needs --p".into()))?;
            erdos_renyi(require(n, "n", "er")?, p, seed)
        }
        GraphKind::Path => path(require(n, "n", "path")?),
        GraphKind::Cycle => cycle(require(n, "n", "cycle")?),
        GraphKind::Complete => complete(require(n, "n", "complete")?),
    }
}

fn graph_id(input: &Path) -> String {
    input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| input.display().to_string())
}

/// Runs `write` against `path`, or stdout when no path is given.
fn with_output(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn save_partition(path: Option<&Path>, bis: &Bisection) -> Result<()> {
    if let Some(path) = path {
        let mut w = BufWriter::new(File::create(path)?);
        write_partition(bis, &mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn load_partition(path: &Path, n: usize) -> Result<Bisection> {
    read_partition(BufReader::new(File::open(path)?), n)
}

fn print_report<T: serde::Serialize>(
    format: Format,
    report: &T,
    header: &str,
    row: &str,
) -> Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string(report).expect("reports serialize"),
        Format::Csv => format!("{header}\n{row}"),
    };
    with_output(None, |w| Ok(writeln!(w, "{text}")?))
}

fn oracle(g: &Graph, which: Which, partition: Option<&Path>) -> Result<Value> {
    let subject = |g: &Graph| -> Result<Bisection> {
        match partition {
            Some(path) => load_partition(path, g.n()),
            None => Ok(min_bisection_bf(g)?.1.swap_remove(0)),
        }
    };
    Ok(match which {
        Which::Min => {
            let (cut, bisections) = min_bisection_bf(g)?;
            json!({ "n": g.n(), "min_cut": cut, "bisections": bisections })
        }
        Which::Max => {
            let (cut, bisections) = max_bisection_bf(g)?;
            json!({ "n": g.n(), "max_cut": cut, "bisections": bisections })
        }
        Which::Second => {
            let (cut, bisection) = second_min_bisection_bf(g)?;
            json!({ "n": g.n(), "second_min_cut": cut, "bisection": bisection })
        }
        Which::Dc => {
            let bis = subject(g)?;
            let (d_c, quad) = organized_partition_bf(g, &bis)?;
            json!({ "n": g.n(), "cut": g.cut_size(&bis)?, "d_c": d_c, "bisection": bis, "quad": quad })
        }
        Which::Identity => {
            let bis = subject(g)?;
            let check = integer_program_identity(g, &bis)?;
            json!({
                "n": g.n(),
                "bisection": bis,
                "program_min": check.program_min,
                "cut": check.cut,
                "d_c": check.d_c,
                "holds": check.holds(),
            })
        }
    })
}
