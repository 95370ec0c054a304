use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ksep::bench::{run_suite, Suite};
use ksep::cleanup::{verify_solution, Problem};
use ksep::graph::{parse_vertex_list, GraphKind};
use ksep::lp::to_lp_format;
use ksep::reduction::reduce_coverage_to_vsep;
use ksep::spreading::{build_edge_separator_lp, build_path_lp_initial, build_subset_separator_lp, build_vertex_separator_lp, normalize_red, LpRoute};
use ksep::{gen_graph, parse_graph, solve, Error, Graph, Result, SolveConfig};

#[derive(Parser)]
#[command(name = "ksep", version, about = "Graph separators and path transversals via spreading-metric LPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a report.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Generate an instance in the edge-list format.
    Gen(GenArgs),
    /// Run a JSON benchmark suite.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Vsep,
    Esep,
    Ssep,
    Ptrans,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Vsep => Problem::Vsep,
            ProblemArg::Esep => Problem::Esep,
            ProblemArg::Ssep => Problem::Ssep,
            ProblemArg::Ptrans => Problem::Ptrans,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Projected,
    Compact,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list input file.
    input: PathBuf,
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = ksep::pipeline::DEFAULT_TRIALS)]
    trials: usize,
    /// Red vertices, one id per line (ssep only).
    #[arg(long)]
    red_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    max_rounds: Option<usize>,
    /// Color-coding failure probability (ptrans only).
    #[arg(long, default_value_t = ksep::kpath::DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, value_enum, default_value = "projected")]
    route: RouteArg,
    /// Write the initial LP in LP text format to this path.
    #[arg(long)]
    dump_lp: Option<PathBuf>,
    /// Include the per-centre rounding log in the report.
    #[arg(long)]
    trace: bool,
    /// Report zero stage timings, making output byte-reproducible.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    /// Removed vertex ids (edge ids for esep), one per line.
    solution: PathBuf,
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    red_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    /// Output path; stdout when absent.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Erdos-Renyi G(n, p).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Clique {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Star {
        #[arg(long)]
        leaves: usize,
    },
    /// Reduced k-Vertex Separator instance of a k-Edge Coverage instance.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Role map path; defaults to `<output>.roles` when writing a file.
        #[arg(long)]
        role_map: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    suite: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?)
}

fn load_red(path: Option<&PathBuf>, g: &Graph, problem: Problem) -> Result<Vec<usize>> {
    match (path, problem) {
        (Some(p), _) => parse_vertex_list(&read(p)?, g.n()),
        (None, Problem::Ssep) => Err(Error::InvalidInput("ssep needs --red-file".into())),
        (None, _) => Ok(Vec::new()),
    }
}

fn dump_lp(path: &Path, g: &Graph, problem: Problem, k: usize, red: &[usize]) -> Result<()> {
    let lp = match problem {
        Problem::Vsep => build_vertex_separator_lp(g, k)?,
        Problem::Esep => build_edge_separator_lp(g, k)?,
        Problem::Ssep => build_subset_separator_lp(g, &normalize_red(g, red)?, k)?,
        Problem::Ptrans => build_path_lp_initial(g, k)?,
    };
    fs::write(path, to_lp_format(&lp))?;
    Ok(())
}

fn cmd_solve(a: SolveArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    let problem = Problem::from(a.problem);
    let red = load_red(a.red_file.as_ref(), &g, problem)?;
    if let Some(path) = &a.dump_lp {
        dump_lp(path, &g, problem, a.k, &red)?;
    }
    let cfg = SolveConfig {
        epsilon: a.epsilon,
        seed: a.seed,
        trials: a.trials,
        red,
        delta: a.delta,
        max_rounds: a.max_rounds,
        route: match a.route {
            RouteArg::Projected => LpRoute::Projected,
            RouteArg::Compact => LpRoute::Compact,
        },
        trace: a.trace,
        ..SolveConfig::new(problem, a.k)
    };
    let mut report = solve(&g, &cfg)?;
    if a.no_timings {
        report = report.without_timings();
    }
    match a.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let g = load_graph(&a.input)?;
    let problem = Problem::from(a.problem);
    let red = load_red(a.red_file.as_ref(), &g, problem)?;
    let limit = if problem.removes_edges() { g.m() } else { g.n() };
    let removed = parse_vertex_list(&read(&a.solution)?, limit)?;
    let report = verify_solution(&g, problem, a.k, &red, &removed)?;
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => {
            println!("feasible: {}", report.feasible);
            println!("certificate: {:?}", report.certificate);
            for v in &report.violations {
                println!("violating component (value {}): {:?}", v.value, v.component);
            }
        }
    }
    Ok(report.feasible)
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_gen(a: GenArgs) -> Result<()> {
    let kind = match a.kind {
        GenKind::Random { n, p, seed } => return emit(a.output.as_ref(), &gen_graph(GraphKind::RandomGnp { n, p }, seed)?.to_edge_list()),
        GenKind::Clique { n } => GraphKind::Clique { n },
        GenKind::Cycle { n } => GraphKind::Cycle { n },
        GenKind::Path { n } => GraphKind::Path { n },
        GenKind::Star { leaves } => GraphKind::Star { leaves },
        GenKind::Reduce { input, k, role_map } => {
            let art = reduce_coverage_to_vsep(&load_graph(&input)?, k)?;
            let text = format!(
                "# reduced from a coverage instance with n={} m={} k={}\n# k' = {}\n{}",
                art.source.n(),
                art.source.m(),
                k,
                art.k_prime,
                art.target.to_edge_list()
            );
            emit(a.output.as_ref(), &text)?;
            let roles = role_map.or_else(|| a.output.as_ref().map(|p| p.with_extension("roles")));
            if let Some(path) = roles {
                fs::write(path, art.role_map_text())?;
            }
            return Ok(());
        }
    };
    emit(a.output.as_ref(), &gen_graph(kind, 0)?.to_edge_list())
}

fn cmd_bench(a: BenchArgs) -> Result<()> {
    let report = run_suite(&Suite::parse(&read(&a.suite)?)?);
    match a.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_table()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a).map(|_| true),
        Command::Bench(a) => cmd_bench(a).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
