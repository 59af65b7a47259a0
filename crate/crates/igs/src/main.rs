use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use igs::boxcover;
use igs::graph::GraphFile;
use igs::lyapunov::{self, McParams};
use igs::report;
use igs::selftest;
use igs::spectral;
use igs::svg;
use igs::system::{self, SystemError, SystemSpec};

/// Iterated graph systems: growth, theoretical dimension, box counting.
#[derive(Parser)]
#[command(name = "igs", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deterministic theory: arc matrix, path matrices, spectral radii, dimension.
    Theory {
        /// System file (JSON).
        system: PathBuf,
        /// Write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Random theory: Lyapunov exponents per path-matrix set, dimension.
    Lyapunov {
        system: PathBuf,
        /// Master seed for the Monte-Carlo streams.
        #[arg(long)]
        seed: u64,
        /// Steps per trial.
        #[arg(long, default_value_t = 10_000)]
        steps: u32,
        /// Monte-Carlo trials per set.
        #[arg(long, default_value_t = 400)]
        trials: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate a level and write the graph with a stats block.
    Generate {
        system: PathBuf,
        /// Number of substitution steps.
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        seed: u64,
        /// Output path for the graph JSON (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the projected-arc-count cap.
        #[arg(long)]
        max_arcs: Option<u64>,
    },
    /// Estimate the box dimension of a generated level or of a graph file.
    Boxdim(BoxdimArgs),
    /// Run the bundled invariant suite.
    Selftest,
}

#[derive(Args)]
struct BoxdimArgs {
    /// System file; mutually exclusive with --graph.
    system: Option<PathBuf>,
    /// Estimate a serialised graph instead of generating one.
    #[arg(long, conflicts_with = "system")]
    graph: Option<PathBuf>,
    #[arg(long, required_unless_present = "graph")]
    steps: Option<u32>,
    #[arg(long, required_unless_present = "graph")]
    seed: Option<u64>,
    /// Smallest box size of the regression range (default 2).
    #[arg(long)]
    lmin: Option<u32>,
    /// Largest box size (default diameter/2).
    #[arg(long)]
    lmax: Option<u32>,
    /// Repeat over this many consecutive seeds and report the mean.
    #[arg(long, default_value_t = 1)]
    repeat: u32,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    max_arcs: Option<u64>,
}

const EXIT_VALIDATION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

enum CliError {
    System(SystemError),
    Spectral(spectral::SpectralError),
    Lyapunov(lyapunov::LyapunovError),
    Cover(boxcover::CoverError),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::System(SystemError::ResourceLimit { .. }) => EXIT_RESOURCE,
            CliError::System(_) => EXIT_VALIDATION,
            CliError::Spectral(spectral::SpectralError::NotConverged { .. }) => EXIT_NUMERIC,
            CliError::Spectral(_) => EXIT_VALIDATION,
            CliError::Lyapunov(lyapunov::LyapunovError::Spectral(
                spectral::SpectralError::NotConverged { .. },
            )) => EXIT_NUMERIC,
            CliError::Lyapunov(_) => EXIT_VALIDATION,
            CliError::Cover(_) => EXIT_VALIDATION,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::System(e) => e.to_string(),
            CliError::Spectral(e) => e.to_string(),
            CliError::Lyapunov(e) => e.to_string(),
            CliError::Cover(e) => e.to_string(),
            CliError::Io(e) => e.clone(),
        }
    }
}

impl From<SystemError> for CliError {
    fn from(e: SystemError) -> Self {
        CliError::System(e)
    }
}
impl From<spectral::SpectralError> for CliError {
    fn from(e: spectral::SpectralError) -> Self {
        CliError::Spectral(e)
    }
}
impl From<lyapunov::LyapunovError> for CliError {
    fn from(e: lyapunov::LyapunovError) -> Self {
        CliError::Lyapunov(e)
    }
}
impl From<boxcover::CoverError> for CliError {
    fn from(e: boxcover::CoverError) -> Self {
        CliError::Cover(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn load_system(path: &PathBuf) -> Result<(SystemSpec, String), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    let (spec, validation) = system::parse_system_file(path)?;
    for w in &validation.warnings {
        eprintln!("warning: {w}");
    }
    Ok((spec, report::file_hash(&bytes)))
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", p.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn effective_cap(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("IGS_MAX_ARCS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(system::DEFAULT_MAX_ARCS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Theory { system: path, json } => cmd_theory(&path, json),
        Command::Lyapunov { system: path, seed, steps, trials, json } => {
            cmd_lyapunov(&path, McParams { steps, trials, seed }, json)
        }
        Command::Generate { system: path, steps, seed, out, max_arcs } => {
            cmd_generate(&path, steps, seed, out, effective_cap(max_arcs))
        }
        Command::Boxdim(args) => cmd_boxdim(args),
        Command::Selftest => Ok(cmd_selftest()),
    }
}

fn cmd_theory(path: &PathBuf, json: Option<PathBuf>) -> Result<ExitCode, CliError> {
    let (spec, hash) = load_system(path)?;
    let theory = spectral::deterministic_dimension(&spec)?;
    println!("arc matrix M        : {}", theory.arc_matrix);
    for (i, entry) in theory.paths.per_color.iter().enumerate() {
        let set: Vec<String> = entry.chi_set.iter().map(|c| c.to_string()).collect();
        println!(
            "paths color {:<2}     : {} simple A-B paths, chi set {{{}}}",
            i + 1,
            entry.path_count(),
            set.join(", ")
        );
    }
    println!("path matrix family  : {} members", theory.family.len());
    for m in &theory.family.members {
        println!("                      {}", m);
    }
    println!("rho(M)              : {:.6}", theory.rho_arc);
    println!("rho_min             : {:.6}", theory.rho_min.value);
    for &i in &theory.rho_min.argmin {
        println!("argmin member       : {}", theory.family.members[i]);
    }
    println!("dimension           : {:.4}", theory.dimension);
    if let Some(json_path) = json {
        let mut rep = report::new_report(Some(hash));
        rep.theoretical = Some(report::spectral_section(&theory));
        let text = serde_json::to_string_pretty(&rep).expect("report serialises");
        write_or_print(&Some(json_path), &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lyapunov(path: &PathBuf, params: McParams, json: Option<PathBuf>) -> Result<ExitCode, CliError> {
    let (spec, hash) = load_system(path)?;
    let theory = lyapunov::random_dimension(&spec, params)?;
    println!(
        "arc-set exponent    : {:.4} +- {:.4}  (expectation bound {:.4})",
        theory.arc_estimate.value, theory.arc_estimate.stderr, theory.arc_bound.value
    );
    println!("path-set exponents  : {} sets", theory.lmin.estimates.len());
    for (i, (label, est)) in theory.lmin.estimates.iter().enumerate() {
        let marker = if i == theory.lmin.min_index {
            " <- min"
        } else if theory.lmin.ties.contains(&i) {
            " (tied)"
        } else {
            ""
        };
        println!("  {:<40} {:.4} +- {:.4}{}", label, est.value, est.stderr, marker);
    }
    println!(
        "minimal exponent    : {:.4} +- {:.4}",
        theory.lmin.min_estimate().value,
        theory.lmin.min_estimate().stderr
    );
    println!("dimension           : {:.4} +- {:.4}", theory.dimension, theory.dim_stderr);
    if let Some(json_path) = json {
        let mut rep = report::new_report(Some(hash));
        rep.theoretical = Some(report::lyapunov_section(&theory, params.seed));
        let text = serde_json::to_string_pretty(&rep).expect("report serialises");
        write_or_print(&Some(json_path), &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(
    path: &PathBuf,
    steps: u32,
    seed: u64,
    out: Option<PathBuf>,
    cap: u64,
) -> Result<ExitCode, CliError> {
    let (spec, _) = load_system(path)?;
    let trace = system::generate(&spec, steps, seed, cap)?;
    let g = trace.last();
    let diameter = g.diameter();
    let ab = g.distance(trace.a_node, trace.b_node).expect("endpoints persist");
    eprintln!(
        "level {}: |V| = {}, |E| = {}, diameter = {}{}, d(A,B) = {}",
        steps,
        g.node_count(),
        g.arc_count(),
        diameter.value,
        if diameter.exact { "" } else { " (lower bound)" },
        ab
    );
    let text = system::serialize_graph(g, trace.a_node, trace.b_node);
    write_or_print(&out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_boxdim(args: BoxdimArgs) -> Result<ExitCode, CliError> {
    let cap = effective_cap(args.max_arcs);
    // (graph, level, seed), plus theory line when a system file is given
    let mut runs: Vec<(igs::ColoredDigraph, Option<u32>, Option<u64>)> = Vec::new();
    let mut theory_line: Option<String> = None;
    let hash;
    if let Some(graph_path) = &args.graph {
        let bytes = std::fs::read(graph_path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", graph_path.display())))?;
        let file: GraphFile = serde_json::from_str(
            std::str::from_utf8(&bytes).map_err(|e| CliError::Io(e.to_string()))?,
        )
        .map_err(|e| CliError::System(SystemError::Parse { detail: e.to_string() }))?;
        let g = file.to_graph();
        g.validate().map_err(|e| CliError::System(e.into()))?;
        hash = Some(report::file_hash(&bytes));
        runs.push((g, None, None));
    } else {
        let path = args.system.as_ref().expect("clap enforces system xor graph");
        let (spec, h) = load_system(path)?;
        hash = Some(h);
        let steps = args.steps.expect("clap enforces --steps with a system file");
        let seed = args.seed.expect("clap enforces --seed with a system file");
        for k in 0..args.repeat.max(1) {
            let trace = system::generate(&spec, steps, seed + k as u64, cap)?;
            runs.push((trace.last().clone(), Some(steps), Some(seed + k as u64)));
        }
        theory_line = Some(if spec.is_deterministic() {
            let theory = spectral::deterministic_dimension(&spec)?;
            format!("theoretical dimension: {:.4} (spectral)", theory.dimension)
        } else {
            let params = McParams { seed, ..McParams::default() };
            let theory = lyapunov::random_dimension(&spec, params)?;
            format!(
                "theoretical dimension: {:.4} +- {:.4} (lyapunov)",
                theory.dimension, theory.dim_stderr
            )
        });
    }

    let mut estimates = Vec::new();
    let mut last_report = None;
    for (g, level, seed) in &runs {
        let rep = boxcover::estimate_box_dimension(g, args.lmin, args.lmax)?;
        println!(
            "seed {:<6} |V| {:<8} diameter {:<6} estimate {:.4} +- {:.4} (L in [{}, {}], r^2 {:.4})",
            seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
            rep.curve.node_count,
            rep.curve.diameter,
            rep.estimate,
            rep.fit.stderr,
            rep.fit.l_min,
            rep.fit.l_max,
            rep.fit.r_squared
        );
        estimates.push(rep.estimate);
        last_report = Some((rep, *level, *seed));
    }
    if estimates.len() > 1 {
        let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
        let var = estimates.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>()
            / (estimates.len() as f64 - 1.0);
        println!(
            "mean over {} seeds  : {:.4} +- {:.4}",
            estimates.len(),
            mean,
            (var / estimates.len() as f64).sqrt()
        );
    }
    if let Some(line) = theory_line {
        println!("{line}");
        println!("(finite-level covering systematically underestimates the limit; the gap is expected)");
    }

    let (rep, level, seed) = last_report.expect("at least one run");
    if let Some(csv_path) = &args.csv {
        write_or_print(&Some(csv_path.clone()), &boxcover::curve_csv(&rep.curve))?;
    }
    if let Some(svg_path) = &args.svg {
        write_or_print(&Some(svg_path.clone()), &svg::loglog_svg(&rep.curve, &rep.fit))?;
    }
    if let Some(json_path) = &args.json {
        let mut out = report::new_report(hash);
        out.empirical = Some(report::empirical_section(&rep, level, seed));
        let text = serde_json::to_string_pretty(&out).expect("report serialises");
        write_or_print(&Some(json_path.clone()), &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest() -> ExitCode {
    let outcome = selftest::run();
    for c in &outcome.checks {
        let tag = match c.status {
            selftest::Status::Pass => "pass",
            selftest::Status::Fail => "FAIL",
            selftest::Status::Info => "info",
        };
        println!("{tag}: {:<28} {}", c.name, c.detail);
    }
    let failed = outcome.failed();
    if failed == 0 {
        println!("selftest: all {} checks passed", outcome.checks.len());
        ExitCode::SUCCESS
    } else {
        println!("selftest: {failed} checks FAILED");
        ExitCode::from(1)
    }
}
