use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use vicsek_cli::csv::{edges_csv, vertices_csv};
use vicsek_cli::report::suites_to_json;
use vicsek_cli::rng::SplitMix64;
use vicsek_cli::svg::render;
use vicsek_cli::{level_cap_from_env, DEFAULT_SEED};

use vicsek_core::decimation::{
    enumerate_spectrum, extend_basis, lambda_sequence_in, verify_decimation, Series,
};
use vicsek_core::highprec::HighPrec;
use vicsek_core::hotspots::{symmetry_check, verify_hotspots, EigenCombination};
use vicsek_core::identities::{check_identity, injected_fault_case, verify_identities};
use vicsek_core::report::SuiteReport;
use vicsek_core::scalar::Real;

#[derive(Parser)]
#[command(
    name = "vicsek",
    version,
    about = "Spectral decimation and hot-spots verification on the second-order Vicsek set"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Double,
    High,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    U1,
    U2,
    U3,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hotspots,
    Identities,
    Symmetry,
    Decimation,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Renormalized limit of the eigenvalue sequence, with a convergence table
    Lambda2 {
        /// Maximum decimation depth (the iteration stops earlier once the
        /// estimates settle)
        #[arg(short = 'm', long, default_value_t = 64)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
        precision: PrecisionArg,
    },
    /// Extend an eigenbasis vector (or combination) and write the vertex CSV
    Extend {
        /// One of the three basis vectors
        #[arg(long, value_enum, conflicts_with = "c")]
        basis: Option<BasisArg>,
        /// Coefficients "c1,c2,c3" of a combination
        #[arg(long, value_name = "C1,C2,C3")]
        c: Option<String>,
        #[arg(short = 'm', long)]
        level: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Lowest Neumann eigenvalues with multiplicities and decimation words
    Spectrum {
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Tail-iteration cap for the per-word limits
        #[arg(long, default_value_t = 48)]
        level_cap: usize,
    },
    /// Run verification suites
    ///
    /// Exit code 0: all properties hold. 1: a property was falsified (the
    /// JSON report carries witnesses). 2: infrastructure error.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Sweep depth (default: 8 for hotspots, 6 for symmetry)
        #[arg(long)]
        depth: Option<usize>,
        /// Grid size for the identity and inequality scans
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        /// Number of random eigenspace combinations
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Extension level for the boundary-extrema check
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Corrupt one identity on purpose to exercise the failure path
        #[arg(long, default_value_t = false)]
        inject_fault: bool,
    },
    /// Export a level graph as vertex and edge CSV files
    ExportGraph {
        #[arg(short = 'm', long)]
        level: u32,
        #[arg(long)]
        vertices_out: PathBuf,
        #[arg(long)]
        edges_out: PathBuf,
    },
    /// Render a field as a deterministic SVG
    Plot {
        #[arg(long, value_enum, conflicts_with = "c")]
        basis: Option<BasisArg>,
        #[arg(long, value_name = "C1,C2,C3")]
        c: Option<String>,
        #[arg(short = 'm', long)]
        level: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

enum CliError {
    Core(vicsek_core::Error),
    Io(std::io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<vicsek_core::Error> for CliError {
    fn from(e: vicsek_core::Error) -> CliError {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes (e.g. `vicsek ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn env_level_cap() -> u32 {
    let var = std::env::var("VICSEK_LEVEL_CAP").ok();
    level_cap_from_env(var.as_deref())
}

fn checked_level(level: u32) -> Result<u32, CliError> {
    let cap = env_level_cap();
    if level > cap {
        return Err(CliError::Usage(format!(
            "level {level} exceeds the cap {cap} (override with VICSEK_LEVEL_CAP, hard max 8)"
        )));
    }
    Ok(level)
}

fn parse_combination(basis: Option<BasisArg>, c: Option<&str>) -> Result<[f64; 3], CliError> {
    match (basis, c) {
        (Some(BasisArg::U1), None) => Ok([1.0, 0.0, 0.0]),
        (Some(BasisArg::U2), None) => Ok([0.0, 1.0, 0.0]),
        (Some(BasisArg::U3), None) => Ok([0.0, 0.0, 1.0]),
        (None, Some(list)) => {
            let parts: Vec<&str> = list.split(',').collect();
            if parts.len() != 3 {
                return Err(CliError::Usage(format!(
                    "--c expects three comma-separated numbers, got {list:?}"
                )));
            }
            let mut out = [0.0; 3];
            for (slot, part) in out.iter_mut().zip(&parts) {
                *slot = part.trim().parse::<f64>().map_err(|_| {
                    CliError::Usage(format!("could not parse coefficient {part:?}"))
                })?;
            }
            Ok(out)
        }
        _ => Err(CliError::Usage(
            "exactly one of --basis or --c is required".into(),
        )),
    }
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Lambda2 { levels, precision } => cmd_lambda2(levels, precision),
        Command::Extend {
            basis,
            c,
            level,
            out,
            format: FormatArg::Csv,
        } => {
            let coeffs = parse_combination(basis, c.as_deref())?;
            let level = checked_level(level)?;
            let b = extend_basis(level)?;
            let field = b.combination(level, coeffs);
            std::fs::write(&out, vertices_csv(b.graph(level), Some(&field)))?;
            println!(
                "wrote {} vertex rows at level {level} to {}",
                b.graph(level).vertex_count(),
                out.display()
            );
            Ok(true)
        }
        Command::Spectrum { count, level_cap } => cmd_spectrum(count, level_cap),
        Command::Verify {
            suite,
            depth,
            grid,
            trials,
            level,
            seed,
            out,
            inject_fault,
        } => cmd_verify(suite, depth, grid, trials, level, seed, out, inject_fault),
        Command::ExportGraph {
            level,
            vertices_out,
            edges_out,
        } => {
            let level = checked_level(level)?;
            let g = vicsek_core::graph::build_graph(level)?;
            std::fs::write(&vertices_out, vertices_csv(&g, None))?;
            std::fs::write(&edges_out, edges_csv(&g))?;
            println!(
                "wrote {} vertices and {} edges for level {level}",
                g.vertex_count(),
                g.edge_count()
            );
            Ok(true)
        }
        Command::Plot {
            basis,
            c,
            level,
            out,
        } => {
            let coeffs = parse_combination(basis, c.as_deref())?;
            let level = checked_level(level)?;
            let b = extend_basis(level)?;
            let field = b.combination(level, coeffs);
            std::fs::write(&out, render(b.graph(level), &field))?;
            println!("wrote plot for level {level} to {}", out.display());
            Ok(true)
        }
    }
}

fn cmd_lambda2(levels: usize, precision: PrecisionArg) -> Result<bool, CliError> {
    match precision {
        PrecisionArg::Double => {
            let seq = lambda_sequence_in::<f64>(levels, true)?;
            println!(
                "{:>3}  {:<22}  {:<22}  delta",
                "m", "lambda_m", "15^m lambda_m"
            );
            let mut prev = seq.estimates[0];
            for m in 0..=seq.levels() {
                println!(
                    "{m:>3}  {:<22.16}  {:<22.16}  {:+.3e}",
                    seq.lambdas[m],
                    seq.estimates[m],
                    seq.estimates[m] - prev
                );
                prev = seq.estimates[m];
            }
            println!("lambda2 = {:.16}", seq.limit_estimate());
            println!(
                "converged: {}",
                seq.converged_at
                    .map(|m| format!("at level {m}"))
                    .unwrap_or_else(|| "no (raise --levels)".into())
            );
            Ok(true)
        }
        PrecisionArg::High => {
            let seq = lambda_sequence_in::<HighPrec>(levels, true)?;
            println!("{:>3}  {:<44}  delta", "m", "15^m lambda_m (42 digits)");
            let mut prev = seq.estimates[0];
            for m in 0..=seq.levels() {
                let delta = seq.estimates[m].sub(&prev);
                println!(
                    "{m:>3}  {:<44}  {:+.3e}",
                    seq.estimates[m].to_decimal(42),
                    delta.to_f64()
                );
                prev = seq.estimates[m];
            }
            println!("lambda2 = {}", seq.limit_estimate().to_decimal(60));
            println!(
                "converged: {}",
                seq.converged_at
                    .map(|m| format!("at level {m}"))
                    .unwrap_or_else(|| "no (raise --levels)".into())
            );
            Ok(true)
        }
    }
}

fn cmd_spectrum(count: usize, level_cap: usize) -> Result<bool, CliError> {
    let entries = enumerate_spectrum(count, level_cap)?;
    println!(
        "{:<22}  {:>12}  {:<16}  word",
        "eigenvalue", "multiplicity", "series"
    );
    for e in &entries {
        let series = match e.word.series {
            Series::Zero => "0-series".to_string(),
            Series::FourThirds { birth_level } => format!("4/3-series k={birth_level}"),
        };
        let word: String = e
            .word
            .prefix
            .iter()
            .map(|l| (b'0' + l) as char)
            .chain("1...".chars())
            .collect();
        println!(
            "{:<22.15}  {:>12}  {:<16}  {}",
            e.eigenvalue, e.multiplicity, series, word
        );
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: SuiteArg,
    depth: Option<usize>,
    grid: usize,
    trials: usize,
    level: Option<u32>,
    seed: u64,
    out: Option<PathBuf>,
    inject_fault: bool,
) -> Result<bool, CliError> {
    let cap = env_level_cap();
    let level = match level {
        Some(l) => checked_level(l)?,
        None => cap.min(6),
    };
    let mut suites: Vec<SuiteReport> = Vec::new();
    let run_hotspots = matches!(suite, SuiteArg::Hotspots | SuiteArg::All);
    let run_identities = matches!(suite, SuiteArg::Identities | SuiteArg::All);
    let run_symmetry = matches!(suite, SuiteArg::Symmetry | SuiteArg::All);
    let run_decimation = matches!(suite, SuiteArg::Decimation | SuiteArg::All);

    if run_hotspots {
        let sweep_depth = depth.unwrap_or(8);
        let basis = extend_basis(level)?;
        let mut rng = SplitMix64::new(seed);
        let mut combos = vec![
            EigenCombination {
                c1: 1.0,
                c2: 0.0,
                c3: 0.0,
            },
            EigenCombination {
                c1: 0.0,
                c2: 0.0,
                c3: 0.0,
            },
        ];
        for _ in 0..trials {
            combos.push(EigenCombination {
                c1: rng.next_symmetric(),
                c2: rng.next_symmetric(),
                c3: rng.next_symmetric(),
            });
        }
        suites.push(verify_hotspots(&basis, sweep_depth, level, &combos)?);
    }
    if run_identities {
        let mut report = verify_identities(grid)?;
        if inject_fault {
            report.push(check_identity(&injected_fault_case(), grid));
        }
        suites.push(report);
    }
    if run_symmetry {
        let sym_depth = depth.unwrap_or(6).clamp(1, 8);
        let basis = extend_basis(sym_depth as u32)?;
        suites.push(symmetry_check(sym_depth, &basis)?);
    }
    if run_decimation {
        suites.push(verify_decimation(4)?);
    }

    let config = json!({
        "depth": depth,
        "grid": grid,
        "trials": trials,
        "level": level,
        "inject_fault": inject_fault,
    });
    let doc = suites_to_json(&suites, config, seed);
    let rendered = serde_json::to_string_pretty(&doc).expect("report serializes");
    match &out {
        Some(path) => std::fs::write(path, rendered)?,
        None => println!("{rendered}"),
    }
    let mut all_pass = true;
    for s in &suites {
        for c in &s.cases {
            eprintln!(
                "[{}] {:<40} {}",
                s.suite,
                c.name,
                if c.pass { "PASS" } else { "FAIL" }
            );
            all_pass &= c.pass;
        }
    }
    eprintln!("seed: {seed}");
    Ok(all_pass)
}
