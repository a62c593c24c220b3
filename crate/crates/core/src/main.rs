use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wmesc::{
    bench_corpus, brute_force, gen_path, gen_planted, gen_random, gen_ring, parse_instance, reduce_3set_packing,
    write_csv, GenConfig, Instance, PackingInstance, SolveError, Solver, DEFAULT_TOL,
};

/// Exact solver for weighted mutually exclusive maximum set cover.
#[derive(Parser, Debug)]
#[command(name = "wmesc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance exactly.
    Solve {
        input: PathBuf,
        /// Include search-tree statistics in the output.
        #[arg(long)]
        stats: bool,
        /// Absolute tolerance for weight ties.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Solve by exhaustive enumeration (m <= 25).
    Oracle { input: PathBuf },
    /// Write a generated instance.
    Gen {
        kind: GenKind,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        overlap: Option<f64>,
        /// Planted block count.
        #[arg(long)]
        k: Option<usize>,
        /// Planted noise subset count.
        #[arg(long, default_value_t = 0)]
        noise: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve every instance file in a directory and write a CSV report.
    Bench {
        dir: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Per-instance time limit in seconds.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Reduce a 3-set packing file (one triple per line) to an instance.
    Reduce {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Random,
    Path,
    Ring,
    Planted,
}

#[derive(Serialize)]
struct Output {
    chosen: Vec<usize>,
    covered: usize,
    weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    branch_nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    leaves: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_s: Option<f64>,
}

enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

fn input_err(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| input_err(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(bytes).map_err(input_err),
    }
}

fn print_json(out: &Output) -> Result<(), CliError> {
    let line = serde_json::to_string(out).map_err(|e| CliError::Internal(e.to_string()))?;
    println!("{line}");
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| input_err(format!("missing --{flag}")))
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Solve { input, stats, tol } => {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(input_err("--tol must be a nonnegative number"));
            }
            let inst = read_instance(&input)?;
            let (sol, st) = Solver::new().with_tol(tol).solve(&inst).map_err(|e| match e {
                SolveError::Internal(_) => CliError::Internal(e.to_string()),
                other => input_err(other),
            })?;
            print_json(&Output {
                chosen: sol.chosen,
                covered: sol.covered,
                weight: sol.weight,
                branch_nodes: stats.then_some(st.branch_nodes),
                leaves: stats.then_some(st.leaves),
                max_depth: stats.then_some(st.max_depth),
                elapsed_s: stats.then_some(st.elapsed_secs()),
            })
        }
        Command::Oracle { input } => {
            let inst = read_instance(&input)?;
            let sol = brute_force(&inst).map_err(input_err)?;
            print_json(&Output {
                chosen: sol.chosen,
                covered: sol.covered,
                weight: sol.weight,
                branch_nodes: None,
                leaves: None,
                max_depth: None,
                elapsed_s: None,
            })
        }
        Command::Gen {
            kind,
            m,
            n,
            max_size,
            overlap,
            k,
            noise,
            seed,
            output,
        } => {
            let text = match kind {
                GenKind::Random => {
                    let cfg = GenConfig {
                        seed,
                        n: need(n, "n")?,
                        m: need(m, "m")?,
                        max_size: need(max_size, "max-size")?,
                        overlap: need(overlap, "overlap")?,
                    };
                    gen_random(&cfg).map_err(input_err)?.to_text()
                }
                GenKind::Path => gen_path(need(m, "m")?, seed).map_err(input_err)?.to_text(),
                GenKind::Ring => gen_ring(need(m, "m")?, seed).map_err(input_err)?.to_text(),
                GenKind::Planted => {
                    let (inst, planted) = gen_planted(need(n, "n")?, need(k, "k")?, noise, seed).map_err(input_err)?;
                    let planted: Vec<String> = planted.iter().map(ToString::to_string).collect();
                    format!("# planted: {}\n{}", planted.join(" "), inst.to_text())
                }
            };
            write_output(output.as_deref(), text.as_bytes())
        }
        Command::Bench { dir, output, timeout } => {
            let timeout = match timeout {
                Some(t) if t.is_finite() && t >= 0.0 => Some(Duration::from_secs_f64(t)),
                Some(_) => return Err(input_err("--timeout must be a nonnegative number")),
                None => None,
            };
            let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                .map_err(|e| input_err(format!("{}: {e}", dir.display())))?
                .filter_map(Result::ok)
                .map(|entry| entry.path())
                .filter(|p| p.is_file())
                .filter(|p| !p.file_name().is_some_and(|f| f.to_string_lossy().starts_with('.')))
                .collect();
            paths.sort();
            let corpus = paths.iter().map(|p| read_instance(p)).collect::<Result<Vec<_>, _>>()?;
            let rows = bench_corpus(&corpus, timeout);
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(|e| CliError::Internal(e.to_string()))?;
            write_output(output.as_deref(), &buf)
        }
        Command::Reduce { input, output } => {
            let text = fs::read_to_string(&input).map_err(|e| input_err(format!("{}: {e}", input.display())))?;
            let packing = PackingInstance::parse(&text).map_err(input_err)?;
            let inst = reduce_3set_packing(&packing).map_err(input_err)?;
            write_output(output.as_deref(), inst.to_text().as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                CliError::Input(m) | CliError::Internal(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
