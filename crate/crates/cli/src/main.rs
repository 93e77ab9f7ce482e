//! Command-line front end: single-instance completion, independent
//! verification of matrix files, exhaustive batch sweeps, connection
//! emission, and graph export.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 mathematically no
//! solution (or a failed --expect).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilcomplete::engine::{run, EngineOptions};
use nilcomplete::{
    canonical_nr_graph, emit, is_nilpotent, jordan_type, Error, IntMatrix, Partition,
};

#[derive(Parser)]
#[command(name = "nilcomplete", version, about = "Binary sparse upper completions of N_r with prescribed nilpotent type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Dense,
    Triplets,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MatrixFormat {
    Dense,
    Triplets,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the strictly upper triangular binary X with N_r + X
    /// nilpotent of type lambda
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Partition as comma-separated parts, e.g. 5,4,1
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Format::Triplets)]
        format: Format,
        /// Certify the result with the exact Jordan-type oracle
        #[arg(long)]
        verify: bool,
        /// Write the graft trace as JSON lines to this path
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Check the engine invariants at every iteration boundary
        #[arg(long)]
        check: bool,
    },
    /// Certify nilpotency and Jordan type of a matrix read from a file
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Dense)]
        format: MatrixFormat,
        /// Dimension (required for triplet input)
        #[arg(long)]
        n: Option<usize>,
        /// Fail (exit 2) unless the certified type equals this partition
        #[arg(long)]
        expect: Option<String>,
    },
    /// Run and oracle-verify every (n, r, lambda) with n <= max-n
    Batch {
        #[arg(long)]
        max_n: usize,
        /// Disable the per-instance thread fan-out
        #[arg(long)]
        serial: bool,
    },
    /// Emit the homogeneous Coxeter connection one-form coefficient
    Connection {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        lambda: String,
        /// Also print a human-readable rendering
        #[arg(long)]
        render: bool,
    },
    /// Export the initial or completed graph
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        lambda: Option<String>,
        /// Export the canonical graph of N_r instead of a completion
        #[arg(long)]
        initial: bool,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        tikz: bool,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn env_check_forced() -> bool {
    std::env::var("NILCOMPLETE_CHECK").map(|v| v == "1").unwrap_or(false)
}

/// Errors mapped to exit status: 2 for provable nonexistence, 1 otherwise.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NoCompletionExists { .. } => 2,
        _ => 1,
    }
}

fn parse_lambda(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn cmd_complete(
    n: usize,
    r: usize,
    lambda: &str,
    format: Format,
    verify: bool,
    trace: Option<&Path>,
    check: bool,
) -> Result<(), (u8, String)> {
    let lambda = parse_lambda(lambda).map_err(|e| (1, e))?;
    let options = EngineOptions {
        check_invariants: check || env_check_forced(),
        trace: true,
    };
    let completion = run(n, r, &lambda, options).map_err(|e| (exit_code_for(&e), e.to_string()))?;

    if let Some(path) = trace {
        let mut lines = String::new();
        for record in &completion.trace {
            lines.push_str(&serde_json::to_string(record).unwrap());
            lines.push('\n');
        }
        fs::write(path, lines).map_err(|e| (1, format!("cannot write trace: {e}")))?;
    }

    match format {
        Format::Dense => print!("{}", completion.x().to_dense_text()),
        Format::Triplets => print!("{}", completion.x().to_triplet_text()),
        Format::Json => {
            let triplets: Vec<(usize, usize, i64)> = completion
                .x_entries()
                .iter()
                .map(|&(i, j)| (i, j, 1i64))
                .collect();
            let value = serde_json::json!({
                "n": n,
                "r": r,
                "lambda": lambda.to_string(),
                "triplets": triplets,
            });
            println!("{value}");
        }
    }

    if verify {
        let certified = jordan_type(&completion.completed_matrix())
            .map_err(|e| (1, format!("oracle rejected the completion: {e}")))?;
        if certified.partition != lambda {
            return Err((
                1,
                format!(
                    "oracle mismatch: certified {} but requested {lambda}",
                    certified.partition
                ),
            ));
        }
        println!("certified type: {}", certified.partition);
    }
    Ok(())
}

fn cmd_verify(
    input: &Path,
    format: MatrixFormat,
    n: Option<usize>,
    expect: Option<&str>,
) -> Result<(), (u8, String)> {
    let text = fs::read_to_string(input).map_err(|e| (1, format!("cannot read input: {e}")))?;
    let matrix = match format {
        MatrixFormat::Dense => {
            IntMatrix::from_dense_text(&text).map_err(|e| (1, e.to_string()))?
        }
        MatrixFormat::Triplets => {
            let n = n.ok_or((1, "--n is required for triplet input".to_string()))?;
            IntMatrix::from_triplet_text(n, &text).map_err(|e| (1, e.to_string()))?
        }
    };
    if !is_nilpotent(&matrix) {
        println!("nilpotent: no");
        if expect.is_some() {
            return Err((2, "matrix is not nilpotent".to_string()));
        }
        return Ok(());
    }
    let certified = jordan_type(&matrix).map_err(|e| (1, e.to_string()))?;
    println!("nilpotent: yes");
    println!("type: {}", certified.partition);
    if let Some(expected) = expect {
        let expected = parse_lambda(expected).map_err(|e| (1, e))?;
        if certified.partition != expected {
            return Err((
                2,
                format!("expected type {expected} but certified {}", certified.partition),
            ));
        }
    }
    Ok(())
}

fn cmd_batch(max_n: usize, serial: bool) -> Result<(), (u8, String)> {
    if max_n < 2 {
        return Err((1, "nothing to test: max-n must be at least 2".to_string()));
    }
    let report = nilcomplete::batch::sweep(max_n, !serial, true);
    println!("instances: {}", report.instances);
    println!("failures: {}", report.failures.len());
    if !report.passed() {
        for f in &report.failures {
            eprintln!("FAIL n={} r={} lambda={}: {}", f.n, f.r, f.lambda, f.reason);
        }
        return Err((1, "batch verification failed".to_string()));
    }
    Ok(())
}

fn cmd_connection(n: usize, r: usize, lambda: &str, render: bool) -> Result<(), (u8, String)> {
    let lambda = parse_lambda(lambda).map_err(|e| (1, e))?;
    let form = emit(n, r, &lambda).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    let json = form.to_json().map_err(|e| (1, e.to_string()))?;
    println!("{json}");
    if render {
        print!("{}", form.render());
    }
    Ok(())
}

fn cmd_graph(
    n: usize,
    r: usize,
    lambda: Option<&str>,
    initial: bool,
    dot: bool,
    tikz: bool,
    out: Option<&Path>,
) -> Result<(), (u8, String)> {
    if dot && tikz {
        return Err((1, "choose one of --dot or --tikz".to_string()));
    }
    let graph = if initial {
        canonical_nr_graph(n, r).map_err(|e| (1, e.to_string()))?
    } else {
        let lambda = lambda.ok_or((1, "--lambda is required without --initial".to_string()))?;
        let lambda = parse_lambda(lambda).map_err(|e| (1, e))?;
        run(n, r, &lambda, EngineOptions { check_invariants: env_check_forced(), trace: false })
            .map_err(|e| (exit_code_for(&e), e.to_string()))?
            .graph
    };
    let text = if tikz { graph.to_tikz() } else { graph.to_dot() };
    match out {
        Some(path) => fs::write(path, text).map_err(|e| (1, format!("cannot write output: {e}")))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Complete { n, r, lambda, format, verify, trace, check } => {
            cmd_complete(*n, *r, lambda, *format, *verify, trace.as_deref(), *check)
        }
        Command::Verify { input, format, n, expect } => {
            cmd_verify(input, *format, *n, expect.as_deref())
        }
        Command::Batch { max_n, serial } => cmd_batch(*max_n, *serial),
        Command::Connection { n, r, lambda, render } => cmd_connection(*n, *r, lambda, *render),
        Command::Graph { n, r, lambda, initial, dot, tikz, out } => cmd_graph(
            *n,
            *r,
            lambda.as_deref(),
            *initial,
            *dot,
            *tikz,
            out.as_deref(),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
