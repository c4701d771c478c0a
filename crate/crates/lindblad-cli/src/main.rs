//! `lindblad` — experiment orchestration over the core library.
//!
//! One subcommand per experiment; shared flags; CSV (RFC-4180) or JSON
//! reports on stdout or `--out`.  Exit codes: 0 all checks passed, 1 a
//! measured value violated its bound, 2 configuration error.  Errors go to
//! stderr with an `error[config]:` / `error[assert]:` prefix.

mod commands;
mod report;
mod schema;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{CliError, Opts};
use report::Format;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "lindblad", version, about = "Lindblad-evolution constructions, sweeps and certified error bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Lindblad spec file (JSON: n, H terms, L jump rows)
    #[arg(long, global = true, value_name = "PATH")]
    spec: Option<PathBuf>,

    /// Evolution time
    #[arg(long, global = true, value_name = "R")]
    t: Option<f64>,

    /// Target precision
    #[arg(long, global = true, value_name = "R")]
    eps: Option<f64>,

    /// Per-segment iteration count
    #[arg(long, global = true, value_name = "N")]
    r: Option<usize>,

    /// Comma-separated integer grid (stage counts N, or r values for the
    /// oaa-sweep / segment-defect subcommands)
    #[arg(long = "n-grid", global = true, value_delimiter = ',', value_name = "LIST")]
    n_grid: Vec<usize>,

    /// Comma-separated δ grid
    #[arg(long = "delta-grid", global = true, value_delimiter = ',', value_name = "LIST")]
    delta_grid: Vec<f64>,

    /// Seed for every sampled state and spec
    #[arg(long, global = true, default_value_t = 0, value_name = "U64")]
    seed: u64,

    /// Worker threads for independent sweep points
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Report file (stdout when absent)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Print the report columns for this subcommand and exit
    #[arg(long, global = true)]
    schema: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Norm chain and generator diamond bounds for one spec
    Norms,
    /// Block-encoding reconstruction check on random states
    Lemma1,
    /// Standard-LCU vs weak-measurement success probabilities
    StdVsNew,
    /// Diamond error of the one-step map vs e^{Lδ}, with slope
    MdeltaSweep,
    /// Diamond error of the first-order map vs e^{δL}, with slope
    FirstorderSweep,
    /// Amplified-segment distance ‖FΨ − Φ‖ against r, both δ schedules
    OaaSweep,
    /// Trace-preservation defect of the r-slot segment vs r(δΛ)²
    SegmentDefect,
    /// End-to-end segmented simulation with a certified error interval
    Simulate,
    /// Ancilla weight-truncation: discarded mass and diamond gap per cutoff
    Truncation,
    /// Gate-count report from the counting model
    Cost,
    /// Reset-rotate-trace discretization error against stage count
    Fig1Sweep,
    /// Smallest passing interaction angle per stage count
    LowerBoundScan,
    /// Local-Hamiltonian approximation distance against δ
    LocalApprox,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                e.exit();
            }
            eprintln!("error[config]: {e}");
            std::process::exit(2);
        }
    };

    if cli.schema {
        print!("{}", schema::describe(cli.cmd));
        return;
    }
    if cli.jobs == 0 {
        eprintln!("error[config]: --jobs must be ≥ 1");
        std::process::exit(2);
    }

    let opts = Opts {
        spec: cli.spec,
        t: cli.t,
        eps: cli.eps,
        r: cli.r,
        n_grid: cli.n_grid,
        delta_grid: cli.delta_grid,
        seed: cli.seed,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .expect("thread pool");
    let result = pool.install(|| match cli.cmd {
        Cmd::Norms => commands::run_norms(&opts),
        Cmd::Lemma1 => commands::run_lemma1(&opts),
        Cmd::StdVsNew => commands::run_std_vs_new(&opts),
        Cmd::MdeltaSweep => commands::run_mdelta_sweep(&opts),
        Cmd::FirstorderSweep => commands::run_firstorder_sweep(&opts),
        Cmd::OaaSweep => commands::run_oaa_sweep(&opts),
        Cmd::SegmentDefect => commands::run_segment_defect(&opts),
        Cmd::Simulate => commands::run_simulate(&opts),
        Cmd::Truncation => commands::run_truncation(&opts),
        Cmd::Cost => commands::run_cost(&opts),
        Cmd::Fig1Sweep => commands::run_fig1_sweep(&opts),
        Cmd::LowerBoundScan => commands::run_lower_bound_scan(&opts),
        Cmd::LocalApprox => commands::run_local_approx(&opts),
    });

    match result {
        Ok(mut rep) => {
            rep.config.push((
                "format".into(),
                match cli.format {
                    FormatArg::Csv => "csv".into(),
                    FormatArg::Json => "json".into(),
                },
            ));
            let fmt = match cli.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
            if let Err(e) = rep.write(fmt, cli.out.as_deref()) {
                eprintln!("error[config]: cannot write report: {e}");
                std::process::exit(2);
            }
            if !rep.pass {
                eprintln!("error[assert]: {}: one or more checks failed", rep.subcommand);
                std::process::exit(1);
            }
        }
        Err(CliError::Config(msg)) => {
            eprintln!("error[config]: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Assert(msg)) => {
            eprintln!("error[assert]: {msg}");
            std::process::exit(1);
        }
    }
}
