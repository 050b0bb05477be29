//! Command-line front end for `tnnatlas`.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "tnnatlas",
    version,
    about = "Cells, posets and loop-group atlases of totally nonnegative Grassmannians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this file in addition to stdout output.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print human-readable text instead of JSON.
    #[arg(long, global = true)]
    ascii: bool,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for verification sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock timings in reports; they make output nondeterministic.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bounded affine permutations of Bound(k, n) with their (v, w) labels.
    Cells {
        /// Grassmannian rank.
        k: usize,
        /// Ambient dimension.
        n: usize,
    },
    /// The poset Q_J for Gr(k, n) with cover relations and analytics.
    Poset {
        /// Grassmannian rank.
        k: usize,
        /// Ambient dimension.
        n: usize,
    },
    /// Grassmann necklace of a bounded affine permutation in window form.
    Necklace {
        /// Window notation, e.g. "[2,4,5,7]".
        h: String,
        /// Ambient dimension; inferred from the other arguments when omitted
        #[arg(long)]
        n: Option<usize>,
    },
    /// Le-diagram of the cell (v, w).
    Lediagram {
        /// Lower permutation in one-line notation.
        v: String,
        /// Upper permutation in one-line notation.
        w: String,
        /// Grassmannian rank.
        #[arg(long)]
        k: usize,
        /// Ambient dimension; inferred from the other arguments when omitted
        #[arg(long)]
        n: Option<usize>,
    },
    /// Symbolic Marsh–Rietsch parametrization of the cell (v, w).
    Mr {
        /// Lower permutation in one-line notation.
        v: String,
        /// Upper permutation in one-line notation.
        w: String,
        /// Ambient dimension; inferred from the other arguments when omitted
        #[arg(long)]
        n: Option<usize>,
    },
    /// Snider matrix of the generic point of the chart u and its affine cell.
    Snider {
        /// Chart permutation in one-line notation.
        u: String,
        /// Grassmannian rank.
        #[arg(long)]
        k: usize,
        /// Ambient dimension; inferred from the other arguments when omitted
        #[arg(long)]
        n: Option<usize>,
    },
    /// Fomin–Shapiro split of the generic point of the chart u relative to g.
    Fs {
        /// Chart permutation in one-line notation.
        u: String,
        /// Affine permutation in window notation.
        g: String,
        /// Grassmannian rank.
        #[arg(long)]
        k: usize,
        /// Ambient dimension; inferred from the other arguments when omitted
        #[arg(long)]
        n: Option<usize>,
    },
    /// Verification sweeps; exit code 1 if any case fails.
    Verify {
        kind: VerifyKind,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Random points per case for sampling checks.
        #[arg(long, default_value_t = 5)]
        points: usize,
        /// Random instances per (n, k) for the cg check.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Stop starting new cases after this many seconds (conjecture and zeta-positivity).
        #[arg(long)]
        budget_seconds: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Iso,
    Topology,
    Psi,
    Conjecture,
    ZetaPositivity,
    Snider,
    Truncation,
    Cg,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Cells { k, n } => commands::cells(*k, *n),
        Command::Poset { k, n } => commands::poset(*k, *n),
        Command::Necklace { h, n } => commands::necklace(h, *n),
        Command::Lediagram { v, w, k, n } => commands::lediagram(v, w, *k, *n),
        Command::Mr { v, w, n } => commands::mr(v, w, *n),
        Command::Snider { u, k, n } => commands::snider(u, *k, *n),
        Command::Fs { u, g, k, n } => commands::fs(u, g, *k, *n),
        Command::Verify {
            kind,
            nmax,
            points,
            instances,
            budget_seconds,
        } => commands::verify(*kind, *nmax, *points, *instances, *budget_seconds, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = std::time::Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let wall_ms = cli.timings.then(|| start.elapsed().as_millis() as u64);
    let json = outcome.report_json(cli.seed, wall_ms);
    let write = |path: &PathBuf| std::fs::write(path, format!("{json}\n"));
    for path in [&cli.json, &cli.out].into_iter().flatten() {
        if let Err(e) = write(path) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if cli.ascii {
        print!("{}", outcome.text);
    } else if cli.out.is_none() {
        println!("{json}");
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
