use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use algmatroid::engine::{CircuitMethod, Engine};
use algmatroid_cli::{exit, exit_code, load, run, Command, DecorationSelection, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "algmatroid", version, about = "Algebraic matroids of prime ideals and parametrizations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Rank oracle.
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Auto)]
    engine: EngineArg,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// S-pairs allowed per Gröbner basis computation.
    #[arg(long, global = true)]
    budget_pairs: Option<u64>,
    /// Basis elements allowed per Gröbner basis computation.
    #[arg(long, global = true)]
    budget_basis: Option<usize>,
    /// Attempts allowed for random sampling.
    #[arg(long, global = true)]
    budget_retries: Option<usize>,
    /// Wall-clock limit in seconds; the process exits with code 2 when it runs out.
    #[arg(long, global = true)]
    budget_time: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Replace the problem's group action; one generator in cycle notation per flag.
    #[arg(long, global = true, conflicts_with = "no_action")]
    action: Vec<String>,
    /// Ignore the problem's group action.
    #[arg(long, global = true)]
    no_action: bool,
    /// Allow the linear engine in positive characteristic (results are uncertified).
    #[arg(long, global = true)]
    allow_uncertified: bool,
    /// Write JSON here and print a summary instead.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Symbolic,
    Linear,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Naive,
    Exchange,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank of a set of ground-set labels.
    Rank {
        problem: PathBuf,
        /// Labels; none means the empty set.
        labels: Vec<String>,
        /// The whole ground set.
        #[arg(long, conflicts_with = "labels")]
        all: bool,
    },
    /// Enumerate the bases.
    Bases { problem: PathBuf },
    /// Enumerate the circuits.
    Circuits {
        problem: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Naive)]
        method: MethodArg,
    },
    /// Circuit polynomials and base degrees.
    Decorate {
        problem: PathBuf,
        #[arg(long)]
        no_bases: bool,
        #[arg(long)]
        no_circuits: bool,
        /// Keep degrees and histograms, drop polynomials.
        #[arg(long)]
        summary_only: bool,
    },
    /// Locus where specializing the Jacobian changes the matroid.
    NmLocus { problem: PathBuf },
    /// Verify matroid axioms, duality and engine agreement.
    Check {
        /// Problem to compute and verify.
        #[arg(required_unless_present = "matroid")]
        problem: Option<PathBuf>,
        /// Verify a matroid JSON file instead.
        #[arg(long)]
        matroid: Option<PathBuf>,
        /// Compare symbolic and linear ranks on this many random subsets.
        #[arg(long, default_value_t = 0)]
        cross_engine: usize,
        /// Skip the comparison with exchange-closure circuits.
        #[arg(long)]
        no_exchange: bool,
    },
    /// Implicit equations of a parametrization.
    Implicitize { problem: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;

    if let Some(jobs) = g.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INPUT as u8);
        }
    }
    if let Some(secs) = g.budget_time {
        if !(secs.is_finite() && secs > 0.0) {
            eprintln!("error: --budget-time must be positive");
            return ExitCode::from(exit::INPUT as u8);
        }
        std::thread::spawn(move || {
            std::thread::sleep(Duration::from_secs_f64(secs));
            eprintln!("error: resource budget exceeded: time limit of {secs} s");
            std::process::exit(exit::BUDGET);
        });
    }

    let mut cfg = RunConfig::default();
    cfg.engine.engine = match g.engine {
        EngineArg::Symbolic => Engine::Symbolic,
        EngineArg::Linear => Engine::Linear,
        EngineArg::Auto => Engine::Auto,
    };
    cfg.engine.sample.seed = g.seed;
    cfg.engine.sample.allow_uncertified = g.allow_uncertified;
    if let Some(p) = g.budget_pairs {
        cfg.engine.budget.max_pairs = p;
    }
    if let Some(b) = g.budget_basis {
        cfg.engine.budget.max_basis = b;
    }
    if let Some(r) = g.budget_retries {
        cfg.engine.sample.retries = r;
    }
    cfg.action = g.action.clone();
    cfg.no_action = g.no_action;
    cfg.engine.use_action = !g.no_action;

    let (path, cmd) = match &cli.command {
        Cmd::Rank { problem, labels, all } => (Some(problem), Command::Rank { labels: labels.clone(), all: *all }),
        Cmd::Bases { problem } => (Some(problem), Command::Bases),
        Cmd::Circuits { problem, method } => {
            cfg.engine.circuit_method = match method {
                MethodArg::Naive => CircuitMethod::Naive,
                MethodArg::Exchange => CircuitMethod::Exchange,
            };
            (Some(problem), Command::Circuits)
        }
        Cmd::Decorate { problem, no_bases, no_circuits, summary_only } => {
            cfg.decorations = DecorationSelection { bases: !no_bases, circuits: !no_circuits, summary_only: *summary_only };
            (Some(problem), Command::Decorate)
        }
        Cmd::NmLocus { problem } => (Some(problem), Command::NmLocus),
        Cmd::Check { problem, matroid, cross_engine, no_exchange } => (
            problem.as_ref(),
            Command::Check { matroid: matroid.clone(), cross_engine: *cross_engine, exchange: !no_exchange },
        ),
        Cmd::Implicitize { problem } => (Some(problem), Command::Implicitize),
    };

    let result = path.map(|p| load(p, &cfg)).transpose().and_then(|problem| run(problem.as_ref(), &cmd, &cfg));
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let json = output.render();
    match &g.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(exit::INPUT as u8);
            }
            print!("{}", output.summary);
        }
        None => print!("{json}"),
    }
    ExitCode::from(output.status.exit_code() as u8)
}
