mod commands;
mod repro;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "m3lattice", version, about = "Balanced triples, modularity rank and tensor products of finite lattices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    #[arg(long, global = true, default_value = "m3", help = format!("Lattice: {}", spec::SPEC_HELP))]
    pub lattice: String,
    #[arg(long, global = true, value_enum, default_value_t = Report::Text)]
    pub report: Report,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for `random:` lattices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on stabilization indices or divergence steps.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Include long-running scans.
    #[arg(long, global = true)]
    pub extended: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Dhw,
    Fig2,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum CpeMode {
    Atom,
    Diag,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a lattice file and check the lattice axioms.
    Validate { path: PathBuf },
    /// Size, bounds, modular/distributive flags and modularity rank.
    Info {
        /// Also write the lattice as JSON to this path.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Modularity rank by exhaustive scan.
    Rank {
        /// Only check the identity γ_n.
        #[arg(long)]
        gamma: Option<usize>,
        /// Scan three-element antichains and report per-index counts.
        #[arg(long)]
        antichains: bool,
    },
    /// Build M_3[L] from balanced triples.
    M3build {
        #[arg(long)]
        write: Option<PathBuf>,
        /// Also compute the rank of M_3[L].
        #[arg(long)]
        rank: bool,
    },
    /// Build M_4[L] from balanced quadruples.
    M4build {
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Congruence lattice, optionally checking the extension to M_3[L].
    Con {
        #[arg(long, value_enum)]
        cpe: Option<CpeMode>,
    },
    /// Tensor product with a second lattice.
    Tensor {
        /// Right-hand factor.
        #[arg(long, default_value = "c2")]
        with: String,
        /// Cross-check bi-ideals against join-to-meet maps.
        #[arg(long)]
        verify: bool,
        /// Compare M_3 ⊗ L with M_3[L] instead.
        #[arg(long)]
        m3: bool,
    },
    /// Run a non-stabilizing adjustment sequence on an infinite lattice.
    Diverge {
        #[arg(long, value_enum)]
        oracle: Oracle,
        #[arg(long)]
        steps: Option<usize>,
        /// Print every iterate in this format.
        #[arg(long, value_enum)]
        trace: Option<Report>,
    },
    /// Recompute the published figures and the derived checks.
    Repro {
        /// Run only checks whose id contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
}

pub enum Failure {
    /// A computed check did not hold.
    Check,
    /// Bad lattice specification or input file.
    Input(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let g = &cli.global;
    let result = match &cli.command {
        Command::Validate { path } => commands::validate(g, path),
        Command::Info { write } => commands::info(g, write.as_deref()),
        Command::Rank { gamma, antichains } => commands::rank(g, *gamma, *antichains),
        Command::M3build { write, rank } => commands::m3build(g, write.as_deref(), *rank),
        Command::M4build { write } => commands::m4build(g, write.as_deref()),
        Command::Con { cpe } => commands::con(g, *cpe),
        Command::Tensor { with, verify, m3 } => commands::tensor(g, with, *verify, *m3),
        Command::Diverge { oracle, steps, trace } => commands::diverge(g, *oracle, *steps, *trace),
        Command::Repro { filter } => repro::run(g, filter.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
