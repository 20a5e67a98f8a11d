use chatelet::cli::{Command, Report, RunOptions, SpecFile};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Descent data for conic bundle surfaces y^2 - a z^2 = F(x,1).
#[derive(Parser)]
#[command(name = "chatelet", version, about)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the surface hypotheses and report per-check outcomes
    Validate(Common),
    /// Lattice invariants: alpha, beta, Picard ranks, Tate cohomology, cone
    Invariants(Common),
    /// Invariants of the quadratic field Q(sqrt(a))
    FieldInfo(Common),
    /// The finite torsor class sets Sigma, M and their product
    TorsorClasses(Common),
    /// Verify the partition of points across classes up to a height bound
    PartitionCheck {
        #[command(flatten)]
        common: Common,
        /// height bound
        #[arg(long)]
        bound: u64,
    },
    /// Count points of bounded height with per-class tallies
    Count {
        #[command(flatten)]
        common: Common,
        /// height bound
        #[arg(long)]
        bound: u64,
    },
    /// Representation sum over the coefficient window [-x, x]^2
    SumRa {
        #[command(flatten)]
        common: Common,
        /// window half-width
        #[arg(long)]
        x: u64,
    },
    /// Truncated local densities at a prime
    Density {
        #[command(flatten)]
        common: Common,
        /// the prime p; falls back to the spec file's density_primes
        #[arg(long)]
        p: Option<u64>,
        /// number of truncation levels; falls back to truncation_levels
        #[arg(long)]
        levels: Option<u32>,
    },
}

#[derive(clap::Args)]
struct Common {
    /// surface description file (JSON)
    spec: PathBuf,
    /// write the report here instead of stdout only
    #[arg(long)]
    out: Option<PathBuf>,
    /// seed for sampling-mode randomness
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// worker cap; defaults to $TORSOR_JOBS, then all cores
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (common, command) = match &args.command {
        Cmd::Validate(c) => (c, Command::Validate),
        Cmd::Invariants(c) => (c, Command::Invariants),
        Cmd::FieldInfo(c) => (c, Command::FieldInfo),
        Cmd::TorsorClasses(c) => (c, Command::TorsorClasses),
        Cmd::PartitionCheck { common, bound } => {
            (common, Command::PartitionCheck { bound: *bound })
        }
        Cmd::Count { common, bound } => (common, Command::Count { bound: *bound }),
        Cmd::SumRa { common, x } => (common, Command::SumRa { x: *x }),
        Cmd::Density { common, p, levels } => (
            common,
            Command::Density {
                p: *p,
                levels: *levels,
            },
        ),
    };
    let file = match SpecFile::load(&common.spec) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("cannot read spec file: {}", e);
            return ExitCode::from(1);
        }
    };
    let jobs = common.jobs.or_else(|| {
        std::env::var("TORSOR_JOBS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    let opts = RunOptions {
        seed: common.seed,
        jobs,
        ..RunOptions::default()
    };
    let (report, code) = chatelet::cli::run(&command, &file, &opts);
    let text = render(&report);
    println!("{}", text);
    if let Some(out) = &common.out {
        if let Err(e) = std::fs::write(out, &text) {
            eprintln!("cannot write report: {}", e);
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code as u8)
}

fn render(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
