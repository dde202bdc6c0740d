use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kef_core::KefError;

mod commands;

/// König-Egerváry structure of small graphs: invariant reports and theorem checks.
#[derive(Parser, Debug)]
#[command(name = "kef", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    caps: CapsArgs,
}

/// Work limits. Precedence: built-in defaults, then KEF_CAPS_JSON, then these flags.
#[derive(Args, Debug, Default)]
struct CapsArgs {
    /// Largest n for the exact α and μ solvers
    #[arg(long, global = true)]
    solver_n: Option<usize>,
    /// Largest n for which maximum and critical independent sets are enumerated
    #[arg(long, global = true)]
    enum_n: Option<usize>,
    /// Largest n for which all maximum matchings are listed
    #[arg(long, global = true)]
    matching_enum_n: Option<usize>,
    /// DFS steps allowed to the odd-cycle census
    #[arg(long, global = true)]
    cycle_work: Option<usize>,
    /// Most critical independent sets kept per graph
    #[arg(long, global = true)]
    crit_count: Option<usize>,
    /// Most maximum matchings kept per graph
    #[arg(long, global = true)]
    matching_count: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Graph file, or `-` for stdin
    #[arg(long, short)]
    input: Option<String>,
    /// Generator spec such as `fixture:fig2-G1` or `odd_cycle:k=2`
    #[arg(long)]
    gen: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the invariant report of each input graph as JSON
    Report {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// Write to this file instead of stdout
        #[arg(long, short)]
        out: Option<String>,
    },
    /// Check theorems on the input graphs and print one JSON verdict per line
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// Comma-separated theorem ids, or `all`
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Append failing graphs here as JSON lines
        #[arg(long, default_value = "counterexamples.jsonl")]
        store: String,
        /// Exit 3 if any check was skipped for capacity
        #[arg(long)]
        strict: bool,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, short)]
        out: Option<String>,
    },
    /// Check theorems over exhaustive or seeded random graph streams
    Fuzz {
        /// Every connected labelled graph with 1..=n-max vertices
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Seeded random graphs (the default)
        #[arg(long)]
        random: bool,
        /// With --exhaustive, keep disconnected graphs too
        #[arg(long, requires = "exhaustive")]
        include_disconnected: bool,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated random generator kinds
        #[arg(long, default_value = "odd_cycle,cycle_plus_trees,almost_bipartite_random,gnp")]
        kinds: String,
        #[arg(long, default_value = "all")]
        theorems: String,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value = "counterexamples.jsonl")]
        store: String,
        #[arg(long)]
        strict: bool,
        /// Print the summary as JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Print generated graphs
    Gen {
        /// Generator spec, e.g. `cycle_plus_trees:k=2,n=10,count=5,seed=1`
        spec: String,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        #[arg(long, short)]
        out: Option<String>,
    },
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<KefError>() {
        Some(KefError::Capacity { .. }) => 3,
        Some(KefError::Domain(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("kef: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
