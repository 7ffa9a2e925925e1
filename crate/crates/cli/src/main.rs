use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quiddity::enumerate::Budgets;
use quiddity::harness::{
    cmd_count, cmd_crosscheck, cmd_ring_info, cmd_table, Format, MethodChoice, Outcome, RunConfig,
};
use quiddity::rings::DEFAULT_SIZE_CAP;
use quiddity::Kind;

/// Count continuant roots and λ-quiddities over small finite rings.
#[derive(Debug, Parser)]
#[command(name = "quiddity", version)]
struct Cli {
    /// Maximum number of tuples visited by brute force (e.g. 100000000 or 1e8).
    #[arg(long, global = true, default_value = "1e8", value_parser = parse_budget)]
    budget_brute: u128,

    /// Largest ring whose SL2 group is enumerated for the DP.
    #[arg(long, global = true, default_value_t = 64)]
    budget_sl2: usize,

    /// Largest ring that may be built.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// JSON file caching computed counts between runs.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect a ring.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Count roots, quiddities or the sum of w over units.
    Count {
        /// roots, quiddity or sum-w
        kind: Kind,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u32,
        /// Element literal; defaults to 0 for roots and 1 for quiddity.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        /// brute, dp, formula, all or auto.
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Recompute a published table and compare cell by cell.
    Table {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// brute, dp, formula, all or auto.
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
    },
    /// Run every property check on one ring.
    Crosscheck {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        max_n: u32,
    },
}

#[derive(Debug, Subcommand)]
enum RingCommand {
    /// Size, units, locality and residue field size.
    Info { spec: String },
}

fn parse_budget(s: &str) -> Result<u128, String> {
    if let Ok(v) = s.parse::<u128>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 1.0 && v.fract() == 0.0 && v < 1e38 => Ok(v as u128),
        _ => Err(format!("expected a positive integer budget, got {s:?}")),
    }
}

fn finish(outcome: Outcome) -> ExitCode {
    print!("{}", outcome.output);
    if outcome.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = RunConfig {
        budgets: Budgets {
            brute_leaves: cli.budget_brute,
            sl2_ring_size: cli.budget_sl2,
        },
        size_cap: cli.size_cap,
        workers: cli.workers,
        cache: cli.cache,
        ..RunConfig::default()
    };
    let result = match cli.command {
        Command::Ring {
            command: RingCommand::Info { spec },
        } => cmd_ring_info(&spec, &config).map(|output| Outcome {
            output,
            all_pass: true,
        }),
        Command::Count {
            kind,
            ring,
            n,
            target,
            method,
            format,
        } => {
            config.method = method;
            config.format = format;
            cmd_count(kind, &ring, n, target.as_deref(), &config)
        }
        Command::Table {
            name,
            format,
            method,
        } => {
            config.method = method;
            config.format = format;
            cmd_table(&name, &config)
        }
        Command::Crosscheck { ring, max_n } => cmd_crosscheck(&ring, max_n, &config),
    };
    match result {
        Ok(outcome) => finish(outcome),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
