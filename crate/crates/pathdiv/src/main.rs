use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pathdiv::cli::{self, CliError, Mode, RunConfig};
use pathdiv::parallel;
use pathdiv_core::syngen::SynConfig;
use pathdiv_core::AsNumber;

/// Path diversity of AS-level announcement digraphs.
#[derive(Parser)]
#[command(name = "pathdiv", version)]
struct Opts {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Merge sources, count disjoint paths and write reports.
    Analyze {
        #[command(flatten)]
        sources: Sources,
        #[arg(long, value_enum, default_value_t = Mode::Adp)]
        mode: Mode,
    },
    /// Announcement digraph and preferred-path arborescence of one origin.
    Ppr {
        #[command(flatten)]
        sources: Sources,
        #[arg(long)]
        origin: AsNumber,
    },
    /// Generate a synthetic roster, policy file and route file.
    Gen {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 45)]
        as_count: usize,
        #[arg(long, default_value_t = 0.1)]
        provider_ratio: f64,
        #[arg(long, default_value_t = 0.05)]
        peer_probability: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
struct Sources {
    #[arg(long)]
    roster: PathBuf,
    /// Route-table AS paths; repeatable.
    #[arg(long)]
    routes: Vec<PathBuf>,
    /// Import/export declarations; repeatable.
    #[arg(long)]
    policies: Vec<PathBuf>,
    /// AS-level traceroutes; repeatable.
    #[arg(long)]
    traces: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

impl Sources {
    fn into_config(self, mode: Mode) -> Result<RunConfig, CliError> {
        Ok(RunConfig {
            roster: self.roster,
            routes: self.routes,
            policies: self.policies,
            traces: self.traces,
            out: self.out,
            mode,
            threads: parallel::threads_from_env().map_err(CliError::Usage)?,
        })
    }
}

fn run(opts: Opts) -> Result<(), CliError> {
    match opts.command {
        Command::Analyze { sources, mode } => {
            let cfg = sources.into_config(mode)?;
            let summary = cli::cmd_analyze(&cfg)?;
            if summary.dropped_loops > 0 {
                eprintln!("warning: dropped {} looped path(s)", summary.dropped_loops);
            }
            let mut line = format!("{} ASes, {} ordered pairs", summary.roster_size, summary.ordered_pairs);
            if let Some(n) = summary.diversity_excess {
                line += &format!(", diversity_excess {n}");
            }
            if let Some(n) = summary.idp_diversity_excess {
                line += &format!(", idp_diversity_excess {n}");
            }
            println!("{line}");
        }
        Command::Ppr { sources, origin } => {
            let cfg = sources.into_config(Mode::Ppr)?;
            let outcome = cli::cmd_ppr(&cfg, origin)?;
            println!(
                "AS{origin}: {} announcement arcs, {} preferred-path arcs",
                outcome.announcement_arcs,
                outcome.bgp.graph().arc_count()
            );
            let unreached: Vec<String> = outcome.bgp.unreached().iter().map(|v| v.to_string()).collect();
            println!("unreached: {}", unreached.join(" "));
        }
        Command::Gen { out, as_count, provider_ratio, peer_probability, seed } => {
            let cfg = SynConfig { as_count, provider_ratio, peer_probability, seed };
            cli::cmd_gen(&cfg, &out)?;
            println!("seed {seed}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Opts::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pathdiv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
