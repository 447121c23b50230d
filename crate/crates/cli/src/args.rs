use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use discordant::{DiscordMeasure, OptimizerConfig, Subsystem};

#[derive(Debug, Parser)]
#[command(name = "discordant", version, about = "Entropies, quantum discord and demon work ledgers for bipartite states")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every command. Precedence: flag, then environment, then default.
#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for the optimizer's random starting points.
    #[arg(long, global = true, env = "DISCORDANT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Random starts per optimization (the eigenbasis start comes on top).
    #[arg(long, global = true, env = "DISCORDANT_RESTARTS", default_value_t = 20,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,
    /// Simplex value-spread tolerance.
    #[arg(long, global = true, env = "DISCORDANT_TOL", default_value_t = 1e-9, value_parser = positive_f64)]
    pub tol: f64,
    /// Evaluation budget per start.
    #[arg(long, global = true, env = "DISCORDANT_MAX_EVALS", default_value_t = 5000)]
    pub max_evals: usize,
    /// Worker threads for optimizer restarts (default: all cores).
    #[arg(long, global = true, env = "DISCORDANT_THREADS")]
    pub threads: Option<usize>,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timing (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl GlobalOpts {
    pub fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts as usize,
            include_eigenbasis_seed: true,
            tolerance: self.tol,
            max_evaluations: self.max_evals,
            seed: self.seed,
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: entropies, all discords on both sides, classification, demon ledger.
    Analyze(StateInput),
    /// Zero-discord test (exit 0 ZERO, 1 NONZERO, 4 AMBIGUOUS).
    Classify {
        #[command(flatten)]
        input: StateInput,
        #[arg(long, value_enum, default_value_t = Side::A)]
        side: Side,
    },
    /// A single discord measure.
    Discord {
        #[command(flatten)]
        input: StateInput,
        /// d1, d2, d3 or d3sym.
        #[arg(long, default_value = "d1", value_parser = parse_measure)]
        measure: DiscordMeasure,
        #[arg(long, value_enum, default_value_t = Side::A)]
        side: Side,
    },
    /// Work extractable in the four Szilard-engine scenarios.
    Demon {
        #[command(flatten)]
        input: StateInput,
        /// Energy unit kT.
        #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
        kt: f64,
    },
    /// Recompute the discord column of the local-distinguishability table.
    Table1 {
        /// `a=<weight>` for the Bell-mixture row.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// List state families or emit a state document.
    #[command(subcommand)]
    States(StatesCommand),
}

#[derive(Debug, Subcommand)]
pub enum StatesCommand {
    /// Family names and their parameters.
    List,
    /// Print the JSON document for a family.
    Emit {
        family: String,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Emit the explicit density matrix instead of the family form.
        #[arg(long)]
        explicit: bool,
    },
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "family"])))]
pub struct StateInput {
    /// State document (JSON); `-` reads standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Named state family.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameter; lists use `,` and tables `;` (e.g. `w=0.5,0;0,0.5`).
    #[arg(long = "param", value_name = "KEY=VALUE", requires = "family")]
    pub params: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    #[value(alias = "a")]
    A,
    #[value(alias = "b")]
    B,
}

impl From<Side> for Subsystem {
    fn from(s: Side) -> Self {
        match s {
            Side::A => Subsystem::A,
            Side::B => Subsystem::B,
        }
    }
}

fn parse_measure(s: &str) -> Result<DiscordMeasure, String> {
    s.parse::<DiscordMeasure>().map_err(|e| e.to_string())
}
