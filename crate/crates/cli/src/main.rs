use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use suction_cli::commands::{self, CalibrateArgs, CliError, CliResult, LayoutArgs, Output};
use suction_cli::{Config, Format};

/// Vacuum gripper design checks for cut fabric pieces.
#[derive(Parser)]
#[command(name = "suction", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Exit with status 3 when the computation raises any advisory.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// Scenario config file (TOML).
    #[arg(long, short)]
    config: PathBuf,
}

#[derive(Args)]
struct LayoutFlags {
    /// Grid pitch, e.g. `5cm`; bare numbers are metres.
    #[arg(long)]
    spacing: Option<String>,

    /// Edge-to-gripper margin, e.g. `2cm`; bare numbers are metres.
    #[arg(long)]
    margin: Option<String>,
}

impl From<LayoutFlags> for LayoutArgs {
    fn from(f: LayoutFlags) -> Self {
        LayoutArgs {
            spacing: f.spacing,
            margin: f.margin,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Theoretical holding force of the fabric piece.
    Force(ConfigArg),
    /// Cup vacuum needed to supply the holding force.
    Pressure(ConfigArg),
    /// Constriction losses along the vacuum line.
    LineLoss(ConfigArg),
    /// Gripper grid and per-position grabbing-circle inflation.
    Plan {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        layout: LayoutFlags,
        /// Write the layout drawing here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Spacing intervals that reproduce a target gripper count.
    Calibrate {
        #[command(flatten)]
        config: ConfigArg,
        /// Gripper count to reproduce; defaults to the [cup] count.
        #[arg(long)]
        target_count: Option<usize>,
        /// Spacing scan range `LO,HI`.
        #[arg(long, default_value = "1cm,15cm")]
        range: String,
        /// Spacing scan step.
        #[arg(long, default_value = "1mm")]
        step: String,
        /// Edge-to-gripper margin.
        #[arg(long)]
        margin: Option<String>,
    },
    /// Full feasibility check of one scenario.
    Check {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        layout: LayoutFlags,
        /// Write the layout drawing here (needs a [vgtc] section).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Evaluate every row of a corpus file on the standard rig.
    Batch {
        /// Corpus CSV; the bundled table is used when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

fn load(arg: &ConfigArg) -> CliResult<Config> {
    Ok(Config::parse(&commands::read_text(&arg.config)?)?)
}

fn run(cli: Cli) -> CliResult<Output> {
    let format = cli.format;
    match cli.command {
        Command::Force(c) => commands::force(&load(&c)?, format),
        Command::Pressure(c) => commands::pressure(&load(&c)?, format),
        Command::LineLoss(c) => commands::line_loss_cmd(&load(&c)?, format),
        Command::Plan {
            config,
            layout,
            svg,
        } => commands::plan(&load(&config)?, format, &layout.into(), svg.as_deref()),
        Command::Calibrate {
            config,
            target_count,
            range,
            step,
            margin,
        } => {
            let args = CalibrateArgs {
                target: target_count,
                range,
                step,
                margin,
            };
            commands::calibrate(&load(&config)?, format, &args)
        }
        Command::Check {
            config,
            layout,
            svg,
        } => commands::check(&load(&config)?, format, &layout.into(), svg.as_deref()),
        Command::Batch { corpus } => commands::batch(corpus.as_deref(), format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let strict = cli.strict;
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            for a in &out.advisories {
                eprintln!("advisory: {a}");
            }
            for e in &out.row_errors {
                eprintln!("error: {e}");
            }
            if !out.row_errors.is_empty() {
                let e = CliError::PartialBatch(out.row_errors.len());
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            } else if strict && !out.advisories.is_empty() {
                eprintln!(
                    "error: {} advisory(ies) escalated by --strict",
                    out.advisories.len()
                );
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
