//! `gquot`: good quotients of toric varieties from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical verdict is
//! negative, 2 for unreadable or inconsistent input.

mod commands;
mod problem;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gquot::Report;

use commands::Settings;
use problem::{InputError, Problem};

#[derive(Parser)]
#[command(name = "gquot", version, about = "Exact good quotients of toric varieties by subtorus actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for every sampling step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Box size for the invariant-character and Hilbert-basis oracles.
    #[arg(long, global = true, default_value_t = 3)]
    bound: usize,
    /// Refuse enumerations with more open subsets than this.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    max_subsets: usize,
    /// Directory for report.txt and report.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Rendering printed on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the fan; report completeness and simpliciality.
    Check { file: PathBuf },
    /// Good quotient of a selection by the subtorus.
    Quotient {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        selection: String,
    },
    /// Maximal open subsets with a good quotient.
    EnumerateMaximal {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u8,
    },
    /// Cox presentation, optionally verifying a witness family of sections.
    Cox {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        selection: String,
        #[arg(long)]
        family: Option<String>,
    },
    /// Intersection of the symmetry translates of a selection.
    WSet {
        file: PathBuf,
        #[arg(long)]
        selection: String,
    },
    /// Conclusions for the translate intersection of a maximal selection.
    VerifyTheorem {
        file: PathBuf,
        #[arg(long)]
        selection: String,
    },
    /// Conclusions for all maximal selections and all invariant good selections.
    VerifyCorollary { file: PathBuf },
    /// Identity for translate intersections of a saturated subset.
    Eq1Check {
        file: PathBuf,
        /// The ambient selection X'.
        #[arg(long)]
        ambient: String,
        /// The open subset X of X'.
        #[arg(long)]
        selection: String,
    },
    /// Brute-force sweeps over the built-in corpus or the given fan.
    OracleSweep {
        file: Option<PathBuf>,
        /// Only the first N corpus fans.
        #[arg(long)]
        limit: Option<usize>,
    },
}

fn load(path: &Path) -> Result<Problem, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::plain(format!("cannot read {}: {e}", path.display())))?;
    problem::parse(&text)
}

fn run(cmd: &Command, s: Settings) -> Result<Report, InputError> {
    match cmd {
        Command::Check { file } => Ok(commands::check(&load(file)?)),
        Command::Quotient { file, selection } => commands::quotient(&load(file)?, selection, s),
        Command::EnumerateMaximal { file, k } => commands::enumerate_maximal(&load(file)?, *k, s),
        Command::Cox { file, selection, family } => commands::cox(&load(file)?, selection, family.as_deref(), s),
        Command::WSet { file, selection } => commands::w_set_cmd(&load(file)?, selection),
        Command::VerifyTheorem { file, selection } => commands::verify_theorem(&load(file)?, selection, s),
        Command::VerifyCorollary { file } => commands::verify_corollary_cmd(&load(file)?, s),
        Command::Eq1Check { file, ambient, selection } => commands::eq1(&load(file)?, ambient, selection),
        Command::OracleSweep { file, limit } => {
            let p = file.as_deref().map(load).transpose()?;
            Ok(commands::oracle_sweep(p.as_ref(), *limit, s))
        }
    }
}

fn write_reports(dir: &Path, r: &Report) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    std::fs::write(dir.join("report.txt"), r.to_text()).context("writing report.txt")?;
    std::fs::write(dir.join("report.json"), r.to_json()).context("writing report.json")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        seed: cli.common.seed,
        bound: cli.common.bound,
        max_subsets: cli.common.max_subsets,
    };
    let report = match run(&cli.command, settings) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gquot: input error: {e}");
            return ExitCode::from(2);
        }
    };
    match cli.common.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    if let Some(dir) = &cli.common.out {
        if let Err(e) = write_reports(dir, &report) {
            eprintln!("gquot: {e:#}");
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
