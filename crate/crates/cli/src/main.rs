use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dualcheck_cli::{run_suite, Format, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "dualcheck", version, about = "Exact checks of index-2 duality transport and local root numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML config; flags given here override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Extra group-table file (repeatable).
    #[arg(long = "group", global = true)]
    groups: Vec<PathBuf>,
    /// Skip the built-in battery of groups.
    #[arg(long, global = true)]
    no_battery: bool,
    /// Odd prime for the local suites (repeatable).
    #[arg(long = "p", global = true)]
    primes: Vec<i64>,
    #[arg(long, global = true)]
    level: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also run the group suites with the greatest element of G-H as s.
    #[arg(long, global = true)]
    alt_s: bool,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Run every suite.
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Clifford,
    PropMain,
    Epsilon,
    Serre,
    Ptb,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

fn config(cli: &Cli) -> Result<SuiteConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => SuiteConfig::load(path).map_err(|e| e.to_string())?,
        None => SuiteConfig::default(),
    };
    if let Command::Verify { suite } = cli.command {
        cfg.suites = vec![match suite {
            SuiteArg::Clifford => Suite::Clifford,
            SuiteArg::PropMain => Suite::PropMain,
            SuiteArg::Epsilon => Suite::Epsilon,
            SuiteArg::Serre => Suite::Serre,
            SuiteArg::Ptb => Suite::Ptb,
        }];
    } else if cli.config.is_none() {
        cfg.suites = Suite::ALL.to_vec();
    }
    cfg.groups.extend(cli.groups.iter().cloned());
    cfg.no_battery |= cli.no_battery;
    if !cli.primes.is_empty() {
        cfg.primes = cli.primes.clone();
    }
    if let Some(l) = cli.level {
        cfg.level = l;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.alt_s |= cli.alt_s;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("dualcheck: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("dualcheck: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    print!("{}", report.emit(format));
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
