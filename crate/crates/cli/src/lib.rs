//! Command-line front end: instance files, report formats and subcommands.

pub mod commands;
pub mod error;
pub mod instance;
pub mod output;
pub mod selftest;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use galegap_core::gale::default_eps;
use galegap_core::numeric::{parse_ratio, Ratio};
use galegap_core::vsw::{EtaPoint, Fixture};
use galegap_core::DualPoint;

use crate::commands::Grid;
use crate::error::{CliError, CliResult};
use crate::instance::Instance;
use crate::output::Format;

/// When set, every report is also written to `<dir>/<subcommand>.<ext>`.
pub const REPORT_DIR_ENV: &str = "GALEGAP_REPORT_DIR";

#[derive(Debug, Parser)]
#[command(name = "galegap", version, about = "Exact duality gaps for the perturbed Gale family")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Width of dual enclosures, as a positive rational.
    #[arg(long, global = true)]
    pub eps: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primal value, dual value, gap and dual attainment.
    Gap {
        instance: PathBuf,
        /// Also check the report against truncations at these levels.
        #[arg(long)]
        confirm: Option<String>,
    },
    /// Dual feasibility of a point.
    DualCheck {
        instance: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "Y1,Y2")]
        point: String,
    },
    /// Finite truncation values.
    Sweep {
        instance: PathBuf,
        #[arg(long, value_name = "N1,N2,...", default_value = "1,10,100")]
        ns: String,
    },
    /// Value function and its closure for the conic example, over a grid.
    Excone {
        #[arg(long, allow_hyphen_values = true, value_name = "MIN:MAX[:DEN]", default_value = "-3:3")]
        grid: String,
    },
    /// Membership in C0, C1, C' and cl C' over a grid, for one point, or partial sums of a fixture.
    Vsw {
        #[arg(long, allow_hyphen_values = true, value_name = "MIN:MAX[:DEN]", default_value = "-2:2")]
        grid: String,
        #[arg(long, allow_hyphen_values = true, value_name = "ETA,Y1,Y2", conflicts_with = "fixture")]
        point: Option<String>,
        /// geometric, alt-inv-square, harmonic, alt-harmonic or log-alternating.
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value_t = 100, requires = "fixture")]
        n: u64,
    },
    /// Built-in golden cases; exits 1 on any mismatch.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gap { .. } => "gap",
            Command::DualCheck { .. } => "dual-check",
            Command::Sweep { .. } => "sweep",
            Command::Excone { .. } => "excone",
            Command::Vsw { .. } => "vsw",
            Command::Selftest => "selftest",
        }
    }
}

fn eps(cli: &Cli) -> CliResult<Ratio> {
    match &cli.eps {
        None => Ok(default_eps()),
        Some(s) => match parse_ratio(s.trim()) {
            Ok(e) if e > Ratio::from_integer(0.into()) => Ok(e),
            Ok(_) => Err(CliError::Contract("--eps must be positive".into())),
            Err(_) => Err(CliError::parse("--eps", format!("not a rational: {s:?}"))),
        },
    }
}

/// Renders the command's report; `Ok(false)` means a selftest mismatch.
pub fn render(cli: &Cli) -> CliResult<(String, bool)> {
    let f = cli.format;
    let out = match &cli.command {
        Command::Gap { instance, confirm } => {
            let ns = confirm.as_deref().map(commands::parse_ns).transpose()?;
            commands::gap(&Instance::load(instance)?, &eps(cli)?, ns.as_deref())?.render(f)
        }
        Command::DualCheck { instance, point } => {
            let [y1, y2] = commands::parse_tuple::<2>(point, "--point")?;
            commands::dual_check(&Instance::load(instance)?, &DualPoint::new(y1, y2), &eps(cli)?)?.render(f)
        }
        Command::Sweep { instance, ns } => commands::sweep(&Instance::load(instance)?, &commands::parse_ns(ns)?)?.render(f),
        Command::Excone { grid } => commands::excone(&Grid::parse(grid)?)?.render(f),
        Command::Vsw { grid, point, fixture, n } => match (point, fixture) {
            (Some(p), _) => {
                let [eta, y1, y2] = commands::parse_tuple::<3>(p, "--point")?;
                commands::vsw_point(&EtaPoint::new(eta, y1, y2))?.render(f)
            }
            (None, Some(name)) => {
                let fx: Fixture = name.parse().map_err(|_| CliError::parse("--fixture", format!("unknown fixture {name:?}")))?;
                commands::fixture(fx, *n)?.render(f)
            }
            (None, None) => commands::vsw_grid(&Grid::parse(grid)?)?.render(f),
        },
        Command::Selftest => {
            let (table, ok) = selftest::run();
            return Ok((table.render(f), ok));
        }
    };
    Ok((out, true))
}

fn save_report(dir: &Path, cli: &Cli, body: &str) -> CliResult<()> {
    let path = dir.join(format!("{}.{}", cli.command.name(), cli.format.extension()));
    std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(&path, body))
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Runs a parsed command line, printing the report to `out` and errors to stderr.
pub fn run(cli: &Cli, out: &mut impl Write) -> ExitCode {
    let result = render(cli).and_then(|(body, ok)| {
        if let Some(dir) = std::env::var_os(REPORT_DIR_ENV) {
            save_report(Path::new(&dir), cli, &body)?;
        }
        Ok((body, ok))
    });
    match result {
        Ok((body, ok)) => {
            if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("galegap: {e}");
            e.exit_code()
        }
    }
}
