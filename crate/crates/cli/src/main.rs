mod cohom;
mod dbl;
mod pmg;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{CliError, CliResult, Format, Report};

/// Exact computations with pre-metric groups and twisted doubles of finite groups.
#[derive(Parser, Debug)]
#[command(name = "pmtk", version)]
struct Cli {
    /// Output: human-readable text, the structured JSON block, or both.
    #[arg(long, value_enum, default_value = "both", global = true)]
    format: Format,
    /// Render values of Q/Z as roots of unity (1, -1, i, e(a/m)) in the text.
    #[arg(long, global = true)]
    roots: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pre-metric groups read from form files.
    #[command(subcommand)]
    Pmg(pmg::PmgCommand),
    /// Twisted doubles read from group and cocycle files.
    #[command(subcommand)]
    Dbl(dbl::DblCommand),
    /// Group cohomology.
    #[command(subcommand)]
    Cohom(cohom::CohomCommand),
}

/// Order cap override from `PMTK_ORDER_CAP`.
fn order_cap() -> CliResult<Option<u64>> {
    match std::env::var("PMTK_ORDER_CAP") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(c) if c > 0 => Ok(Some(c)),
            _ => Err(CliError::Parse(format!("PMTK_ORDER_CAP must be a positive integer, got {s:?}"))),
        },
    }
}

fn run(cli: &Cli, command_line: String) -> CliResult<String> {
    let cap = order_cap()?;
    let mut report = Report::new(command_line, cli.roots);
    match &cli.command {
        Command::Pmg(c) => pmg::run(c, &mut report, cap)?,
        Command::Dbl(c) => dbl::run(c, &mut report, cap)?,
        Command::Cohom(c) => cohom::run(c, &mut report)?,
    }
    Ok(report.render(cli.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_line = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli, command_line) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
