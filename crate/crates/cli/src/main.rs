use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use markoff_cli::args::{self, LevelArg, UsageError};
use markoff_cli::commands::{self, CommandError, OrbitFormat};
use markoff_cli::sweep::{self, SweepFormat};
use markoff_core::ff::PrimeField;
use markoff_core::surface::Budget;

/// Orbits of the Markoff-type surfaces x² + y² + z² − xyz − 2 = k over F_p.
#[derive(Parser)]
#[command(name = "markoff", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the closed-form point count with enumeration.
    Count {
        #[arg(long, value_parser = args::parse_prime)]
        p: u64,
        /// Level: an integer (may be negative), phi or phibar.
        #[arg(long, allow_hyphen_values = true, value_parser = args::parse_level)]
        k: LevelArg,
    },
    /// Decompose one level into orbits.
    Orbits {
        #[arg(long, value_parser = args::parse_prime)]
        p: u64,
        #[arg(long, allow_hyphen_values = true, value_parser = args::parse_level)]
        k: LevelArg,
        #[arg(long, value_enum, default_value = "text")]
        format: OrbitFormat,
    },
    /// Run the theorem-backed checks at one prime.
    Verify {
        #[arg(long, value_parser = args::parse_prime)]
        p: u64,
        /// Check every level, not only those with exceptional orbits.
        #[arg(long)]
        all_levels: bool,
    },
    /// Build a matrix pair over a triple and classify the group it generates.
    Tower {
        #[arg(long, value_parser = args::parse_prime)]
        p: u64,
        /// Coordinates x,y,z in [0, p).
        #[arg(long, allow_hyphen_values = true, value_parser = args::parse_triple)]
        triple: [i64; 3],
    },
    /// Every level of every prime in a range.
    Sweep {
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: SweepFormat,
    },
}

fn budget() -> Result<Budget, UsageError> {
    let var = std::env::var("MARKOFF_MAX_P").ok();
    let mut budget = Budget::default();
    if let Some(max) = args::parse_max_p(var.as_deref())? {
        budget.max_level_p = max;
    }
    Ok(budget)
}

fn field(p: u64) -> Result<PrimeField, UsageError> {
    Ok(PrimeField::new(p)?)
}

fn run(cli: Cli) -> commands::CommandResult {
    let budget = budget()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match cli.command {
        Command::Count { p, k } => {
            let f = field(p)?;
            let k = k.resolve(&f)?;
            commands::count(&mut out, &f, k, &budget)?
        }
        Command::Orbits { p, k, format } => {
            let f = field(p)?;
            let k = k.resolve(&f)?;
            commands::orbits(&mut out, &f, k, format, &budget)?
        }
        Command::Verify { p, all_levels } => {
            commands::verify(&mut out, &field(p)?, all_levels, &budget)?
        }
        Command::Tower { p, triple } => {
            let f = field(p)?;
            let t = args::triple_in_field(&f, triple)?;
            commands::tower(&mut out, &f, t)?
        }
        Command::Sweep {
            pmin,
            pmax,
            out: path,
            jobs,
            format,
        } => {
            let primes = args::prime_range(pmin, pmax)?;
            let cells = sweep::run(&primes, jobs, &budget)?;
            match path {
                Some(path) => sweep::write_atomic(&path, &cells, format)?,
                None => sweep::write_rows(&mut out, &cells, format)?,
            }
            let ok = cells
                .iter()
                .all(|c| c.row.count_formula_ok && c.row.chen_ok);
            if ok {
                0
            } else {
                1
            }
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(CommandError::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CommandError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
