use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mwbch::gf2m::parse_poly;
use mwbch::Elem;
use mwbch_cli::{
    cmd_table, cmd_verify, generate, CliError, MethodChoice, OutputFormat, RunConfig, Table,
};

#[derive(Parser)]
#[command(
    name = "mwbch",
    version,
    about = "Minimum-weight codewords of extended binary BCH codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct and verify a support of designed distance 2^(m-1-s) - 2^(m-1-i-s).
    Generate {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[arg(long, env = "MWBCH_SEED", default_value_t = 0)]
        seed: u64,
        /// Defining polynomial as hex (0x11d) or exponents (8,4,3,2,0).
        #[arg(long, value_parser = poly_arg)]
        poly: Option<u64>,
        /// auto, gold, gk, or a solver name such as i2-composite.
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
        /// Retry cap for the randomized solvers.
        #[arg(long)]
        retries: Option<u32>,
        /// Emit a word of the non-extended code instead.
        #[arg(long)]
        puncture: bool,
        /// The y of the six-point support, as hex bits.
        #[arg(long, value_parser = elem_arg)]
        y: Option<Elem>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check every support in a file; exits 0 only if all are minimum-weight words.
    Verify {
        #[arg(required_unless_present = "builtin")]
        file: Option<PathBuf>,
        /// Verify a shipped table (t27 or t23) instead of a file.
        #[arg(long, conflicts_with = "file")]
        builtin: Option<Table>,
    },
    /// Verify a shipped table and regenerate each of its rows.
    Table {
        which: Table,
        #[arg(long, env = "MWBCH_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn poly_arg(s: &str) -> Result<u64, String> {
    parse_poly(s).map_err(|e| e.to_string())
}

fn elem_arg(s: &str) -> Result<Elem, String> {
    let digits = s.strip_prefix("0x").unwrap_or(s);
    u32::from_str_radix(digits, 16)
        .map(Elem)
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate {
            m,
            i,
            s,
            seed,
            poly,
            method,
            format,
            retries,
            puncture,
            y,
            output,
        } => {
            let cfg = RunConfig {
                m,
                i,
                s,
                seed,
                poly,
                method,
                format,
                retries,
                puncture,
                y,
            };
            let text = mwbch_cli::commands::render(&generate(&cfg)?, &cfg)?;
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Verify { file, builtin } => {
            let text = match (builtin, file) {
                (Some(t), _) => t.fixture().to_string(),
                (None, Some(path)) => std::fs::read_to_string(path)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let report = cmd_verify(&text)?;
            print!("{}", report.text);
            if report.all_min_weight() {
                Ok(())
            } else {
                Err(CliError::Verification(
                    "not every record is a minimum-weight word".into(),
                ))
            }
        }
        Command::Table { which, seed } => {
            let report = cmd_table(which, seed)?;
            for line in &report.lines {
                println!("{line}");
            }
            if report.all_ok {
                Ok(())
            } else {
                Err(CliError::Verification("table check failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 5 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
