//! Library side of the `mwbch` command: generation, verification and the
//! published-table reports, each returning text for the binary to print.

pub mod commands;
pub mod fixtures;
pub mod format;

pub use commands::{
    cmd_generate, cmd_table, cmd_verify, generate, Generated, MethodChoice, RunConfig, Table,
    TableReport, VerifyReport,
};
pub use format::OutputFormat;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("no construction covers m = {m}, i = {i}; choose one with --method")]
    Uncovered { m: u32, i: u32 },
    #[error("{0}")]
    Core(#[from] mwbch::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 verification failure, 3 uncovered or out-of-range case, 4 solver
    /// exhaustion, 5 unparseable input, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        use mwbch::Error as E;
        match self {
            CliError::Verification(_) => 2,
            CliError::Uncovered { .. } => 3,
            CliError::Parse(_) => 5,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                E::RetriesExhausted(_) => 4,
                E::UnsupportedDegree(_)
                | E::ReduciblePolynomial(_)
                | E::NonPrimitiveAlpha(_)
                | E::BadPolynomial(_) => 5,
                E::BadS { .. }
                | E::BadRange { .. }
                | E::BadDegree(_)
                | E::BadParity(_)
                | E::BadFactorization { .. }
                | E::DegenerateY
                | E::TooLarge(_) => 3,
                _ => 1,
            },
        }
    }
}
