use std::io;

use symscat_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input file {path}: {reason}")]
    Input { path: String, reason: String },
    #[error(transparent)]
    Compute(#[from] CoreError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// 2 for anything the caller can fix by changing flags or input files,
    /// 3 when a well-posed computation fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } => 2,
            CliError::Compute(e) => match e {
                CoreError::PreconditionViolated(_)
                | CoreError::NonPositiveEnergy(_)
                | CoreError::NonPositiveK(_)
                | CoreError::AsymmetricPotential { .. }
                | CoreError::NonUniformGrid(_)
                | CoreError::NonFiniteSample(_)
                | CoreError::DeltaNotSamplable
                | CoreError::QuadOrderTooSmall(_) => 2,
                _ => 3,
            },
            CliError::Io(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
