use std::fmt::Display;
use std::process::ExitCode;

/// An error tagged with its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: the input was understood but the operation failed.
    Domain(anyhow::Error),
    /// Exit 2: bad flags or unreadable input.
    Usage(anyhow::Error),
}

impl Failure {
    pub fn domain(msg: impl Display) -> Self {
        Failure::Domain(anyhow::anyhow!("{msg}"))
    }

    pub fn usage(msg: impl Display) -> Self {
        Failure::Usage(anyhow::anyhow!("{msg}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Domain(_) => ExitCode::from(1),
            Failure::Usage(_) => ExitCode::from(2),
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Domain(e) | Failure::Usage(e) => e,
        }
    }
}

pub type CmdResult<T = ()> = Result<T, Failure>;

pub trait ResultExt<T> {
    fn usage(self) -> CmdResult<T>;
    fn domain(self) -> CmdResult<T>;
}

impl<T, E: Into<anyhow::Error>> ResultExt<T> for Result<T, E> {
    fn usage(self) -> CmdResult<T> {
        self.map_err(|e| Failure::Usage(e.into()))
    }

    fn domain(self) -> CmdResult<T> {
        self.map_err(|e| Failure::Domain(e.into()))
    }
}

/// Outcome of a command that ran to completion. `Negative` is a clean
/// "no" answer, such as a failed CFF check, and exits with status 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
}
