//! Experiment runner behind the `nikolskii` command-line tool: JSON
//! configuration, command dispatch and CSV/JSON reports.

pub mod config;
pub mod report;
pub mod run;

pub use config::{Command, ExperimentConfig, Format};
pub use report::Report;
pub use run::run;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] nikolskii_core::Error),
}

impl CliError {
    /// 2 for a failed mathematical precondition, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_dispatch_failure() => 2,
            _ => 1,
        }
    }
}
