//! Scenario runners and report handling for the `g2real` command.

pub mod config;
pub mod report;
pub mod scenarios;
pub mod suites;

pub use config::{Kind, Scenario, ScenarioConfig};
pub use report::{Check, RunReport, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Library(#[from] g2real::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for internal consistency failures, 3 for budget exhaustion, 2 for
    /// everything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(g2real::Error::Internal(_) | g2real::Error::NotAutomorphism(_)) => 1,
            CliError::Library(g2real::Error::BudgetExhausted(_)) => 3,
            _ => 2,
        }
    }
}
