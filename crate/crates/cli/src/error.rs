use fracpx::{Error, SolveError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("invalid config field `{field}`: {source}")]
    Field {
        field: &'static str,
        #[source]
        source: Error,
    },

    #[error(transparent)]
    Core(#[from] Error),

    #[error(transparent)]
    Solve(#[from] SolveError),

    #[error("writing {path}: {message}")]
    Output { path: String, message: String },
}

impl CliError {
    pub fn field(field: &'static str, source: Error) -> Self {
        CliError::Field { field, source }
    }

    /// 0 success, 2 no convergence, 3 invalid input, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Field { .. } => 3,
            CliError::Core(e) => core_code(e),
            CliError::Solve(e) => solve_code(e),
            CliError::Io { .. } | CliError::Output { .. } => 1,
        }
    }

    /// Short machine-readable status for `report.json`.
    pub fn status(&self) -> &'static str {
        status_of(self.exit_code())
    }
}

pub fn solve_code(e: &SolveError) -> i32 {
    match e {
        SolveError::Invalid(inner) => core_code(inner),
        _ => 2,
    }
}

pub fn status_of(exit_code: i32) -> &'static str {
    match exit_code {
        0 => "ok",
        2 => "no_convergence",
        3 => "invalid_input",
        _ => "failed",
    }
}

fn core_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence { .. } => 2,
        Error::BracketFailure(_) | Error::RefinementLimit(_) | Error::NonFinite(_) => 1,
        _ => 3,
    }
}
