use std::fmt;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Malformed or incomplete job file, or input the core rejects.
pub const EXIT_CONFIG: i32 = 2;
/// At least one curve violates its bound.
pub const EXIT_VERIFY_FAILED: i32 = 3;
/// A computed result broke one of its own structural invariants.
pub const EXIT_INTERNAL: i32 = 4;

/// A problem with the job file, located by field path and, when known, line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub path: Option<String>,
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    pub fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: Some(path.into()),
            line: None,
            message: message.into(),
        }
    }

    pub fn general(message: impl Into<String>) -> Self {
        Self {
            path: None,
            line: None,
            message: message.into(),
        }
    }

    pub fn at_line(mut self, line: Option<usize>) -> Self {
        if self.line.is_none() {
            self.line = line;
        }
        self
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("config error")?;
        if let Some(line) = self.line {
            write!(f, " at line {line}")?;
        }
        if let Some(path) = &self.path {
            write!(f, " in `{path}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("rejected input: {0}")]
    Input(#[from] negbound_core::Error),
    #[error("internal invariant breach: {0}")]
    Invariant(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Write(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Input(_) | CliError::Read { .. } => EXIT_CONFIG,
            CliError::Invariant(_) | CliError::Write(_) => EXIT_INTERNAL,
        }
    }
}
