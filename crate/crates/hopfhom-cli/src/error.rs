use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{what} is invalid: {witness}")]
    Invalid { what: String, witness: String },
    #[error("unknown character or grouplike: {0}")]
    UnknownCharacter(String),
    #[error("construction {construction} is incompatible with input kind {kind}")]
    IncompatibleConstruction { construction: String, kind: String },
    #[error("unknown check {0}; see list-checks")]
    UnknownCheck(String),
    #[error("check is inapplicable: {0}")]
    Inapplicable(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } => 1,
            _ => 2,
        }
    }
}
