use mahler_core::literal::{LiteralError, TupleError};
use mahler_core::oracle::OracleError;
use mahler_core::ramble::RambleError;
use mahler_core::series::SeriesError;
use mahler_core::special::SpecialError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Divergent(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Divergent(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<LiteralError> for CliError {
    fn from(e: LiteralError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SpecialError> for CliError {
    fn from(e: SpecialError) -> Self {
        match e {
            SpecialError::Precision(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<RambleError> for CliError {
    fn from(e: RambleError) -> Self {
        match e {
            RambleError::Divergent { .. } => CliError::Divergent(e.to_string()),
            RambleError::InvalidSteps => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Ramble(r) => r.into(),
            SeriesError::Special(s) => s.into(),
            SeriesError::InvalidTuple(_) | SeriesError::InvalidArgument(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<TupleError> for CliError {
    fn from(e: TupleError) -> Self {
        match e {
            TupleError::Literal(l) => l.into(),
            TupleError::Series(s) => s.into(),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Ramble(r) => r.into(),
            OracleError::Series(s) => s.into(),
            OracleError::Special(s) => s.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}
