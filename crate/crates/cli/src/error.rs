//! Error type carrying the process exit code.
//!
//! Exit-code contract: 0 success, 1 property failure, 2 usage, 3 generation
//! failure, 4 data or numeric failure.

use std::fmt;

use infosel_core::bounds::BoundsError;
use infosel_core::classify::ClassifyError;
use infosel_core::data::DataError;
use infosel_core::estimator::EstimatorError;
use infosel_core::oracle::OracleError;
use infosel_core::selection::SelectionError;
use infosel_core::synth::SynthError;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Property(String),
    Generation(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Property(_) => 1,
            CliError::Generation(_) => 3,
            CliError::Data(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Property(m) => write!(f, "property failure: {m}"),
            CliError::Generation(m) => write!(f, "generation failure: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<EstimatorError> for CliError {
    fn from(e: EstimatorError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<SelectionError> for CliError {
    fn from(e: SelectionError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        CliError::Generation(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::Data(e.to_string())
    }
}
