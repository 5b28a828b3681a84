use std::path::PathBuf;

use thiserror::Error;

use crate::lp::{LpError, LpStatus};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// A problem with one cell of a data file. `row` is the 1-based line
    /// number including the header.
    #[error("{source_name}: row {row}, column {column:?}: {message}")]
    Data {
        source_name: String,
        row: usize,
        column: String,
        message: String,
    },
    #[error("invalid dataset: {0}")]
    Dataset(String),
    #[error("invalid topology: {0}")]
    Topology(String),
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),
    #[error("unknown DMU {0:?}")]
    UnknownDmu(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The LP for a model ended in a status the model does not admit.
    #[error("{model} for DMU {dmu:?} is {status:?}")]
    Solver {
        model: &'static str,
        dmu: String,
        status: LpStatus,
    },
    #[error(transparent)]
    Lp(#[from] LpError),
}

impl Error {
    /// True for failures of the numerical solve rather than of the inputs.
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, Error::Solver { .. } | Error::Lp(_))
    }
}
