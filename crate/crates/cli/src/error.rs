use thiserror::Error;
use treewass_core::{AsymptoticsError, GenfunError, InstanceError, LpError, RadialError, TreeError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad argument: {0}")]
    BadArg(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error(transparent)]
    Genfun(#[from] GenfunError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("computation paths disagree: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, CliError>;
