use thiserror::Error;

/// Errors produced by parsing, configuration and tuning.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty log")]
    EmptyLog,

    #[error("bad header: {0}")]
    BadHeader(String),

    #[error("bad row {0}")]
    BadRow(usize),

    #[error("xes parse error: {0}")]
    XesParse(String),

    #[error("bad matrix file: {0}")]
    BadMatrixFile(String),

    #[error("population too small: {0} (minimum 4)")]
    PopulationTooSmall(usize),

    #[error("degenerate response: {0}")]
    DegenerateResponse(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("task sets differ; only in model: [{}], only in log: [{}]",
            only_in_model.join(", "), only_in_log.join(", "))]
    TaskSetMismatch {
        only_in_model: Vec<String>,
        only_in_log: Vec<String>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
