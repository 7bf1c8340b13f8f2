use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LcaError {
    #[error("unknown flow {0:?}")]
    UnknownFlow(String),

    #[error("unknown indicator {0:?}")]
    UnknownIndicator(String),

    #[error("flow {flow_id:?} is measured in {expected}, got {found}")]
    UnitMismatch {
        flow_id: String,
        expected: String,
        found: String,
    },

    #[error("invalid {name}: {value}")]
    InvalidFactor { name: String, value: f64 },

    #[error("flow {flow_id:?} has negative amount {amount} but is not a credit")]
    NegativeAmount { flow_id: String, amount: f64 },

    #[error("process {0:?} has no flows")]
    EmptyProcess(String),

    #[error("process {process_id:?} lists flow {flow_id:?} twice")]
    DuplicateFlow { process_id: String, flow_id: String },

    #[error("{source_name}: {detail}")]
    Malformed { source_name: String, detail: String },

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("baseline {0:?} is not among the results")]
    MissingBaseline(String),

    #[error("results do not share one indicator set: {0}")]
    IndicatorMismatch(String),

    #[error("a comparison needs at least two results, got {0}")]
    NotEnoughResults(usize),

    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
}

impl LcaError {
    pub(crate) fn malformed(source_name: impl Into<String>, detail: impl Into<String>) -> Self {
        LcaError::Malformed {
            source_name: source_name.into(),
            detail: detail.into(),
        }
    }
}
