use std::path::PathBuf;

use thiserror::Error;

use crate::wear::{ClassId, ProductFamily};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("no mask pairs to evaluate")]
    EmptyInput,

    #[error("pair {index}: prediction is {pred:?} but ground truth is {gt:?}")]
    DimensionMismatch {
        index: usize,
        pred: (u32, u32),
        gt: (u32, u32),
    },

    #[error("pair {index}: masks do not use the {expected} class map")]
    ClassMapMismatch { index: usize, expected: ProductFamily },

    #[error("unknown class id {0}")]
    UnknownClass(ClassId),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed report {path}: {detail}")]
    Malformed { path: PathBuf, detail: String },
}
