use std::path::PathBuf;

use thiserror::Error;

use super::ProductFamily;

#[derive(Debug, Error)]
pub enum WearError {
    #[error("cannot read mask file {path}: {reason}")]
    UnreadableFile { path: PathBuf, reason: String },

    #[error("cannot write mask file {path}: {reason}")]
    UnwritableFile { path: PathBuf, reason: String },

    #[error("unsupported mask encoding in {path}: {detail}")]
    UnsupportedEncoding { path: PathBuf, detail: String },

    #[error("unknown class id {value} at (x={x}, y={y})")]
    UnknownClassId { value: u32, x: u32, y: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("score vector length {found} does not match {expected} classes")]
    LengthMismatch { expected: usize, found: usize },

    #[error("non-finite score at pixel {pixel}")]
    NonFiniteScore { pixel: usize },

    #[error("invalid class map: {0}")]
    InvalidClassMap(String),
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read manifest {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot parse manifest: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("unsupported manifest schema_version {0}")]
    UnsupportedSchema(u32),

    #[error("duplicate image_id {0:?}")]
    DuplicateImageId(String),

    #[error("missing file for image_id {image_id:?}: {path}")]
    MissingFile { image_id: String, path: PathBuf },

    #[error("invalid mask for image_id {image_id:?}: {source}")]
    InvalidMask {
        image_id: String,
        #[source]
        source: WearError,
    },

    #[error("image_id {image_id:?} uses class map {found} but the manifest uses {expected}")]
    ClassMapMismatch {
        image_id: String,
        expected: ProductFamily,
        found: ProductFamily,
    },

    #[error("prediction for image_id {image_id:?} is {pred:?} but ground truth is {gt:?}")]
    PredictionShape {
        image_id: String,
        pred: (u32, u32),
        gt: (u32, u32),
    },
}
