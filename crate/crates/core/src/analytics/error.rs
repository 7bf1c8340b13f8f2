use std::path::PathBuf;

use thiserror::Error;

use crate::wear::ProductFamily;

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("nothing to aggregate")]
    EmptyInput,

    #[error("summaries mix product families {0} and {1}")]
    MixedFamilies(ProductFamily, ProductFamily),

    #[error("duplicate image_id {0:?}")]
    DuplicateImageId(String),

    #[error("patch {index} ({width}x{height} at {x},{y}) does not fit a {canvas_width}x{canvas_height} canvas")]
    PatchOutOfBounds {
        index: usize,
        x: u32,
        y: u32,
        width: u32,
        height: u32,
        canvas_width: u32,
        canvas_height: u32,
    },

    #[error("coverage fraction must be positive, got {0}")]
    NonPositiveCoverage(f64),

    #[error("coverage fraction cannot exceed 1, got {0}")]
    CoverageAboveOne(f64),

    #[error("pixel pitch must be a positive length, got {0}")]
    InvalidPixelPitch(f64),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed {path}: {detail}")]
    Malformed { path: PathBuf, detail: String },
}
