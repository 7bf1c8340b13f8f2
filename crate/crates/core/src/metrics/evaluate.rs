use rayon::prelude::*;
use thiserror::Error;

use super::{dataset_metrics_with, Aggregation, MetricReport, MetricsError};
use crate::wear::{validate_manifest, DatasetManifest, ManifestError, Role};

#[derive(Debug, Error)]
pub enum EvaluateError {
    #[error(transparent)]
    Manifest(#[from] ManifestError),

    #[error("no prediction for image_id {0:?}")]
    MissingPrediction(String),

    #[error("the manifest has no test records")]
    EmptyTestSplit,

    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Validates `manifest` and evaluates its test split.
pub fn evaluate_manifest(manifest: &DatasetManifest, aggregation: Aggregation) -> Result<MetricReport, EvaluateError> {
    validate_manifest(manifest)?;
    let tests: Vec<_> = manifest.records_with_role(Role::Test).collect();
    if tests.is_empty() {
        return Err(EvaluateError::EmptyTestSplit);
    }
    if let Some(r) = tests.iter().find(|r| r.pred.is_none()) {
        return Err(EvaluateError::MissingPrediction(r.image_id.clone()));
    }
    let pairs = tests
        .par_iter()
        .map(|r| Ok((manifest.load_pred(r)?.expect("checked above"), manifest.load_gt(r)?)))
        .collect::<Result<Vec<_>, ManifestError>>()?;
    Ok(dataset_metrics_with(&pairs, &manifest.class_map(), aggregation)?)
}
