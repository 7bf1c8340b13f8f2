//! Wear statistics derived from masks: per-image summaries, process profiles
//! across many tools, patch stitching and focal-track extrapolation.

mod error;
mod extrapolate;
mod profile;
mod stitch;
mod summary;

use rayon::prelude::*;

use crate::wear::{validate_manifest, DatasetManifest, ManifestError};

pub use error::AnalyticsError;
pub use extrapolate::{extrapolate, ClassAreaEstimate, FocalTrackEstimate};
pub use profile::{aggregate, ClassProfile, Distribution, ProcessWearProfile, HISTOGRAM_BINS};
pub use stitch::{stitch, Patch, StitchedCanvas};
pub use summary::{read_summary_csv, summarize, summary_csv_string, write_summary_csv, ClassWear, WearSummary};

/// Validates `manifest` and summarizes every record, in manifest order. The
/// prediction is summarized when present, the ground truth otherwise.
pub fn summarize_manifest(manifest: &DatasetManifest) -> Result<Vec<WearSummary>, ManifestError> {
    validate_manifest(manifest)?;
    manifest
        .records
        .par_iter()
        .map(|r| {
            let mask = match manifest.load_pred(r)? {
                Some(pred) => pred,
                None => manifest.load_gt(r)?,
            };
            Ok(summarize(r.image_id.clone(), &mask))
        })
        .collect()
}
