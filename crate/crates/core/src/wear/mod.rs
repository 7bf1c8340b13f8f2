//! Domain types shared by every other module: class maps, masks, score maps
//! and dataset manifests.

mod class_map;
mod error;
mod io;
mod manifest;
mod mask;
mod probability;

pub use class_map::{ClassId, ClassInfo, ClassMap, ProductFamily};
pub use error::{ManifestError, WearError};
pub use io::{decode_text_mask, encode_text_mask, load_mask, write_mask, MaskEncoding};
pub use manifest::{validate_manifest, DatasetManifest, ManifestRecord, Role, SplitCounts};
pub use mask::SegmentationMask;
pub use probability::{argmax_decode, ProbabilityMap};
