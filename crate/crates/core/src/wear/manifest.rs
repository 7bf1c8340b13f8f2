//! Dataset manifests.
//!
//! A manifest is a JSON document listing the labelled images of one dataset
//! and their split role. Mask paths are relative to the manifest's directory.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "class_map": "machining_tool",
//!   "records": [
//!     {"image_id": "tool-001", "role": "test", "gt": "gt/tool-001.png", "pred": "pred/tool-001.png"},
//!     {"image_id": "track-7-p3", "role": "train", "gt": "gt/p3.png",
//!      "patch_offset": [0, 192], "track_id": "track-7"}
//!   ]
//! }
//! ```

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{load_mask, ClassMap, ManifestError, ProductFamily, SegmentationMask};

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Train,
    Validation,
    Test,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub image_id: String,
    pub role: Role,
    /// Ground-truth mask.
    pub gt: PathBuf,
    /// Predicted mask, if the model has been run on this image.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pred: Option<PathBuf>,
    /// Raw microscope image, for display only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image: Option<PathBuf>,
    /// Position (x, y) of a patch inside its parent scan.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patch_offset: Option<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub track_id: Option<String>,
    /// Per-record class map; must agree with the manifest's when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_map: Option<ProductFamily>,
}

impl ManifestRecord {
    pub fn new(image_id: impl Into<String>, role: Role, gt: impl Into<PathBuf>) -> Self {
        Self {
            image_id: image_id.into(),
            role,
            gt: gt.into(),
            pred: None,
            image: None,
            patch_offset: None,
            track_id: None,
            class_map: None,
        }
    }

    pub fn with_pred(mut self, pred: impl Into<PathBuf>) -> Self {
        self.pred = Some(pred.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetManifest {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub class_map: ProductFamily,
    #[serde(default)]
    pub records: Vec<ManifestRecord>,
    /// Directory relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

fn default_schema() -> u32 {
    MANIFEST_SCHEMA_VERSION
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCounts {
    pub train: usize,
    pub validation: usize,
    pub test: usize,
}

impl SplitCounts {
    pub fn total(&self) -> usize {
        self.train + self.validation + self.test
    }
}

impl DatasetManifest {
    pub fn new(class_map: ProductFamily, records: Vec<ManifestRecord>, base_dir: impl Into<PathBuf>) -> Self {
        Self {
            schema_version: MANIFEST_SCHEMA_VERSION,
            class_map,
            records,
            base_dir: base_dir.into(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        let text = fs::read_to_string(path).map_err(|source| ManifestError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_json_str(&text, base)
    }

    pub fn from_json_str(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self, ManifestError> {
        let mut manifest: DatasetManifest = serde_json::from_str(text)?;
        if manifest.schema_version != MANIFEST_SCHEMA_VERSION {
            return Err(ManifestError::UnsupportedSchema(manifest.schema_version));
        }
        manifest.base_dir = base_dir.into();
        Ok(manifest)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn class_map(&self) -> ClassMap {
        self.class_map.class_map()
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    pub fn record(&self, image_id: &str) -> Option<&ManifestRecord> {
        self.records.iter().find(|r| r.image_id == image_id)
    }

    pub fn records_with_role(&self, role: Role) -> impl Iterator<Item = &ManifestRecord> {
        self.records.iter().filter(move |r| r.role == role)
    }

    pub fn load_gt(&self, record: &ManifestRecord) -> Result<SegmentationMask, ManifestError> {
        self.load_file(record, &record.gt)
    }

    pub fn load_pred(&self, record: &ManifestRecord) -> Result<Option<SegmentationMask>, ManifestError> {
        record.pred.as_deref().map(|p| self.load_file(record, p)).transpose()
    }

    fn load_file(&self, record: &ManifestRecord, rel: &Path) -> Result<SegmentationMask, ManifestError> {
        let path = self.resolve(rel);
        if !path.is_file() {
            return Err(ManifestError::MissingFile {
                image_id: record.image_id.clone(),
                path,
            });
        }
        load_mask(&path, &self.class_map()).map_err(|source| ManifestError::InvalidMask {
            image_id: record.image_id.clone(),
            source,
        })
    }
}

/// Checks every manifest invariant and returns the split sizes.
///
/// Records are checked in `image_id` order, so the reported error does not
/// depend on how the records are listed.
pub fn validate_manifest(manifest: &DatasetManifest) -> Result<SplitCounts, ManifestError> {
    let mut ordered: Vec<&ManifestRecord> = manifest.records.iter().collect();
    ordered.sort_by(|a, b| a.image_id.cmp(&b.image_id));

    let mut seen = HashSet::with_capacity(ordered.len());
    for rec in &ordered {
        if !seen.insert(rec.image_id.as_str()) {
            return Err(ManifestError::DuplicateImageId(rec.image_id.clone()));
        }
    }
    for rec in &ordered {
        if let Some(found) = rec.class_map {
            if found != manifest.class_map {
                return Err(ManifestError::ClassMapMismatch {
                    image_id: rec.image_id.clone(),
                    expected: manifest.class_map,
                    found,
                });
            }
        }
    }

    let checked: Vec<Result<(), ManifestError>> = ordered
        .par_iter()
        .map(|rec| {
            let gt = manifest.load_gt(rec)?;
            if let Some(pred) = manifest.load_pred(rec)? {
                if pred.dimensions() != gt.dimensions() {
                    return Err(ManifestError::PredictionShape {
                        image_id: rec.image_id.clone(),
                        pred: pred.dimensions(),
                        gt: gt.dimensions(),
                    });
                }
            }
            Ok(())
        })
        .collect();
    checked.into_iter().collect::<Result<(), _>>()?;

    let mut counts = SplitCounts::default();
    for rec in &manifest.records {
        match rec.role {
            Role::Train => counts.train += 1,
            Role::Validation => counts.validation += 1,
            Role::Test => counts.test += 1,
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wear::write_mask;

    fn write(dir: &Path, name: &str, rows: &[[u8; 2]]) {
        let m = SegmentationMask::from_rows(rows, &ClassMap::machining_tool()).unwrap();
        write_mask(&dir.join(name), &m).unwrap();
    }

    #[test]
    fn empty_manifest() {
        let m = DatasetManifest::new(ProductFamily::MachiningTool, vec![], ".");
        assert_eq!(validate_manifest(&m).unwrap(), SplitCounts::default());
    }

    #[test]
    fn counts_roles() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.txt", &[[0, 1], [1, 1]]);
        write(dir.path(), "b.png", &[[0, 0], [2, 3]]);
        let records = vec![
            ManifestRecord::new("a", Role::Train, "a.txt"),
            ManifestRecord::new("b", Role::Test, "b.png").with_pred("a.txt"),
            ManifestRecord::new("c", Role::Validation, "a.txt"),
        ];
        let m = DatasetManifest::new(ProductFamily::MachiningTool, records, dir.path());
        let counts = validate_manifest(&m).unwrap();
        assert_eq!(
            counts,
            SplitCounts {
                train: 1,
                validation: 1,
                test: 1
            }
        );
        assert_eq!(counts.total(), 3);
    }

    #[test]
    fn duplicate_ids() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.txt", &[[0, 1], [1, 1]]);
        let records = vec![
            ManifestRecord::new("a", Role::Train, "a.txt"),
            ManifestRecord::new("a", Role::Test, "a.txt"),
        ];
        let m = DatasetManifest::new(ProductFamily::MachiningTool, records, dir.path());
        assert!(matches!(validate_manifest(&m), Err(ManifestError::DuplicateImageId(id)) if id == "a"));
    }

    #[test]
    fn missing_file() {
        let records = vec![ManifestRecord::new("a", Role::Train, "nowhere.png")];
        let m = DatasetManifest::new(ProductFamily::MachiningTool, records, "/nonexistent");
        assert!(matches!(validate_manifest(&m), Err(ManifestError::MissingFile { .. })));
    }

    #[test]
    fn mixed_class_maps() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.txt", &[[0, 1], [1, 1]]);
        let mut rec = ManifestRecord::new("a", Role::Train, "a.txt");
        rec.class_map = Some(ProductFamily::RotatingAnode);
        let m = DatasetManifest::new(ProductFamily::MachiningTool, vec![rec], dir.path());
        assert!(matches!(
            validate_manifest(&m),
            Err(ManifestError::ClassMapMismatch { .. })
        ));
    }

    #[test]
    fn prediction_shape_must_match() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.txt", &[[0, 1], [1, 1]]);
        write(dir.path(), "wide.txt", &[[0, 1]]);
        let records = vec![ManifestRecord::new("a", Role::Test, "a.txt").with_pred("wide.txt")];
        let m = DatasetManifest::new(ProductFamily::MachiningTool, records, dir.path());
        assert!(matches!(
            validate_manifest(&m),
            Err(ManifestError::PredictionShape { .. })
        ));
    }

    #[test]
    fn json_schema() {
        let text = r#"{
            "schema_version": 1,
            "class_map": "rotating_anode",
            "records": [
                {"image_id": "p1", "role": "test", "gt": "gt/p1.png", "pred": "pred/p1.png",
                 "patch_offset": [0, 64], "track_id": "track-0"}
            ]
        }"#;
        let m = DatasetManifest::from_json_str(text, "/data").unwrap();
        assert_eq!(m.class_map, ProductFamily::RotatingAnode);
        let r = &m.records[0];
        assert_eq!(r.patch_offset, Some((0, 64)));
        assert_eq!(m.resolve(&r.gt), PathBuf::from("/data/gt/p1.png"));
        let again = DatasetManifest::from_json_str(&m.to_json_string(), "/data").unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn rejects_future_schema() {
        let text = r#"{"schema_version": 9, "class_map": "machining_tool", "records": []}"#;
        assert!(matches!(
            DatasetManifest::from_json_str(text, "."),
            Err(ManifestError::UnsupportedSchema(9))
        ));
    }
}
