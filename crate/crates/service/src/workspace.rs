//! Dataset discovery and the analysis cache.
//!
//! A workspace is a directory whose immediate subdirectories each hold a
//! `manifest.json`; the subdirectory name is the dataset id.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::Serialize;
use sha2::{Digest, Sha256};
use wearlca_core::analytics::{aggregate, summarize_manifest, ProcessWearProfile, WearSummary};
use wearlca_core::wear::{validate_manifest, DatasetManifest, SplitCounts};
use wearlca_core::ProductFamily;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, Serialize)]
pub struct DatasetDescriptor {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<ProductFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splits: Option<SplitCounts>,
    /// SHA-256 over the manifest and every mask it references.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub content_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub struct Dataset {
    pub descriptor: DatasetDescriptor,
    pub manifest: Option<DatasetManifest>,
}

/// Immutable snapshot of a workspace directory.
pub struct WorkspaceIndex {
    pub root: Option<PathBuf>,
    pub datasets: BTreeMap<String, Dataset>,
}

impl WorkspaceIndex {
    pub fn empty() -> Self {
        Self {
            root: None,
            datasets: BTreeMap::new(),
        }
    }

    /// Scans `root`. A dataset that fails to load is kept with its error so
    /// the others stay usable; only an unreadable root is fatal.
    pub fn load(root: &Path) -> std::io::Result<Self> {
        let mut datasets = BTreeMap::new();
        for entry in fs::read_dir(root)? {
            let entry = entry?;
            let path = entry.path();
            if !path.join(MANIFEST_FILE).is_file() {
                continue;
            }
            let Some(id) = path.file_name().and_then(|n| n.to_str()).map(str::to_string) else {
                continue;
            };
            datasets.insert(id.clone(), load_dataset(id, &path.join(MANIFEST_FILE)));
        }
        Ok(Self {
            root: Some(root.to_path_buf()),
            datasets,
        })
    }

    pub fn descriptors(&self) -> Vec<DatasetDescriptor> {
        self.datasets.values().map(|d| d.descriptor.clone()).collect()
    }
}

fn load_dataset(id: String, manifest_path: &Path) -> Dataset {
    let failed = |error: String| Dataset {
        descriptor: DatasetDescriptor {
            id: id.clone(),
            family: None,
            splits: None,
            content_hash: None,
            error: Some(error),
        },
        manifest: None,
    };
    let manifest = match DatasetManifest::load(manifest_path) {
        Ok(m) => m,
        Err(e) => return failed(e.to_string()),
    };
    let splits = match validate_manifest(&manifest) {
        Ok(s) => s,
        Err(e) => return failed(e.to_string()),
    };
    let hash = match content_hash(manifest_path, &manifest) {
        Ok(h) => h,
        Err(e) => return failed(e.to_string()),
    };
    Dataset {
        descriptor: DatasetDescriptor {
            id,
            family: Some(manifest.class_map),
            splits: Some(splits),
            content_hash: Some(hash),
            error: None,
        },
        manifest: Some(manifest),
    }
}

fn content_hash(manifest_path: &Path, manifest: &DatasetManifest) -> std::io::Result<String> {
    let mut h = Sha256::new();
    h.update(fs::read(manifest_path)?);
    for r in &manifest.records {
        for p in std::iter::once(&r.gt).chain(r.pred.as_ref()) {
            let bytes = fs::read(manifest.resolve(p))?;
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(bytes);
        }
    }
    Ok(hex::encode(h.finalize()))
}

/// Summaries and profile of one dataset.
#[derive(Debug, Serialize)]
pub struct DatasetAnalysis {
    pub profile: ProcessWearProfile,
    pub summaries: Vec<WearSummary>,
}

/// Analyses keyed by content hash; entries survive reloads while the files
/// are unchanged.
#[derive(Default)]
pub struct AnalysisCache {
    entries: Mutex<HashMap<String, Arc<DatasetAnalysis>>>,
}

impl AnalysisCache {
    pub fn get_or_compute(&self, hash: &str, manifest: &DatasetManifest) -> Result<Arc<DatasetAnalysis>, String> {
        if let Some(hit) = self.entries.lock().expect("cache lock").get(hash) {
            return Ok(hit.clone());
        }
        let summaries = summarize_manifest(manifest).map_err(|e| e.to_string())?;
        let profile = aggregate(&summaries).map_err(|e| e.to_string())?;
        let analysis = Arc::new(DatasetAnalysis { profile, summaries });
        self.entries
            .lock()
            .expect("cache lock")
            .insert(hash.to_string(), analysis.clone());
        Ok(analysis)
    }

    /// Drops entries whose hash is not in `live`.
    pub fn retain(&self, live: &[String]) {
        self.entries.lock().expect("cache lock").retain(|k, _| live.contains(k));
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
