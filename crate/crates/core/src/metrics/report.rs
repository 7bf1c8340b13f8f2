use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Aggregation, ConfusionMatrix, MetricsError};
use crate::wear::{ClassId, ProductFamily};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassMetric {
    pub class_id: ClassId,
    pub name: String,
    pub dice: f64,
    /// Neither prediction nor ground truth contains the class; `dice` is 1.
    pub absent: bool,
    pub predicted_pixels: u64,
    pub ground_truth_pixels: u64,
    pub intersection_pixels: u64,
}

/// Evaluation of one test set. Serialized as `report.json`; the per-class
/// rows alone as `report.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub class_map: ProductFamily,
    pub aggregation: Aggregation,
    pub n_pairs: usize,
    pub n_pixels: u64,
    pub classes: Vec<ClassMetric>,
    pub mean_dsc: f64,
    pub pixel_accuracy: f64,
    pub confusion: ConfusionMatrix,
}

const CSV_HEADER: [&str; 7] = [
    "class_id",
    "name",
    "dice",
    "absent",
    "predicted_pixels",
    "ground_truth_pixels",
    "intersection_pixels",
];

impl MetricReport {
    pub fn per_class_dice(&self) -> Vec<f64> {
        self.classes.iter().map(|c| c.dice).collect()
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.classes {
            w.serialize(c).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn write_json(&self, path: &Path) -> Result<(), MetricsError> {
        write(path, &self.to_json_string())
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), MetricsError> {
        write(path, &self.to_csv_string())
    }

    pub fn read_json(path: &Path) -> Result<Self, MetricsError> {
        let text = fs::read_to_string(path).map_err(|source| MetricsError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| MetricsError::Malformed {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })
    }
}

fn write(path: &Path, text: &str) -> Result<(), MetricsError> {
    fs::write(path, text).map_err(|source| MetricsError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads the per-class rows of a `report.csv`.
pub fn read_report_csv(path: &Path) -> Result<Vec<ClassMetric>, MetricsError> {
    let malformed = |detail: String| MetricsError::Malformed {
        path: path.to_path_buf(),
        detail,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| malformed(e.to_string()))?;
    let header = r.headers().map_err(|e| malformed(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(malformed(format!("unexpected header {header:?}")));
    }
    r.deserialize()
        .map(|row| row.map_err(|e| malformed(e.to_string())))
        .collect()
}
