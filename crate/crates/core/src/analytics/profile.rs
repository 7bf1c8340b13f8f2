use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AnalyticsError, WearSummary};
use crate::wear::{ClassId, ProductFamily};

/// Histograms split [0, 1] into this many equal bins; 1.0 falls in the last.
pub const HISTOGRAM_BINS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Lower median for even counts.
    pub median: f64,
    /// Population standard deviation.
    pub std: f64,
}

impl Distribution {
    /// Statistics of `values`; `None` when empty. Computed on the sorted
    /// values so the result does not depend on input order.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        Some(Self {
            min: v[0],
            max: v[v.len() - 1],
            mean,
            median: v[(v.len() - 1) / 2],
            std: var.sqrt(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassProfile {
    pub class_id: ClassId,
    pub name: String,
    pub fraction: Distribution,
    /// Share of images in which the class occurs at all.
    pub incidence: f64,
    pub histogram: Vec<u64>,
}

/// Wear statistics across a set of images of one product family.
/// Serialized as `profile.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProcessWearProfile {
    pub family: ProductFamily,
    pub n_tools: usize,
    /// Sorted ids of the summarized images.
    pub image_ids: Vec<String>,
    /// Bin edges shared by every class histogram.
    pub histogram_edges: Vec<f64>,
    /// Classes with a fraction, i.e. every class except the machining background.
    pub classes: Vec<ClassProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wear_extent: Option<Distribution>,
}

impl ProcessWearProfile {
    pub fn class(&self, id: ClassId) -> Option<&ClassProfile> {
        self.classes.iter().find(|c| c.class_id == id)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("profile serializes");
        s.push('\n');
        s
    }

    pub fn write_json(&self, path: &Path) -> Result<(), AnalyticsError> {
        fs::write(path, self.to_json_string()).map_err(|source| AnalyticsError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn read_json(path: &Path) -> Result<Self, AnalyticsError> {
        let text = fs::read_to_string(path).map_err(|source| AnalyticsError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| AnalyticsError::Malformed {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })
    }
}

fn bin_of(f: f64) -> usize {
    ((f * HISTOGRAM_BINS as f64).floor().max(0.0) as usize).min(HISTOGRAM_BINS - 1)
}

pub fn aggregate(summaries: &[WearSummary]) -> Result<ProcessWearProfile, AnalyticsError> {
    let first = summaries.first().ok_or(AnalyticsError::EmptyInput)?;
    let family = first.family;
    if let Some(other) = summaries.iter().find(|s| s.family != family) {
        return Err(AnalyticsError::MixedFamilies(family, other.family));
    }
    let mut ids = HashSet::with_capacity(summaries.len());
    let mut image_ids = Vec::with_capacity(summaries.len());
    for s in summaries {
        if !ids.insert(s.image_id.as_str()) {
            return Err(AnalyticsError::DuplicateImageId(s.image_id.clone()));
        }
        image_ids.push(s.image_id.clone());
    }
    image_ids.sort();

    let n = summaries.len();
    let classes = family
        .class_map()
        .classes()
        .iter()
        .filter(|info| !(family.has_background() && info.id == 0))
        .map(|info| {
            let fractions: Vec<f64> = summaries.iter().map(|s| s.fraction(info.id).unwrap_or(0.0)).collect();
            let present = summaries
                .iter()
                .filter(|s| s.class(info.id).is_some_and(|c| c.pixels > 0))
                .count();
            let mut histogram = vec![0u64; HISTOGRAM_BINS];
            for &f in &fractions {
                histogram[bin_of(f)] += 1;
            }
            ClassProfile {
                class_id: info.id,
                name: info.name.clone(),
                fraction: Distribution::of(&fractions).expect("non-empty"),
                incidence: present as f64 / n as f64,
                histogram,
            }
        })
        .collect();

    let extents: Vec<f64> = summaries
        .iter()
        .filter_map(|s| s.wear_extent)
        .map(|e| e as f64)
        .collect();

    Ok(ProcessWearProfile {
        family,
        n_tools: n,
        image_ids,
        histogram_edges: (0..=HISTOGRAM_BINS).map(|i| i as f64 / HISTOGRAM_BINS as f64).collect(),
        classes,
        wear_extent: Distribution::of(&extents),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::summarize;
    use crate::wear::{ClassMap, SegmentationMask};

    /// Machining summary whose flank fraction is `flank / 10` over a 10-pixel
    /// wear support; the rest is chipping.
    fn tool(id: &str, flank: usize) -> WearSummary {
        let mut labels = vec![2u8; 10];
        labels[..flank].fill(1);
        labels.push(0);
        let m = SegmentationMask::new(11, 1, labels, &ClassMap::machining_tool()).unwrap();
        summarize(id, &m)
    }

    #[test]
    fn single_summary() {
        let p = aggregate(&[tool("a", 3)]).unwrap();
        let d = p.class(1).unwrap().fraction;
        assert_eq!(p.n_tools, 1);
        assert!(d.min == d.max && d.max == d.mean && d.mean == d.median);
        assert!((d.mean - 0.3).abs() < 1e-12);
        assert_eq!(d.std, 0.0);
        assert!(p.class(0).is_none());
    }

    #[test]
    fn two_summaries() {
        let p = aggregate(&[tool("a", 2), tool("b", 4)]).unwrap();
        let flank = p.class(1).unwrap();
        assert!((flank.fraction.mean - 0.3).abs() < 1e-12);
        assert_eq!(flank.incidence, 1.0);
        assert!((flank.fraction.median - 0.2).abs() < 1e-12);
        assert!((flank.fraction.std - 0.1).abs() < 1e-12);
        assert_eq!(flank.histogram.iter().sum::<u64>(), 2);
        assert_eq!(flank.histogram[2] + flank.histogram[4], 2);
        assert_eq!(p.class(3).unwrap().incidence, 0.0);
    }

    #[test]
    fn half_with_chipping() {
        let sums: Vec<WearSummary> = (0..200)
            .map(|i| tool(&format!("t{i:03}"), if i % 2 == 0 { 10 } else { 5 }))
            .collect();
        let p = aggregate(&sums).unwrap();
        assert_eq!(p.n_tools, 200);
        assert_eq!(p.class(2).unwrap().incidence, 0.5);
        assert_eq!(p.class(1).unwrap().histogram[HISTOGRAM_BINS - 1], 100);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(aggregate(&[]), Err(AnalyticsError::EmptyInput)));
        assert!(matches!(
            aggregate(&[tool("a", 1), tool("a", 2)]),
            Err(AnalyticsError::DuplicateImageId(_))
        ));
        let anode = SegmentationMask::filled(2, 2, 1, &ClassMap::rotating_anode()).unwrap();
        assert!(matches!(
            aggregate(&[tool("a", 1), summarize("b", &anode)]),
            Err(AnalyticsError::MixedFamilies(..))
        ));
    }

    #[test]
    fn json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("profile.json");
        let p = aggregate(&[tool("a", 2), tool("b", 7), tool("c", 0)]).unwrap();
        p.write_json(&path).unwrap();
        assert_eq!(ProcessWearProfile::read_json(&path).unwrap(), p);
    }
}
