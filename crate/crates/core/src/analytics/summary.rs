use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::AnalyticsError;
use crate::wear::{ClassId, ProductFamily, SegmentationMask};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassWear {
    pub class_id: ClassId,
    pub name: String,
    pub pixels: u64,
    /// Share of the counted support; `None` for the machining background,
    /// which is not part of the support.
    pub fraction: Option<f64>,
    /// 4-connected regions of this class.
    pub region_count: u64,
    pub largest_region_area: u64,
}

/// Wear statistics of one mask.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WearSummary {
    pub image_id: String,
    pub family: ProductFamily,
    pub width: u32,
    pub height: u32,
    /// Pixels fractions are taken over: non-background pixels for machining
    /// tools, every pixel for anodes.
    pub support_pixels: u64,
    pub classes: Vec<ClassWear>,
    /// Longest vertical run of wear pixels in any column. Machining only.
    pub wear_extent: Option<u64>,
}

impl WearSummary {
    pub fn class(&self, id: ClassId) -> Option<&ClassWear> {
        self.classes.get(usize::from(id))
    }

    pub fn fraction(&self, id: ClassId) -> Option<f64> {
        self.class(id).and_then(|c| c.fraction)
    }

    pub fn n_pixels(&self) -> u64 {
        u64::from(self.width) * u64::from(self.height)
    }
}

pub fn summarize(image_id: impl Into<String>, mask: &SegmentationMask) -> WearSummary {
    let class_map = mask.class_map();
    let family = mask.family();
    let counts = mask.class_counts();
    let (regions, largest) = regions_4(mask, class_map.len());

    let support: u64 = if family.has_background() {
        counts.iter().skip(1).sum()
    } else {
        counts.iter().sum()
    };
    let classes = class_map
        .classes()
        .iter()
        .map(|info| {
            let c = usize::from(info.id);
            let counted = !(family.has_background() && info.id == 0);
            let fraction = counted.then(|| {
                if support == 0 {
                    0.0
                } else {
                    counts[c] as f64 / support as f64
                }
            });
            ClassWear {
                class_id: info.id,
                name: info.name.clone(),
                pixels: counts[c],
                fraction,
                region_count: regions[c],
                largest_region_area: largest[c],
            }
        })
        .collect();

    WearSummary {
        image_id: image_id.into(),
        family,
        width: mask.width(),
        height: mask.height(),
        support_pixels: support,
        classes,
        wear_extent: family.has_background().then(|| wear_extent(mask)),
    }
}

/// Region count and largest region area per class, 4-connectivity.
fn regions_4(mask: &SegmentationMask, n_classes: usize) -> (Vec<u64>, Vec<u64>) {
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    let labels = mask.labels();
    let mut seen = vec![false; labels.len()];
    let mut count = vec![0u64; n_classes];
    let mut largest = vec![0u64; n_classes];
    let mut stack: Vec<usize> = Vec::new();

    for start in 0..labels.len() {
        if seen[start] {
            continue;
        }
        let class = labels[start];
        seen[start] = true;
        stack.push(start);
        let mut area = 0u64;
        while let Some(i) = stack.pop() {
            area += 1;
            let (x, y) = (i % w, i / w);
            let mut visit = |j: usize| {
                if !seen[j] && labels[j] == class {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if x > 0 {
                visit(i - 1);
            }
            if x + 1 < w {
                visit(i + 1);
            }
            if y > 0 {
                visit(i - w);
            }
            if y + 1 < h {
                visit(i + w);
            }
        }
        let c = usize::from(class);
        count[c] += 1;
        largest[c] = largest[c].max(area);
    }
    (count, largest)
}

fn wear_extent(mask: &SegmentationMask) -> u64 {
    let w = mask.width() as usize;
    let mut run = vec![0u64; w];
    let mut best = 0u64;
    for row in mask.labels().chunks(w.max(1)) {
        for (x, &l) in row.iter().enumerate() {
            run[x] = if l != 0 { run[x] + 1 } else { 0 };
            best = best.max(run[x]);
        }
    }
    best
}

const FIXED_COLUMNS: [&str; 6] = ["image_id", "family", "width", "height", "support_pixels", "wear_extent"];
const CLASS_COLUMNS: [&str; 4] = ["pixels", "fraction", "regions", "largest_region"];

fn header(family: ProductFamily) -> Vec<String> {
    let mut cols: Vec<String> = FIXED_COLUMNS.iter().map(|s| s.to_string()).collect();
    for info in family.class_map().classes() {
        cols.extend(CLASS_COLUMNS.iter().map(|c| format!("{}_{c}", info.name)));
    }
    cols
}

/// `summary.csv`: one row per image. Per-class columns are named
/// `<class>_pixels`, `<class>_fraction`, `<class>_regions` and
/// `<class>_largest_region`; empty cells stand for "not applicable".
pub fn summary_csv_string(family: ProductFamily, summaries: &[WearSummary]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(family)).expect("in-memory write");
    for s in summaries {
        let mut row = vec![
            s.image_id.clone(),
            s.family.to_string(),
            s.width.to_string(),
            s.height.to_string(),
            s.support_pixels.to_string(),
            s.wear_extent.map(|e| e.to_string()).unwrap_or_default(),
        ];
        for c in &s.classes {
            row.push(c.pixels.to_string());
            row.push(c.fraction.map(|f| f.to_string()).unwrap_or_default());
            row.push(c.region_count.to_string());
            row.push(c.largest_region_area.to_string());
        }
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn write_summary_csv(path: &Path, family: ProductFamily, summaries: &[WearSummary]) -> Result<(), AnalyticsError> {
    fs::write(path, summary_csv_string(family, summaries)).map_err(|source| AnalyticsError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_summary_csv(path: &Path) -> Result<Vec<WearSummary>, AnalyticsError> {
    let malformed = |detail: String| AnalyticsError::Malformed {
        path: path.to_path_buf(),
        detail,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| malformed(e.to_string()))?;
    let head: Vec<String> = r
        .headers()
        .map_err(|e| malformed(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let family = ProductFamily::ALL
        .into_iter()
        .find(|f| header(*f) == head)
        .ok_or_else(|| malformed("header matches no class map".into()))?;
    let class_map = family.class_map();

    let mut out = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(|e| malformed(e.to_string()))?;
        let field = |i: usize| record.get(i).unwrap_or("");
        let bad = |i: usize| malformed(format!("row {}: bad {} {:?}", line + 1, head[i], field(i)));
        let int = |i: usize| field(i).parse::<u64>().map_err(|_| bad(i));
        let opt_int = |i: usize| match field(i) {
            "" => Ok(None),
            v => v.parse::<u64>().map(Some).map_err(|_| bad(i)),
        };
        if field(1) != family.id() {
            return Err(bad(1));
        }
        let mut classes = Vec::with_capacity(class_map.len());
        for (k, info) in class_map.classes().iter().enumerate() {
            let base = FIXED_COLUMNS.len() + k * CLASS_COLUMNS.len();
            let fraction = match field(base + 1) {
                "" => None,
                v => Some(v.parse::<f64>().map_err(|_| bad(base + 1))?),
            };
            classes.push(ClassWear {
                class_id: info.id,
                name: info.name.clone(),
                pixels: int(base)?,
                fraction,
                region_count: int(base + 2)?,
                largest_region_area: int(base + 3)?,
            });
        }
        out.push(WearSummary {
            image_id: field(0).to_string(),
            family,
            width: u32::try_from(int(2)?).map_err(|_| bad(2))?,
            height: u32::try_from(int(3)?).map_err(|_| bad(3))?,
            support_pixels: int(4)?,
            classes,
            wear_extent: opt_int(5)?,
        });
    }
    Ok(out)
}
