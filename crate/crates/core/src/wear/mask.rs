use serde::Serialize;

use super::{ClassId, ClassMap, ProductFamily, WearError};

/// Per-pixel class labels of one image, row-major.
///
/// Every label exists in the family's [`ClassMap`] and
/// `width * height == labels.len()`; both are checked on construction and
/// the mask is immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentationMask {
    width: u32,
    height: u32,
    class_map: ProductFamily,
    labels: Vec<ClassId>,
}

impl SegmentationMask {
    pub fn new(width: u32, height: u32, labels: Vec<ClassId>, class_map: &ClassMap) -> Result<Self, WearError> {
        let expected = width as u64 * height as u64;
        if labels.len() as u64 != expected {
            return Err(WearError::DimensionMismatch(format!(
                "{width}x{height} mask needs {expected} labels, got {}",
                labels.len()
            )));
        }
        let n_classes = class_map.len();
        if let Some(pos) = labels.iter().position(|&l| usize::from(l) >= n_classes) {
            let pos = pos as u64;
            return Err(WearError::UnknownClassId {
                value: u32::from(labels[pos as usize]),
                x: (pos % width as u64) as u32,
                y: (pos / width as u64) as u32,
            });
        }
        Ok(Self {
            width,
            height,
            class_map: class_map.family(),
            labels,
        })
    }

    /// Mask with every pixel set to `class`.
    pub fn filled(width: u32, height: u32, class: ClassId, class_map: &ClassMap) -> Result<Self, WearError> {
        Self::new(width, height, vec![class; width as usize * height as usize], class_map)
    }

    /// Builds a mask from equally long rows; handy for small literals.
    pub fn from_rows<R: AsRef<[ClassId]>>(rows: &[R], class_map: &ClassMap) -> Result<Self, WearError> {
        let height = rows.len() as u32;
        let width = rows.first().map_or(0, |r| r.as_ref().len()) as u32;
        let mut labels = Vec::with_capacity(width as usize * height as usize);
        for (y, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() as u32 != width {
                return Err(WearError::DimensionMismatch(format!(
                    "row {y} has {} entries, expected {width}",
                    row.len()
                )));
            }
            labels.extend_from_slice(row);
        }
        Self::new(width, height, labels, class_map)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    /// Number of pixels.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn family(&self) -> ProductFamily {
        self.class_map
    }

    pub fn class_map(&self) -> ClassMap {
        self.class_map.class_map()
    }

    pub fn labels(&self) -> &[ClassId] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<ClassId> {
        self.labels
    }

    pub fn get(&self, x: u32, y: u32) -> Option<ClassId> {
        if x < self.width && y < self.height {
            Some(self.labels[y as usize * self.width as usize + x as usize])
        } else {
            None
        }
    }

    /// Pixel count per class id, indexed by id.
    pub fn class_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.class_map().len()];
        for &l in &self.labels {
            counts[usize::from(l)] += 1;
        }
        counts
    }

    /// Distinct class ids present, ascending.
    pub fn classes_present(&self) -> Vec<ClassId> {
        self.class_counts()
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(id, _)| id as ClassId)
            .collect()
    }
}
