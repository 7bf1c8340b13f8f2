use super::{ClassId, ClassMap, SegmentationMask, WearError};

/// Per-pixel class scores as produced by a segmentation model, before the
/// hard per-pixel decision. Scores need not be normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityMap {
    width: u32,
    height: u32,
    n_classes: usize,
    scores: Vec<f64>,
}

impl ProbabilityMap {
    /// `scores` is pixel-major: the `n_classes` scores of pixel 0, then pixel 1, ...
    pub fn new(width: u32, height: u32, n_classes: usize, scores: Vec<f64>) -> Result<Self, WearError> {
        let pixels = width as usize * height as usize;
        if n_classes == 0 || scores.len() != pixels * n_classes {
            return Err(WearError::DimensionMismatch(format!(
                "{width}x{height} map with {n_classes} classes needs {} scores, got {}",
                pixels * n_classes,
                scores.len()
            )));
        }
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(WearError::NonFiniteScore { pixel: i / n_classes });
        }
        Ok(Self {
            width,
            height,
            n_classes,
            scores,
        })
    }

    pub fn from_pixels(width: u32, height: u32, pixels: &[Vec<f64>]) -> Result<Self, WearError> {
        let n_classes = pixels.first().map_or(0, Vec::len);
        if let Some(bad) = pixels.iter().find(|p| p.len() != n_classes) {
            return Err(WearError::LengthMismatch {
                expected: n_classes,
                found: bad.len(),
            });
        }
        Self::new(width, height, n_classes, pixels.concat())
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn pixel(&self, index: usize) -> &[f64] {
        &self.scores[index * self.n_classes..(index + 1) * self.n_classes]
    }

    pub fn pixels(&self) -> impl Iterator<Item = &[f64]> {
        self.scores.chunks_exact(self.n_classes)
    }
}

/// Labels each pixel with its highest-scoring class. Ties go to the lowest
/// class id.
pub fn argmax_decode(probs: &ProbabilityMap, class_map: &ClassMap) -> Result<SegmentationMask, WearError> {
    if probs.n_classes() != class_map.len() {
        return Err(WearError::LengthMismatch {
            expected: class_map.len(),
            found: probs.n_classes(),
        });
    }
    let labels = probs
        .pixels()
        .map(|scores| {
            let mut best = 0usize;
            for (c, &s) in scores.iter().enumerate().skip(1) {
                if s > scores[best] {
                    best = c;
                }
            }
            best as ClassId
        })
        .collect();
    SegmentationMask::new(probs.width(), probs.height(), labels, class_map)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn decode_one(scores: [f64; 4]) -> ClassId {
        let p = ProbabilityMap::new(1, 1, 4, scores.to_vec()).unwrap();
        argmax_decode(&p, &ClassMap::machining_tool()).unwrap().labels()[0]
    }

    #[test]
    fn unique_max() {
        assert_eq!(decode_one([0.1, 0.9, 0.0, 0.0]), 1);
    }

    #[test]
    fn tie_goes_to_lowest_id() {
        assert_eq!(decode_one([0.5, 0.5, 0.0, 0.0]), 0);
        assert_eq!(decode_one([0.0, 0.2, 0.2, 0.2]), 1);
    }

    #[test]
    fn pixels_decode_independently() {
        let p = ProbabilityMap::from_pixels(2, 1, &[vec![0.0, 0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]]).unwrap();
        let m = argmax_decode(&p, &ClassMap::machining_tool()).unwrap();
        assert_eq!(m.labels(), &[2, 3]);
    }

    #[test]
    fn wrong_class_count() {
        let p = ProbabilityMap::new(1, 1, 3, vec![0.1, 0.2, 0.7]).unwrap();
        assert!(matches!(
            argmax_decode(&p, &ClassMap::machining_tool()),
            Err(WearError::LengthMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(matches!(
            ProbabilityMap::new(2, 1, 2, vec![0.0, 1.0, f64::NAN, 0.0]),
            Err(WearError::NonFiniteScore { pixel: 1 })
        ));
    }

    proptest! {
        // Scores are multiples of 1/8 and shifts are small integers, so the
        // shifted sums are exact and the comparison is not blurred by rounding.
        #[test]
        fn shift_invariant(
            raw in prop::collection::vec(-64i32..64, 4 * 12),
            shift in -50i32..50,
        ) {
            let scores: Vec<f64> = raw.iter().map(|&v| v as f64 / 8.0).collect();
            let shifted: Vec<f64> = scores.iter().map(|s| s + shift as f64).collect();
            let cm = ClassMap::machining_tool();
            let a = argmax_decode(&ProbabilityMap::new(4, 3, 4, scores).unwrap(), &cm).unwrap();
            let b = argmax_decode(&ProbabilityMap::new(4, 3, 4, shifted).unwrap(), &cm).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
