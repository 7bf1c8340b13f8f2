use serde::{Deserialize, Serialize};

use super::{AnalyticsError, WearSummary};
use crate::wear::ClassId;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassAreaEstimate {
    pub class_id: ClassId,
    pub name: String,
    pub sampled_pixels: u64,
    pub sampled_area_mm2: f64,
    /// Pixel-equivalent area on the whole track.
    pub estimated_pixels: f64,
    pub estimated_area_mm2: f64,
}

/// Whole-track wear areas scaled up from a sampled subset of the track.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FocalTrackEstimate {
    pub image_id: String,
    pub sampled_pixels: u64,
    pub coverage_fraction: f64,
    /// Micrometres per pixel edge.
    pub pixel_pitch_um: f64,
    pub classes: Vec<ClassAreaEstimate>,
    pub assumption: String,
}

const ASSUMPTION: &str = "linear scale-up: the sampled patches are taken as representative of the whole focal track";

/// Scales the class areas of `summary` by `1 / coverage_fraction`.
pub fn extrapolate(
    summary: &WearSummary,
    coverage_fraction: f64,
    pixel_pitch_um: f64,
) -> Result<FocalTrackEstimate, AnalyticsError> {
    if coverage_fraction.is_nan() || coverage_fraction <= 0.0 {
        return Err(AnalyticsError::NonPositiveCoverage(coverage_fraction));
    }
    if coverage_fraction > 1.0 {
        return Err(AnalyticsError::CoverageAboveOne(coverage_fraction));
    }
    if !(pixel_pitch_um > 0.0 && pixel_pitch_um.is_finite()) {
        return Err(AnalyticsError::InvalidPixelPitch(pixel_pitch_um));
    }
    let mm2_per_px = pixel_pitch_um * pixel_pitch_um * 1e-6;
    let classes = summary
        .classes
        .iter()
        .map(|c| {
            let estimated = c.pixels as f64 / coverage_fraction;
            ClassAreaEstimate {
                class_id: c.class_id,
                name: c.name.clone(),
                sampled_pixels: c.pixels,
                sampled_area_mm2: c.pixels as f64 * mm2_per_px,
                estimated_pixels: estimated,
                estimated_area_mm2: estimated * mm2_per_px,
            }
        })
        .collect();
    Ok(FocalTrackEstimate {
        image_id: summary.image_id.clone(),
        sampled_pixels: summary.n_pixels(),
        coverage_fraction,
        pixel_pitch_um,
        classes,
        assumption: ASSUMPTION.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::summarize;
    use crate::wear::{ClassMap, SegmentationMask};

    fn molten(px: usize) -> WearSummary {
        let mut labels = vec![0u8; 400];
        labels[..px].fill(2);
        let m = SegmentationMask::new(20, 20, labels, &ClassMap::rotating_anode()).unwrap();
        summarize("track", &m)
    }

    #[test]
    fn full_coverage_is_identity() {
        let e = extrapolate(&molten(100), 1.0, 2.0).unwrap();
        let c = &e.classes[2];
        assert_eq!(c.estimated_pixels, 100.0);
        assert_eq!(c.estimated_area_mm2, c.sampled_area_mm2);
        assert!((c.sampled_area_mm2 - 100.0 * 4e-6).abs() < 1e-18);
    }

    #[test]
    fn half_percent_coverage() {
        let e = extrapolate(&molten(100), 0.005, 1.0).unwrap();
        assert!((e.classes[2].estimated_pixels - 20_000.0).abs() < 1e-9);
        assert!(!e.assumption.is_empty());
    }

    #[test]
    fn invalid_arguments() {
        let s = molten(1);
        assert!(matches!(
            extrapolate(&s, 0.0, 1.0),
            Err(AnalyticsError::NonPositiveCoverage(_))
        ));
        assert!(matches!(
            extrapolate(&s, f64::NAN, 1.0),
            Err(AnalyticsError::NonPositiveCoverage(_))
        ));
        assert!(matches!(
            extrapolate(&s, 1.5, 1.0),
            Err(AnalyticsError::CoverageAboveOne(_))
        ));
        assert!(matches!(
            extrapolate(&s, 0.5, 0.0),
            Err(AnalyticsError::InvalidPixelPitch(_))
        ));
    }
}
