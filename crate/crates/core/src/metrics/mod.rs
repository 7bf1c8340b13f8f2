//! Segmentation evaluation: per-class Dice, mean DSC, pixel accuracy and
//! confusion matrices over a set of (prediction, ground truth) pairs.

mod confusion;
mod error;
mod evaluate;
mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::wear::{ClassId, ClassMap, SegmentationMask};

pub use confusion::ConfusionMatrix;
pub use error::MetricsError;
pub use evaluate::{evaluate_manifest, EvaluateError};
pub use report::{read_report_csv, ClassMetric, MetricReport};

/// How per-class Dice is aggregated over several images.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// Pixel counts are summed over every pair, then Dice is taken per class.
    #[default]
    Pooled,
    /// Dice is taken per image and class, then averaged over images.
    PerImage,
}

/// A prediction and its ground truth, in that order.
pub type MaskPair = (SegmentationMask, SegmentationMask);

fn check_pair(
    index: usize,
    pred: &SegmentationMask,
    gt: &SegmentationMask,
    class_map: &ClassMap,
) -> Result<(), MetricsError> {
    if pred.family() != class_map.family() || gt.family() != class_map.family() {
        return Err(MetricsError::ClassMapMismatch {
            index,
            expected: class_map.family(),
        });
    }
    if pred.dimensions() != gt.dimensions() {
        return Err(MetricsError::DimensionMismatch {
            index,
            pred: pred.dimensions(),
            gt: gt.dimensions(),
        });
    }
    Ok(())
}

/// Dice ratio from pixel counts; 1 when the class is absent from both sides.
pub fn dice_from_counts(intersection: u64, predicted: u64, ground_truth: u64) -> f64 {
    let denom = predicted + ground_truth;
    if denom == 0 {
        1.0
    } else {
        2.0 * intersection as f64 / denom as f64
    }
}

/// Dice coefficient of class `c` between two masks.
pub fn class_dice(pred: &SegmentationMask, gt: &SegmentationMask, c: ClassId) -> Result<f64, MetricsError> {
    let class_map = gt.class_map();
    check_pair(0, pred, gt, &class_map)?;
    if !class_map.contains(c) {
        return Err(MetricsError::UnknownClass(c));
    }
    let (mut inter, mut p, mut g) = (0u64, 0u64, 0u64);
    for (&a, &b) in pred.labels().iter().zip(gt.labels()) {
        let (in_p, in_g) = (a == c, b == c);
        p += u64::from(in_p);
        g += u64::from(in_g);
        inter += u64::from(in_p && in_g);
    }
    Ok(dice_from_counts(inter, p, g))
}

fn pooled_confusion(pairs: &[MaskPair], class_map: &ClassMap) -> Result<ConfusionMatrix, MetricsError> {
    if pairs.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    for (i, (pred, gt)) in pairs.iter().enumerate() {
        check_pair(i, pred, gt, class_map)?;
    }
    let n = class_map.len();
    Ok(pairs
        .par_iter()
        .map(|(pred, gt)| ConfusionMatrix::from_pair(pred, gt, n))
        .reduce(|| ConfusionMatrix::zeros(n), |a, b| a + b))
}

/// Fraction of pixels where prediction equals ground truth, over all pairs.
pub fn pixel_accuracy(pairs: &[MaskPair]) -> Result<f64, MetricsError> {
    let class_map = pairs.first().ok_or(MetricsError::EmptyInput)?.1.class_map();
    Ok(pooled_confusion(pairs, &class_map)?.accuracy())
}

/// Pooled metrics over every pair.
pub fn dataset_metrics(pairs: &[MaskPair], class_map: &ClassMap) -> Result<MetricReport, MetricsError> {
    dataset_metrics_with(pairs, class_map, Aggregation::Pooled)
}

pub fn dataset_metrics_with(
    pairs: &[MaskPair],
    class_map: &ClassMap,
    aggregation: Aggregation,
) -> Result<MetricReport, MetricsError> {
    let confusion = pooled_confusion(pairs, class_map)?;
    let gt_totals = confusion.ground_truth_totals();
    let pred_totals = confusion.predicted_totals();

    let dice: Vec<f64> = match aggregation {
        Aggregation::Pooled => (0..class_map.len())
            .map(|c| dice_from_counts(confusion.get(c, c), pred_totals[c], gt_totals[c]))
            .collect(),
        Aggregation::PerImage => {
            let n = class_map.len();
            let per_image: Vec<ConfusionMatrix> = pairs
                .par_iter()
                .map(|(pred, gt)| ConfusionMatrix::from_pair(pred, gt, n))
                .collect();
            (0..n)
                .map(|c| {
                    let sum: f64 = per_image
                        .iter()
                        .map(|m| dice_from_counts(m.get(c, c), m.predicted_totals()[c], m.ground_truth_totals()[c]))
                        .sum();
                    sum / per_image.len() as f64
                })
                .collect()
        }
    };

    let classes: Vec<ClassMetric> = class_map
        .classes()
        .iter()
        .zip(&dice)
        .map(|(info, &d)| {
            let c = usize::from(info.id);
            ClassMetric {
                class_id: info.id,
                name: info.name.clone(),
                dice: d,
                absent: pred_totals[c] + gt_totals[c] == 0,
                predicted_pixels: pred_totals[c],
                ground_truth_pixels: gt_totals[c],
                intersection_pixels: confusion.get(c, c),
            }
        })
        .collect();
    let mean_dsc = dice.iter().sum::<f64>() / dice.len() as f64;

    Ok(MetricReport {
        class_map: class_map.family(),
        aggregation,
        n_pairs: pairs.len(),
        n_pixels: confusion.total(),
        classes,
        mean_dsc,
        pixel_accuracy: confusion.accuracy(),
        confusion,
    })
}
