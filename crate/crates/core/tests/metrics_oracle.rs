use proptest::prelude::*;
use wearlca_core::metrics::{class_dice, dataset_metrics, MaskPair};
use wearlca_core::{ClassMap, ProductFamily, SegmentationMask};

/// Mean DSC written out over one-hot indicator vectors, pooled over every
/// pixel of every pair. A class with no pixels on either side counts as 1.
fn one_hot_oracle(pairs: &[MaskPair], n_classes: usize) -> (Vec<f64>, f64) {
    let mut y_hat: Vec<Vec<f64>> = Vec::new();
    let mut g: Vec<Vec<f64>> = Vec::new();
    for (pred, gt) in pairs {
        for (&p, &t) in pred.labels().iter().zip(gt.labels()) {
            y_hat.push(
                (0..n_classes)
                    .map(|c| if usize::from(p) == c { 1.0 } else { 0.0 })
                    .collect(),
            );
            g.push(
                (0..n_classes)
                    .map(|c| if usize::from(t) == c { 1.0 } else { 0.0 })
                    .collect(),
            );
        }
    }
    let mut per_class = Vec::new();
    for c in 0..n_classes {
        let num: f64 = (0..y_hat.len()).map(|i| y_hat[i][c] * g[i][c]).sum();
        let den: f64 = (0..y_hat.len()).map(|i| y_hat[i][c] + g[i][c]).sum();
        per_class.push(if den == 0.0 { 1.0 } else { 2.0 * num / den });
    }
    let mean = per_class.iter().sum::<f64>() / n_classes as f64;
    (per_class, mean)
}

fn pair_strategy(family: ProductFamily) -> impl Strategy<Value = MaskPair> {
    let n = family.class_map().len() as u8;
    (1u32..=16, 1u32..=16).prop_flat_map(move |(w, h)| {
        let len = (w * h) as usize;
        (prop::collection::vec(0..n, len), prop::collection::vec(0..n, len)).prop_map(move |(p, t)| {
            let cm = family.class_map();
            (
                SegmentationMask::new(w, h, p, &cm).unwrap(),
                SegmentationMask::new(w, h, t, &cm).unwrap(),
            )
        })
    })
}

fn family() -> impl Strategy<Value = ProductFamily> {
    prop_oneof![Just(ProductFamily::MachiningTool), Just(ProductFamily::RotatingAnode)]
}

proptest! {
    #[test]
    fn matches_one_hot_oracle(pairs in family().prop_flat_map(|f| prop::collection::vec(pair_strategy(f), 1..5))) {
        let cm = pairs[0].0.class_map();
        let report = dataset_metrics(&pairs, &cm).unwrap();
        let (dice, mean) = one_hot_oracle(&pairs, cm.len());
        for (got, want) in report.per_class_dice().iter().zip(&dice) {
            prop_assert!((got - want).abs() <= 1e-12);
        }
        prop_assert!((report.mean_dsc - mean).abs() <= 1e-12);
    }

    #[test]
    fn dice_is_symmetric((a, b) in family().prop_flat_map(pair_strategy), c in 0u8..3) {
        prop_assert_eq!(class_dice(&a, &b, c).unwrap(), class_dice(&b, &a, c).unwrap());
    }

    #[test]
    fn report_invariants(pairs in prop::collection::vec(pair_strategy(ProductFamily::MachiningTool), 1..4)) {
        let cm = ClassMap::machining_tool();
        let r = dataset_metrics(&pairs, &cm).unwrap();
        let mean = r.per_class_dice().iter().sum::<f64>() / r.classes.len() as f64;
        prop_assert_eq!(r.mean_dsc, mean);
        prop_assert!((0.0..=1.0).contains(&r.mean_dsc));
        prop_assert!((0.0..=1.0).contains(&r.pixel_accuracy));
        prop_assert_eq!(r.pixel_accuracy, r.confusion.trace() as f64 / r.confusion.total() as f64);
        let gt: Vec<u64> = r.classes.iter().map(|c| c.ground_truth_pixels).collect();
        let pred: Vec<u64> = r.classes.iter().map(|c| c.predicted_pixels).collect();
        prop_assert_eq!(r.confusion.ground_truth_totals(), gt);
        prop_assert_eq!(r.confusion.predicted_totals(), pred);
        for c in &r.classes {
            prop_assert!((0.0..=1.0).contains(&c.dice));
        }
    }

    #[test]
    fn pair_order_does_not_matter(
        pairs in prop::collection::vec(pair_strategy(ProductFamily::RotatingAnode), 2..6),
        rot in 0usize..6,
    ) {
        let cm = ClassMap::rotating_anode();
        let mut shuffled = pairs.clone();
        shuffled.reverse();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        prop_assert_eq!(dataset_metrics(&pairs, &cm).unwrap(), dataset_metrics(&shuffled, &cm).unwrap());
    }
}
