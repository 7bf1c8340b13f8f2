use proptest::prelude::*;
use wearlca_core::analytics::{aggregate, extrapolate, stitch, summarize, AnalyticsError, Patch, WearSummary};
use wearlca_core::{ClassMap, SegmentationMask};

/// Patches laid out left to right with gaps, so they never overlap.
fn disjoint_patches() -> impl Strategy<Value = (Vec<Patch>, u32, u32)> {
    prop::collection::vec((1u32..8, 1u32..8, 0u32..3, 0u32..4), 1..6).prop_flat_map(|dims| {
        let labels: Vec<_> = dims
            .iter()
            .map(|&(w, h, _, _)| prop::collection::vec(0u8..3, (w * h) as usize))
            .collect();
        (Just(dims), labels).prop_map(|(dims, labels)| {
            let cm = ClassMap::rotating_anode();
            let mut x = 0;
            let mut height = 1;
            let mut patches = Vec::new();
            for ((w, h, gap, y), l) in dims.into_iter().zip(labels) {
                x += gap;
                patches.push((SegmentationMask::new(w, h, l, &cm).unwrap(), (x, y)));
                x += w;
                height = height.max(y + h);
            }
            (patches, x + 1, height + 1)
        })
    })
}

fn summaries() -> impl Strategy<Value = Vec<WearSummary>> {
    prop::collection::vec(prop::collection::vec(0u8..4, 12), 1..12).prop_map(|masks| {
        let cm = ClassMap::machining_tool();
        masks
            .into_iter()
            .enumerate()
            .map(|(i, l)| summarize(format!("tool-{i:02}"), &SegmentationMask::new(4, 3, l, &cm).unwrap()))
            .collect()
    })
}

proptest! {
    #[test]
    fn disjoint_stitch_conserves_counts((patches, w, h) in disjoint_patches()) {
        let cm = ClassMap::rotating_anode();
        let out = stitch(&patches, w, h, &cm).unwrap();
        prop_assert_eq!(out.overlap_pixels, 0);
        let stitched = summarize("canvas", &out.mask);
        let mut expected = vec![0u64; 3];
        for (p, _) in &patches {
            for (e, c) in expected.iter_mut().zip(p.class_counts()) {
                *e += c;
            }
        }
        expected[0] += out.uncovered_pixels;
        let got: Vec<u64> = stitched.classes.iter().map(|c| c.pixels).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn overlapping_stitch_accounts_for_every_pixel(
        a in prop::collection::vec(0u8..3, 16),
        b in prop::collection::vec(0u8..3, 16),
        dx in 0u32..5,
        dy in 0u32..5,
    ) {
        let cm = ClassMap::rotating_anode();
        let pa = SegmentationMask::new(4, 4, a, &cm).unwrap();
        let pb = SegmentationMask::new(4, 4, b, &cm).unwrap();
        let out = stitch(&[(pa, (0, 0)), (pb.clone(), (dx, dy))], 9, 9, &cm).unwrap();
        let ox = 4u64.saturating_sub(u64::from(dx));
        let oy = 4u64.saturating_sub(u64::from(dy));
        prop_assert_eq!(out.overlap_pixels, ox * oy);
        prop_assert_eq!(out.uncovered_pixels, 81 - (32 - ox * oy));
        prop_assert!(out.conflict_pixels <= out.overlap_pixels);
        for y in 0..4 {
            for x in 0..4 {
                prop_assert_eq!(out.mask.get(dx + x, dy + y), pb.get(x, y));
            }
        }
    }

    #[test]
    fn aggregate_is_order_invariant(sums in summaries(), rot in 0usize..12) {
        let mut other = sums.clone();
        other.reverse();
        let k = rot % other.len();
        other.rotate_left(k);
        let a = aggregate(&sums).unwrap();
        prop_assert_eq!(&a, &aggregate(&other).unwrap());
        prop_assert_eq!(a.n_tools, sums.len());
        for c in &a.classes {
            prop_assert!((0.0..=1.0).contains(&c.incidence));
            prop_assert!(c.fraction.min <= c.fraction.median && c.fraction.median <= c.fraction.max);
            prop_assert!(c.fraction.min <= c.fraction.mean + 1e-15 && c.fraction.mean <= c.fraction.max + 1e-15);
            prop_assert_eq!(c.histogram.iter().sum::<u64>() as usize, sums.len());
        }
    }

    #[test]
    fn duplicated_ids_are_rejected(sums in summaries(), pick in 0usize..12) {
        let mut dup = sums.clone();
        dup.push(sums[pick % sums.len()].clone());
        prop_assert!(matches!(aggregate(&dup), Err(AnalyticsError::DuplicateImageId(_))));
    }

    #[test]
    fn extrapolation_round_trip(
        labels in prop::collection::vec(0u8..3, 64),
        coverage in 1e-6f64..=1.0,
        pitch in 0.1f64..50.0,
    ) {
        let m = SegmentationMask::new(8, 8, labels, &ClassMap::rotating_anode()).unwrap();
        let s = summarize("track", &m);
        let e = extrapolate(&s, coverage, pitch).unwrap();
        for (c, est) in s.classes.iter().zip(&e.classes) {
            let back = est.estimated_pixels * coverage;
            let want = c.pixels as f64;
            prop_assert!((back - want).abs() <= 1e-12 * want.max(1.0));
            let area_back = est.estimated_area_mm2 * coverage;
            prop_assert!((area_back - est.sampled_area_mm2).abs() <= 1e-12 * est.sampled_area_mm2.max(1e-300));
        }
    }
}
