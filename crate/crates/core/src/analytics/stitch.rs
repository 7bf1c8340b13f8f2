use serde::Serialize;

use super::AnalyticsError;
use crate::wear::{ClassMap, SegmentationMask};

/// A mask placed at pixel offset (x, y) of a larger canvas.
pub type Patch = (SegmentationMask, (u32, u32));

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StitchedCanvas {
    pub mask: SegmentationMask,
    /// Pixels no patch covers; they keep class 0.
    pub uncovered_pixels: u64,
    /// Pixels covered by more than one patch.
    pub overlap_pixels: u64,
    /// Overlap pixels where the patches disagree on the label.
    pub conflict_pixels: u64,
}

const COVERED: u8 = 1;
const OVERLAP: u8 = 2;
const CONFLICT: u8 = 4;

/// Pastes patches in list order onto a class-0 canvas; later patches
/// overwrite earlier ones where they overlap.
pub fn stitch(
    patches: &[Patch],
    width: u32,
    height: u32,
    class_map: &ClassMap,
) -> Result<StitchedCanvas, AnalyticsError> {
    for (index, (p, (x, y))) in patches.iter().enumerate() {
        if p.family() != class_map.family() {
            return Err(AnalyticsError::MixedFamilies(class_map.family(), p.family()));
        }
        let fits_x = u64::from(*x) + u64::from(p.width()) <= u64::from(width);
        let fits_y = u64::from(*y) + u64::from(p.height()) <= u64::from(height);
        if !(fits_x && fits_y) {
            return Err(AnalyticsError::PatchOutOfBounds {
                index,
                x: *x,
                y: *y,
                width: p.width(),
                height: p.height(),
                canvas_width: width,
                canvas_height: height,
            });
        }
    }

    let w = width as usize;
    let n = w * height as usize;
    let mut labels = vec![0u8; n];
    let mut state = vec![0u8; n];
    for (p, (x, y)) in patches {
        let pw = p.width() as usize;
        if pw == 0 {
            continue;
        }
        for (row, src) in p.labels().chunks(pw).enumerate() {
            let start = (*y as usize + row) * w + *x as usize;
            let dst = &mut labels[start..start + pw];
            let st = &mut state[start..start + pw];
            for i in 0..pw {
                if st[i] & COVERED != 0 {
                    st[i] |= OVERLAP;
                    if dst[i] != src[i] {
                        st[i] |= CONFLICT;
                    }
                }
                st[i] |= COVERED;
                dst[i] = src[i];
            }
        }
    }

    let mut uncovered = 0;
    let mut overlap = 0;
    let mut conflict = 0;
    for &s in &state {
        uncovered += u64::from(s & COVERED == 0);
        overlap += u64::from(s & OVERLAP != 0);
        conflict += u64::from(s & CONFLICT != 0);
    }
    let mask = SegmentationMask::new(width, height, labels, class_map).expect("patch labels are valid");
    Ok(StitchedCanvas {
        mask,
        uncovered_pixels: uncovered,
        overlap_pixels: overlap,
        conflict_pixels: conflict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anode(rows: &[&[u8]]) -> SegmentationMask {
        SegmentationMask::from_rows(rows, &ClassMap::rotating_anode()).unwrap()
    }

    #[test]
    fn full_canvas_patch_is_identity() {
        let p = anode(&[&[1, 2], &[0, 1]]);
        let out = stitch(&[(p.clone(), (0, 0))], 2, 2, &ClassMap::rotating_anode()).unwrap();
        assert_eq!(out.mask, p);
        assert_eq!(out.uncovered_pixels, 0);
    }

    #[test]
    fn disjoint_patches() {
        let a = anode(&[&[1, 1]]);
        let b = anode(&[&[2], &[2]]);
        let out = stitch(&[(a, (0, 0)), (b, (3, 1))], 4, 3, &ClassMap::rotating_anode()).unwrap();
        assert_eq!(out.uncovered_pixels, 12 - 4);
        assert_eq!(out.overlap_pixels, 0);
        assert_eq!(out.mask.get(1, 0), Some(1));
        assert_eq!(out.mask.get(3, 2), Some(2));
    }

    #[test]
    fn later_patch_wins() {
        let a = anode(&[&[1, 1, 1]]);
        let b = anode(&[&[2, 1]]);
        let out = stitch(&[(a, (0, 0)), (b, (1, 0))], 3, 1, &ClassMap::rotating_anode()).unwrap();
        assert_eq!(out.mask.labels(), &[1, 2, 1]);
        assert_eq!(out.overlap_pixels, 2);
        assert_eq!(out.conflict_pixels, 1);
    }

    #[test]
    fn out_of_bounds() {
        let a = anode(&[&[1, 1]]);
        assert!(matches!(
            stitch(&[(a, (3, 0))], 4, 1, &ClassMap::rotating_anode()),
            Err(AnalyticsError::PatchOutOfBounds { index: 0, .. })
        ));
    }
}
