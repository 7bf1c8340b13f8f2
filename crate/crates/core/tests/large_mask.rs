use std::time::Instant;

use wearlca_core::wear::{load_mask, write_mask};
use wearlca_core::{ClassMap, SegmentationMask};

/// A full focal-track scan: 19,000 rows by 5,000 columns of 64-pixel patches.
#[test]
fn loads_full_track_scan() {
    let (w, h) = (5_000u32, 19_000u32);
    let cm = ClassMap::rotating_anode();
    let labels: Vec<u8> = (0..h as usize)
        .flat_map(|y| (0..w as usize).map(move |x| (((x / 64) + (y / 64)) % 3) as u8))
        .collect();
    let mask = SegmentationMask::new(w, h, labels, &cm).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("track.png");
    write_mask(&path, &mask).unwrap();
    drop(mask);

    let start = Instant::now();
    let loaded = load_mask(&path, &cm).unwrap();
    eprintln!("loaded {}x{} in {:?}", loaded.width(), loaded.height(), start.elapsed());
    assert_eq!(loaded.len(), 95_000_000);
    assert_eq!(loaded.get(64, 0), Some(1));
    assert_eq!(loaded.get(4_999, 18_999), Some(((4_999 / 64 + 18_999 / 64) % 3) as u8));
}
