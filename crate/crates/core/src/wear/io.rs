//! Mask files.
//!
//! Two encodings are supported:
//! - 8-bit single-channel images (PNG, TIFF, PGM, BMP) where the pixel value
//!   is the class id;
//! - a plain-text grid, one row per line, labels separated by whitespace.
//!   Files ending in `.txt` or `.mask` use this encoding.

use std::fs;
use std::path::Path;

use image::{DynamicImage, GrayImage, ImageReader};

use super::{ClassId, ClassMap, SegmentationMask, WearError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaskEncoding {
    Image,
    Text,
}

impl MaskEncoding {
    pub fn for_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase) {
            Some(ext) if ext == "txt" || ext == "mask" => MaskEncoding::Text,
            _ => MaskEncoding::Image,
        }
    }
}

pub fn load_mask(path: &Path, class_map: &ClassMap) -> Result<SegmentationMask, WearError> {
    match MaskEncoding::for_path(path) {
        MaskEncoding::Text => {
            let text = fs::read_to_string(path).map_err(|e| WearError::UnreadableFile {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })?;
            decode_text_mask(&text, class_map)
        }
        MaskEncoding::Image => load_image_mask(path, class_map),
    }
}

fn load_image_mask(path: &Path, class_map: &ClassMap) -> Result<SegmentationMask, WearError> {
    let unreadable = |reason: String| WearError::UnreadableFile {
        path: path.to_path_buf(),
        reason,
    };
    let mut reader = ImageReader::open(path)
        .map_err(|e| unreadable(e.to_string()))?
        .with_guessed_format()
        .map_err(|e| unreadable(e.to_string()))?;
    let mut limits = image::Limits::default();
    // Focal-track scans are ~19k x 5k single-byte pixels.
    limits.max_alloc = Some(1 << 30);
    reader.limits(limits);
    let decoded = reader.decode().map_err(|e| unreadable(e.to_string()))?;
    let gray = match decoded {
        DynamicImage::ImageLuma8(g) => g,
        other => {
            return Err(WearError::UnsupportedEncoding {
                path: path.to_path_buf(),
                detail: format!("expected 8-bit single-channel, got {:?}", other.color()),
            })
        }
    };
    let (width, height) = gray.dimensions();
    SegmentationMask::new(width, height, gray.into_raw(), class_map)
}

/// Writes `mask` using the encoding implied by the file extension.
pub fn write_mask(path: &Path, mask: &SegmentationMask) -> Result<(), WearError> {
    let unwritable = |reason: String| WearError::UnwritableFile {
        path: path.to_path_buf(),
        reason,
    };
    match MaskEncoding::for_path(path) {
        MaskEncoding::Text => fs::write(path, encode_text_mask(mask)).map_err(|e| unwritable(e.to_string())),
        MaskEncoding::Image => {
            let img = GrayImage::from_raw(mask.width(), mask.height(), mask.labels().to_vec())
                .ok_or_else(|| unwritable("label buffer does not match dimensions".into()))?;
            img.save(path).map_err(|e| unwritable(e.to_string()))
        }
    }
}

pub fn decode_text_mask(text: &str, class_map: &ClassMap) -> Result<SegmentationMask, WearError> {
    let mut width: Option<u32> = None;
    let mut labels = Vec::new();
    let mut height = 0u32;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row_len = 0u32;
        for token in line.split_whitespace() {
            let value: u32 = token
                .parse()
                .map_err(|_| WearError::DimensionMismatch(format!("row {height}: {token:?} is not a class id")))?;
            if value > u32::from(u8::MAX) || !class_map.contains(value as ClassId) {
                return Err(WearError::UnknownClassId {
                    value,
                    x: row_len,
                    y: height,
                });
            }
            labels.push(value as ClassId);
            row_len += 1;
        }
        match width {
            None => width = Some(row_len),
            Some(w) if w != row_len => {
                return Err(WearError::DimensionMismatch(format!(
                    "row {height} has {row_len} entries, expected {w}"
                )))
            }
            Some(_) => {}
        }
        height += 1;
    }
    SegmentationMask::new(width.unwrap_or(0), height, labels, class_map)
}

pub fn encode_text_mask(mask: &SegmentationMask) -> String {
    let mut out = String::with_capacity(mask.len() * 2);
    let width = mask.width() as usize;
    if width == 0 {
        return out;
    }
    for row in mask.labels().chunks(width) {
        let line: Vec<String> = row.iter().map(|l| l.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_text_mask() {
        let cm = ClassMap::machining_tool();
        let m = decode_text_mask("0 0\n1 1\n", &cm).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m.classes_present(), vec![0, 1]);
    }

    #[test]
    fn class_seven_is_unknown_for_machining() {
        let cm = ClassMap::machining_tool();
        let err = decode_text_mask("0 1\n7 0\n", &cm).unwrap_err();
        assert!(matches!(err, WearError::UnknownClassId { value: 7, x: 0, y: 1 }));
    }

    #[test]
    fn ragged_text_rows() {
        let cm = ClassMap::machining_tool();
        assert!(matches!(
            decode_text_mask("0 1 2\n0 1\n", &cm),
            Err(WearError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn missing_file_is_unreadable() {
        let cm = ClassMap::machining_tool();
        for name in ["nope.png", "nope.txt"] {
            let err = load_mask(Path::new(name), &cm).unwrap_err();
            assert!(matches!(err, WearError::UnreadableFile { .. }), "{err:?}");
        }
    }

    #[test]
    fn png_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.png");
        let cm = ClassMap::rotating_anode();
        let m = SegmentationMask::from_rows(&[[0u8, 1, 2], [2, 1, 0]], &cm).unwrap();
        write_mask(&path, &m).unwrap();
        assert_eq!(load_mask(&path, &cm).unwrap(), m);
    }

    #[test]
    fn rgb_images_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rgb.png");
        image::RgbImage::new(2, 2).save(&path).unwrap();
        let err = load_mask(&path, &ClassMap::machining_tool()).unwrap_err();
        assert!(matches!(err, WearError::UnsupportedEncoding { .. }));
    }
}
