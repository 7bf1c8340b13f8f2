//! Wear-state evaluation and life-cycle impact scenarios for product-service
//! systems built around visual wear inspection.
//!
//! - [`wear`]: class taxonomies, segmentation masks, mask files and dataset manifests.
//! - [`metrics`]: Dice, mean DSC, pixel accuracy and confusion matrices.
//! - [`analytics`]: per-image wear summaries, process profiles, patch stitching
//!   and focal-track extrapolation.
//! - [`lca`]: inventories scaled to a functional unit, midpoint characterization
//!   and scenario comparison for the machining-tool and rotating-anode cases.

pub mod analytics;
pub mod lca;
pub mod metrics;
pub mod wear;

pub use wear::{ClassId, ClassMap, ProductFamily, SegmentationMask};
