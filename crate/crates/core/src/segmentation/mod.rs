//! Super-pixels on the top-left view and their projection to super-rays.

mod slic;
mod superray;

pub use slic::{slic_segment, SegmentationMap, SlicParams};
pub use superray::{median_disparity, project_superrays, round_half_away, SuperRay, SuperRayMap};
