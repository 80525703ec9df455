//! Light field coding with local graph transforms over super-rays.

pub mod analysis;
pub mod codec;
pub mod disparity;
pub mod error;
pub mod graph;
pub mod lightfield;
pub mod pnm;
pub mod prediction;
pub mod sampling;
pub mod segmentation;
pub mod synthetic;

pub use error::{Error, Result};
