//! Super-ray graphs, Laplacian eigenbases and graph Fourier transforms.

mod build;
mod eigen;

pub use build::{build_superray_graph, laplacian, SuperRayGraph};
pub use eigen::{components, eigendecompose, gft_forward, gft_inverse, EigenBasis, EIGENSOLVER_ID};
