#![allow(dead_code)]

use std::path::PathBuf;

use srgf_core::lightfield::{DisparityMap, LightField};
use srgf_core::pnm::read_pnm;
use srgf_core::synthetic::{photo_scene, render, textured_scene, Texture};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

fn texture(name: &str) -> Texture {
    let img = read_pnm(&data_path(name)).unwrap();
    Texture::from_samples(img.height, img.width, &img.luma(), img.maxval)
}

/// Photographic 4x4 x 128x128 field: camera background, coin foreground
/// layers at disparities 1 and 2.
pub fn photo_field() -> (LightField, DisparityMap) {
    render(
        4,
        4,
        128,
        128,
        8,
        &photo_scene(texture("camera.pgm"), texture("coins.pgm"), 128, 128),
    )
    .unwrap()
}

pub fn synthetic_field(rows: usize, cols: usize, size: usize, seed: u64) -> (LightField, DisparityMap) {
    render(rows, cols, size, size, 8, &textured_scene(size, size, seed)).unwrap()
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srgf_core::codec::{build_geometry, Geometry};
use srgf_core::segmentation::{project_superrays, SlicParams};

/// Random small field: layered scene plus pixel noise, segmented with a
/// random super-pixel count and re-projected with random fractional label
/// disparities.
pub fn random_geometry(seed: u64) -> (LightField, Geometry) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = rng.random_range(1..=3);
    let cols = rng.random_range(1..=3);
    let size = rng.random_range(6..=14);
    let (mut lf, disp) = render(rows, cols, size, size, 8, &textured_scene(size, size, seed)).unwrap();
    for v in lf.rays_mut() {
        *v = (*v as i32 + rng.random_range(-20..=20)).clamp(0, 255) as u16;
    }
    let slic = SlicParams {
        k_target: rng.random_range(1..=size * size / 3),
        ..SlicParams::default()
    };
    let mut g = build_geometry(lf.view(0), &disp, lf.dims(), 8, &slic, 400).unwrap();
    let disparity: Vec<f64> = (0..g.segmentation.count).map(|_| rng.random_range(-2.0..2.0)).collect();
    g.srmap = project_superrays(&g.segmentation, &disparity, lf.dims()).unwrap();
    g.superrays = g.srmap.superrays();
    g.disparity = disparity;
    (lf, g)
}
