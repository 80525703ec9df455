//! Layered test scenes rendered into light fields with exact integer
//! disparities and occlusions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lightfield::{DisparityMap, LightField};

#[derive(Clone, Debug, PartialEq)]
pub enum Texture {
    /// Grey image sampled with clamp-to-edge; values in `[0, 1]`.
    Image {
        height: usize,
        width: usize,
        values: Vec<f64>,
    },
    /// `base + Σ a sin(fs·s + ft·t + phase)`, values clamped to `[0, 1]`.
    Waves { base: f64, waves: Vec<[f64; 4]> },
}

impl Texture {
    fn sample(&self, s: i64, t: i64) -> f64 {
        match self {
            Texture::Image { height, width, values } => {
                let s = s.clamp(0, *height as i64 - 1) as usize;
                let t = t.clamp(0, *width as i64 - 1) as usize;
                values[s * width + t]
            }
            Texture::Waves { base, waves } => {
                let v: f64 = waves
                    .iter()
                    .map(|[a, fs, ft, ph]| a * (fs * s as f64 + ft * t as f64 + ph).sin())
                    .sum();
                (base + v).clamp(0.0, 1.0)
            }
        }
    }

    /// Texture from 16-bit samples with the given peak value.
    pub fn from_samples(height: usize, width: usize, samples: &[u16], peak: u16) -> Self {
        Texture::Image {
            height,
            width,
            values: samples.iter().map(|&v| v as f64 / peak as f64).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Full,
    /// Half-open `[s0, s1) x [t0, t1)`.
    Rect {
        s0: i64,
        t0: i64,
        s1: i64,
        t1: i64,
    },
    Disc {
        cs: f64,
        ct: f64,
        radius: f64,
    },
}

impl Shape {
    fn contains(&self, s: i64, t: i64) -> bool {
        match *self {
            Shape::Full => true,
            Shape::Rect { s0, t0, s1, t1 } => (s0..s1).contains(&s) && (t0..t1).contains(&t),
            Shape::Disc { cs, ct, radius } => {
                let (ds, dt) = (s as f64 - cs, t as f64 - ct);
                ds * ds + dt * dt <= radius * radius
            }
        }
    }
}

/// A fronto-parallel layer; `shape` and `texture` are in top-left-view
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub disparity: i64,
    pub shape: Shape,
    pub texture: Texture,
}

/// Renders layers (back to front) so that the point at `(s, t)` of view
/// `(0, 0)` appears at `(s + m d, t + n d)` in view `(m, n)`. Returns the
/// light field and the top-left view's disparity.
pub fn render(
    rows: usize,
    cols: usize,
    height: usize,
    width: usize,
    bitdepth: u8,
    layers: &[Layer],
) -> Result<(LightField, DisparityMap)> {
    if layers.is_empty() || layers[0].shape != Shape::Full {
        return Err(Error::InvalidArgument(
            "the back layer must cover the whole view".into(),
        ));
    }
    let mut lf = LightField::new(rows, cols, height, width, bitdepth)?;
    let peak = lf.peak() as f64;
    let mut disparity = vec![0.0; height * width];
    for m in 0..rows {
        for n in 0..cols {
            for s in 0..height {
                for t in 0..width {
                    let layer = layers
                        .iter()
                        .rev()
                        .find(|l| {
                            let (rs, rt) = (s as i64 - m as i64 * l.disparity, t as i64 - n as i64 * l.disparity);
                            l.shape.contains(rs, rt)
                        })
                        .expect("back layer is full");
                    let (rs, rt) = (
                        s as i64 - m as i64 * layer.disparity,
                        t as i64 - n as i64 * layer.disparity,
                    );
                    let v = (layer.texture.sample(rs, rt) * peak).round();
                    lf.set(m, n, s, t, v as u16);
                    if m == 0 && n == 0 {
                        disparity[s * width + t] = layer.disparity as f64;
                    }
                }
            }
        }
    }
    Ok((lf, DisparityMap::new(height, width, disparity)?))
}

fn random_waves(rng: &mut ChaCha8Rng, count: usize, amplitude: f64, max_freq: f64) -> Texture {
    let waves = (0..count)
        .map(|_| {
            [
                amplitude * rng.random_range(0.3..1.0),
                rng.random_range(-max_freq..max_freq),
                rng.random_range(-max_freq..max_freq),
                rng.random_range(0.0..std::f64::consts::TAU),
            ]
        })
        .collect();
    Texture::Waves {
        base: rng.random_range(0.35..0.65),
        waves,
    }
}

/// Smooth textured background at disparity 0 with a rectangle at disparity 1
/// and a disc at disparity 2, all parameters drawn from `seed`.
pub fn textured_scene(height: usize, width: usize, seed: u64) -> Vec<Layer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (h, w) = (height as f64, width as f64);
    let back = Layer {
        disparity: 0,
        shape: Shape::Full,
        texture: random_waves(&mut rng, 4, 0.08, 0.25),
    };
    let rect = Layer {
        disparity: 1,
        shape: Shape::Rect {
            s0: (h * rng.random_range(0.1..0.3)) as i64,
            t0: (w * rng.random_range(0.1..0.3)) as i64,
            s1: (h * rng.random_range(0.5..0.7)) as i64,
            t1: (w * rng.random_range(0.5..0.7)) as i64,
        },
        texture: random_waves(&mut rng, 3, 0.1, 0.3),
    };
    let disc = Layer {
        disparity: 2,
        shape: Shape::Disc {
            cs: h * rng.random_range(0.55..0.75),
            ct: w * rng.random_range(0.55..0.75),
            radius: h.min(w) * rng.random_range(0.12..0.2),
        },
        texture: random_waves(&mut rng, 3, 0.1, 0.3),
    };
    vec![back, rect, disc]
}

/// Photographic layers: `back` at disparity 0, a rectangle of `front` at
/// disparity 1 and a disc of `front` at disparity 2.
pub fn photo_scene(back: Texture, front: Texture, height: usize, width: usize) -> Vec<Layer> {
    let (h, w) = (height as f64, width as f64);
    vec![
        Layer {
            disparity: 0,
            shape: Shape::Full,
            texture: back,
        },
        Layer {
            disparity: 1,
            shape: Shape::Rect {
                s0: (h * 0.15) as i64,
                t0: (w * 0.12) as i64,
                s1: (h * 0.55) as i64,
                t1: (w * 0.5) as i64,
            },
            texture: front.clone(),
        },
        Layer {
            disparity: 2,
            shape: Shape::Disc {
                cs: h * 0.68,
                ct: w * 0.62,
                radius: h.min(w) * 0.18,
            },
            texture: front,
        },
    ]
}
