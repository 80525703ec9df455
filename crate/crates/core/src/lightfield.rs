//! Light field container, view directory I/O and quality metrics.
//!
//! Rays are stored view-major: the linear index of ray `(m, n, s, t)` is
//! `((m * N + n) * S + s) * T + t`. Graph vertex identity is derived from
//! this index, so it must never change.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::pnm;

pub const METADATA_FILE: &str = "lightfield.txt";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LightField {
    rows: usize,
    cols: usize,
    height: usize,
    width: usize,
    bitdepth: u8,
    data: Vec<u16>,
}

impl LightField {
    pub fn new(rows: usize, cols: usize, height: usize, width: usize, bitdepth: u8) -> Result<Self> {
        if rows == 0 || cols == 0 || height == 0 || width == 0 {
            return Err(Error::InvalidArgument("light field dimensions must be positive".into()));
        }
        if !(1..=16).contains(&bitdepth) {
            return Err(Error::InvalidArgument(format!("unsupported bit depth {bitdepth}")));
        }
        Ok(LightField {
            rows,
            cols,
            height,
            width,
            bitdepth,
            data: vec![0; rows * cols * height * width],
        })
    }

    /// Builds a light field from views listed row-major by `(m, n)`.
    pub fn from_views(
        rows: usize,
        cols: usize,
        height: usize,
        width: usize,
        bitdepth: u8,
        views: Vec<Vec<u16>>,
    ) -> Result<Self> {
        let mut lf = Self::new(rows, cols, height, width, bitdepth)?;
        if views.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} views, got {}",
                rows * cols,
                views.len()
            )));
        }
        let peak = lf.peak();
        for (v, view) in views.into_iter().enumerate() {
            if view.len() != height * width {
                return Err(Error::DimensionMismatch(format!(
                    "view {v} has {} pixels, expected {}",
                    view.len(),
                    height * width
                )));
            }
            if let Some(bad) = view.iter().find(|&&p| p > peak) {
                return Err(Error::InvalidArgument(format!(
                    "view {v} holds value {bad} above peak {peak}"
                )));
            }
            lf.view_mut(v).copy_from_slice(&view);
        }
        Ok(lf)
    }

    /// Angular rows `M`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Angular columns `N`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Spatial rows `S`.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Spatial columns `T`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bitdepth(&self) -> u8 {
        self.bitdepth
    }

    pub fn peak(&self) -> u16 {
        ((1u32 << self.bitdepth) - 1) as u16
    }

    pub fn num_views(&self) -> usize {
        self.rows * self.cols
    }

    pub fn view_len(&self) -> usize {
        self.height * self.width
    }

    pub fn num_rays(&self) -> usize {
        self.data.len()
    }

    pub fn dims(&self) -> Dims {
        Dims {
            rows: self.rows,
            cols: self.cols,
            height: self.height,
            width: self.width,
        }
    }

    pub fn ray_index(&self, m: usize, n: usize, s: usize, t: usize) -> usize {
        self.dims().ray_index(m, n, s, t)
    }

    pub fn get(&self, m: usize, n: usize, s: usize, t: usize) -> u16 {
        self.data[self.ray_index(m, n, s, t)]
    }

    pub fn set(&mut self, m: usize, n: usize, s: usize, t: usize, value: u16) {
        let i = self.ray_index(m, n, s, t);
        self.data[i] = value;
    }

    /// View `v = m * N + n`.
    pub fn view(&self, v: usize) -> &[u16] {
        let len = self.view_len();
        &self.data[v * len..(v + 1) * len]
    }

    pub fn view_mut(&mut self, v: usize) -> &mut [u16] {
        let len = self.view_len();
        &mut self.data[v * len..(v + 1) * len]
    }

    pub fn rays(&self) -> &[u16] {
        &self.data
    }

    pub fn rays_mut(&mut self) -> &mut [u16] {
        &mut self.data
    }
}

/// Light field geometry `(M, N, S, T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub rows: usize,
    pub cols: usize,
    pub height: usize,
    pub width: usize,
}

impl Dims {
    pub fn num_views(&self) -> usize {
        self.rows * self.cols
    }

    pub fn view_len(&self) -> usize {
        self.height * self.width
    }

    pub fn num_rays(&self) -> usize {
        self.num_views() * self.view_len()
    }

    pub fn ray_index(&self, m: usize, n: usize, s: usize, t: usize) -> usize {
        ((m * self.cols + n) * self.height + s) * self.width + t
    }

    /// Inverse of [`Dims::ray_index`]: `(view, s, t)`.
    pub fn split_ray(&self, ray: usize) -> (usize, usize, usize) {
        let view_len = self.view_len();
        let v = ray / view_len;
        let p = ray % view_len;
        (v, p / self.width, p % self.width)
    }
}

/// Disparity of the top-left view, in pixels per unit angular step.
///
/// Content at `(s, t)` in view `(0, 0)` appears at `(s + m*d, t + n*d)` in
/// view `(m, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DisparityMap {
    pub height: usize,
    pub width: usize,
    pub values: Vec<f64>,
}

impl DisparityMap {
    pub fn new(height: usize, width: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != height * width {
            return Err(Error::DimensionMismatch(format!(
                "disparity map has {} values for {height}x{width}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("disparity map holds non-finite values".into()));
        }
        Ok(DisparityMap { height, width, values })
    }

    pub fn constant(height: usize, width: usize, d: f64) -> Self {
        DisparityMap {
            height,
            width,
            values: vec![d; height * width],
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let (width, height, values) = pnm::read_pfm(path)?;
        Self::new(height, width, values.into_iter().map(f64::from).collect())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let values: Vec<f32> = self.values.iter().map(|&v| v as f32).collect();
        pnm::write_pfm(path, self.width, self.height, &values)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QualityReport {
    pub psnr_db: f64,
    pub bits_total: u64,
    pub bpp: f64,
}

impl QualityReport {
    pub fn new(original: &LightField, decoded: &LightField, bits_total: u64) -> Result<Self> {
        Ok(QualityReport {
            psnr_db: psnr(original, decoded)?,
            bits_total,
            bpp: bits_total as f64 / original.num_rays() as f64,
        })
    }
}

/// PSNR over all rays. Identical inputs give `f64::INFINITY`.
pub fn psnr(a: &LightField, b: &LightField) -> Result<f64> {
    if a.dims() != b.dims() || a.bitdepth != b.bitdepth {
        return Err(Error::DimensionMismatch(format!(
            "{:?}@{} vs {:?}@{}",
            a.dims(),
            a.bitdepth,
            b.dims(),
            b.bitdepth
        )));
    }
    let sse: u64 = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / a.num_rays() as f64;
    let peak = a.peak() as f64;
    Ok(10.0 * (peak * peak / mse).log10())
}

/// File naming of the views inside a light field directory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViewNaming {
    pub prefix: String,
    /// Zero-padding width of the zero-based `m` and `n` indices.
    pub pad: usize,
}

impl Default for ViewNaming {
    fn default() -> Self {
        ViewNaming {
            prefix: "view_".into(),
            pad: 2,
        }
    }
}

impl ViewNaming {
    pub fn stem(&self, m: usize, n: usize) -> String {
        format!("{}{:0w$}_{:0w$}", self.prefix, m, n, w = self.pad)
    }

    fn locate(&self, dir: &Path, m: usize, n: usize) -> Result<PathBuf> {
        let stem = self.stem(m, n);
        for ext in ["pgm", "ppm", "pnm"] {
            let p = dir.join(format!("{stem}.{ext}"));
            if p.exists() {
                return Ok(p);
            }
        }
        Err(Error::MissingFile(dir.join(format!("{stem}.pgm"))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Metadata {
    rows: usize,
    cols: usize,
    bitdepth: u8,
}

fn read_metadata(dir: &Path) -> Result<Metadata> {
    let path = dir.join(METADATA_FILE);
    if !path.exists() {
        return Err(Error::MissingFile(path));
    }
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let bad = |reason: String| Error::BadMetadata {
        path: path.clone(),
        reason,
    };
    let (mut rows, mut cols, mut bitdepth) = (None, None, None);
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .or_else(|| line.split_once(':'))
            .ok_or_else(|| bad(format!("cannot parse line `{line}`")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| bad(format!("non-integer value for `{}`", key.trim())))?;
        match key.trim() {
            "rows" => rows = Some(value),
            "cols" => cols = Some(value),
            "bitdepth" => bitdepth = Some(value),
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    let rows = rows.ok_or_else(|| bad("missing `rows`".into()))?;
    let cols = cols.ok_or_else(|| bad("missing `cols`".into()))?;
    let bitdepth = bitdepth.unwrap_or(8);
    if rows == 0 || cols == 0 {
        return Err(bad("rows and cols must be positive".into()));
    }
    if !(1..=16).contains(&bitdepth) {
        return Err(bad(format!("unsupported bitdepth {bitdepth}")));
    }
    Ok(Metadata {
        rows,
        cols,
        bitdepth: bitdepth as u8,
    })
}

pub fn load_light_field(dir: &Path, naming: &ViewNaming) -> Result<LightField> {
    let meta = read_metadata(dir)?;
    let mut views = Vec::with_capacity(meta.rows * meta.cols);
    let mut shape: Option<(usize, usize, PathBuf)> = None;
    for m in 0..meta.rows {
        for n in 0..meta.cols {
            let path = naming.locate(dir, m, n)?;
            let map = pnm::read_pnm(&path)?;
            match &shape {
                None => shape = Some((map.height, map.width, path.clone())),
                Some((h, w, first)) if (*h, *w) != (map.height, map.width) => {
                    return Err(Error::BadImage {
                        path,
                        reason: format!(
                            "{}x{} differs from {}x{} of {}",
                            map.height,
                            map.width,
                            h,
                            w,
                            first.display()
                        ),
                    })
                }
                _ => {}
            }
            let peak = (1u32 << meta.bitdepth) - 1;
            let luma = map.luma();
            if luma.iter().any(|&v| v as u32 > peak) {
                return Err(Error::BadImage {
                    path,
                    reason: format!("values exceed {}-bit range", meta.bitdepth),
                });
            }
            views.push(luma);
        }
    }
    let (height, width, _) = shape.expect("at least one view");
    LightField::from_views(meta.rows, meta.cols, height, width, meta.bitdepth, views)
}

pub fn save_light_field(lf: &LightField, dir: &Path, naming: &ViewNaming) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let meta = format!("rows = {}\ncols = {}\nbitdepth = {}\n", lf.rows, lf.cols, lf.bitdepth);
    let meta_path = dir.join(METADATA_FILE);
    std::fs::write(&meta_path, meta).map_err(|e| Error::io(&meta_path, e))?;
    for m in 0..lf.rows {
        for n in 0..lf.cols {
            let path = dir.join(format!("{}.pgm", naming.stem(m, n)));
            pnm::write_pgm(&path, lf.width, lf.height, lf.peak(), lf.view(m * lf.cols + n))?;
        }
    }
    Ok(())
}
