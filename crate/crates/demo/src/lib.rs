//! Browser demo over a synthetic 4x4 light field: super-ray segmentation,
//! energy compaction / conditioning diagnostics, and an encode/decode round
//! trip.
//!
//! [`Session`] holds the logic and runs natively; [`Demo`] is its
//! wasm-bindgen face.

use std::fmt::Display;

use wasm_bindgen::prelude::*;

use srgf_core::analysis::{analyze, AnalysisReport};
use srgf_core::codec::{build_geometry, decode, encode, EncoderConfig, Geometry, Mode, Quantizer};
use srgf_core::lightfield::{psnr, DisparityMap, LightField};
use srgf_core::segmentation::SlicParams;
use srgf_core::synthetic::{render, textured_scene};
use srgf_core::{Error, Result};

pub const VIEWS: usize = 4;
pub const MIN_SIZE: usize = 16;
pub const MAX_SIZE: usize = 128;

#[wasm_bindgen]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub superrays: u32,
    pub energy_nonseparable: f64,
    pub energy_separable: f64,
    pub median_cond_sampled: f64,
    pub median_cond_naive: f64,
    pub max_cond_sampled: f64,
    pub max_cond_naive: f64,
    pub reference_bits: u64,
    pub dc_direct_bits: u64,
}

#[wasm_bindgen]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CodingSummary {
    pub bytes: usize,
    pub bpp: f64,
    /// `+inf` for an exact reconstruction.
    pub psnr_db: f64,
}

pub struct Session {
    lf: LightField,
    disp: DisparityMap,
    config: EncoderConfig,
    geometry: Option<Geometry>,
    report: Option<AnalysisReport>,
    decoded: Option<LightField>,
}

fn grey_rgba(pixels: &[u16], peak: u16) -> Vec<u8> {
    let scale = 255.0 / peak as f64;
    pixels
        .iter()
        .flat_map(|&p| {
            let g = (p as f64 * scale).round() as u8;
            [g, g, g, 255]
        })
        .collect()
}

/// Blue (poor) to yellow (good) ramp for `x` in `[0, 1]`.
fn ramp(x: f64) -> [u8; 4] {
    let x = x.clamp(0.0, 1.0);
    [
        (255.0 * x) as u8,
        (64.0 + 160.0 * x) as u8,
        (255.0 * (1.0 - x)) as u8,
        255,
    ]
}

impl Session {
    /// Renders the layered test scene with `size x size` views.
    pub fn synthetic(seed: u64, size: usize) -> Result<Self> {
        if !(MIN_SIZE..=MAX_SIZE).contains(&size) {
            return Err(Error::InvalidArgument(format!(
                "view size must be in {MIN_SIZE}..={MAX_SIZE}, got {size}"
            )));
        }
        let (lf, disp) = render(VIEWS, VIEWS, size, size, 8, &textured_scene(size, size, seed))?;
        let mut config = EncoderConfig::default();
        config.slic.k_target = (size * size / 8).max(1);
        Ok(Session {
            lf,
            disp,
            config,
            geometry: None,
            report: None,
            decoded: None,
        })
    }

    pub fn light_field(&self) -> &LightField {
        &self.lf
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        self.geometry.as_ref()
    }

    pub fn report(&self) -> Option<&AnalysisReport> {
        self.report.as_ref()
    }

    pub fn decoded(&self) -> Option<&LightField> {
        self.decoded.as_ref()
    }

    fn view_index(&self, m: usize, n: usize) -> Result<usize> {
        if m >= self.lf.rows() || n >= self.lf.cols() {
            return Err(Error::InvalidArgument(format!("no view ({m}, {n})")));
        }
        Ok(m * self.lf.cols() + n)
    }

    pub fn view_rgba(&self, m: usize, n: usize) -> Result<Vec<u8>> {
        Ok(grey_rgba(self.lf.view(self.view_index(m, n)?), self.lf.peak()))
    }

    /// Segments the top-left view and projects super-rays into all views;
    /// returns the super-ray count. Clears earlier analysis results.
    pub fn segment(&mut self, superrays: usize, compactness: f64) -> Result<u32> {
        if superrays == 0 || !(compactness > 0.0 && compactness.is_finite()) {
            return Err(Error::InvalidArgument(
                "super-ray count and compactness must be positive".into(),
            ));
        }
        let dims = self.lf.dims();
        self.config.slic = SlicParams {
            k_target: superrays.min(dims.view_len()),
            compactness,
            ..SlicParams::default()
        };
        let g = build_geometry(
            self.lf.view(0),
            &self.disp,
            dims,
            self.lf.bitdepth(),
            &self.config.slic,
            self.config.vertex_cap,
        )?;
        let count = g.srmap.count;
        self.geometry = Some(g);
        self.report = None;
        Ok(count)
    }

    fn ensure_segmented(&mut self) -> Result<&Geometry> {
        if self.geometry.is_none() {
            let slic = self.config.slic;
            self.segment(slic.k_target, slic.compactness)?;
        }
        Ok(self.geometry.as_ref().expect("segmented"))
    }

    /// View `(m, n)` with super-ray boundaries in red.
    pub fn superray_rgba(&mut self, m: usize, n: usize) -> Result<Vec<u8>> {
        let v = self.view_index(m, n)?;
        let mut rgba = grey_rgba(self.lf.view(v), self.lf.peak());
        let (h, w) = (self.lf.height(), self.lf.width());
        let labels = self.ensure_segmented()?.srmap.view_labels(v);
        for s in 0..h {
            for t in 0..w {
                let l = labels[s * w + t];
                let edge = (t + 1 < w && labels[s * w + t + 1] != l) || (s + 1 < h && labels[(s + 1) * w + t] != l);
                if edge {
                    rgba[4 * (s * w + t)..4 * (s * w + t) + 4].copy_from_slice(&[230, 40, 40, 255]);
                }
            }
        }
        Ok(rgba)
    }

    pub fn analyze(&mut self) -> Result<Summary> {
        self.ensure_segmented()?;
        let r = analyze(&self.lf, &self.disp, &self.config, false)?;
        let (median_cond_sampled, median_cond_naive) = r.median_log10_cond();
        let (max_cond_sampled, max_cond_naive) = r.max_log10_cond();
        let summary = Summary {
            superrays: r.superrays.len() as u32,
            energy_nonseparable: r.nonseparable.energy_total,
            energy_separable: r.separable.energy_total,
            median_cond_sampled,
            median_cond_naive,
            max_cond_sampled,
            max_cond_naive,
            reference_bits: r.nonseparable.reference_bits,
            dc_direct_bits: r.nonseparable.dc_direct_bits,
        };
        self.report = Some(r);
        Ok(summary)
    }

    /// Top-left view coloured by the predicted-band energy fraction of each
    /// super-ray, on a `-log10(1 - e)` scale from 1 (blue, 90%) to 4 (yellow,
    /// 99.99%).
    pub fn energy_rgba(&self, mode: Mode) -> Option<Vec<u8>> {
        let (r, g) = (self.report.as_ref()?, self.geometry.as_ref()?);
        let mut by_label = vec![0.0; g.srmap.count as usize + 1];
        for s in &r.superrays {
            by_label[s.label as usize] = match mode {
                Mode::NonSeparable => s.energy_nonseparable,
                Mode::Separable => s.energy_separable,
            };
        }
        Some(
            g.srmap
                .view_labels(0)
                .iter()
                .flat_map(|&l| ramp((-(1.0 - by_label[l as usize]).max(1e-4).log10() - 1.0) / 3.0))
                .collect(),
        )
    }

    /// Interleaved `(sampled, naive)` log10 condition numbers per super-ray;
    /// singular matrices give `+inf`.
    pub fn conditioning(&self) -> Option<Vec<f64>> {
        let r = self.report.as_ref()?;
        Some(
            r.superrays
                .iter()
                .flat_map(|s| [s.log10_cond_sampled, s.log10_cond_naive])
                .collect(),
        )
    }

    /// Encodes and decodes with the current segmentation parameters.
    pub fn code(&mut self, mode: Mode, quantizer: Quantizer) -> Result<CodingSummary> {
        let config = EncoderConfig {
            mode,
            quantizer,
            ..self.config.clone()
        };
        let enc = encode(&self.lf, &self.disp, &config)?;
        let dec = decode(&enc.bytes, None)?;
        let summary = CodingSummary {
            bytes: enc.bytes.len(),
            bpp: enc.bytes.len() as f64 * 8.0 / self.lf.num_rays() as f64,
            psnr_db: psnr(&self.lf, &dec)?,
        };
        self.decoded = Some(dec);
        Ok(summary)
    }

    /// Absolute error of the last decode, amplified 16x, for view `(m, n)`.
    pub fn error_rgba(&self, m: usize, n: usize) -> Result<Option<Vec<u8>>> {
        let v = self.view_index(m, n)?;
        let Some(dec) = &self.decoded else { return Ok(None) };
        Ok(Some(
            self.lf
                .view(v)
                .iter()
                .zip(dec.view(v))
                .flat_map(|(&a, &b)| {
                    let e = (a.abs_diff(b) as u32 * 16).min(255) as u8;
                    [e, e, e, 255]
                })
                .collect(),
        ))
    }

    pub fn decoded_rgba(&self, m: usize, n: usize) -> Result<Option<Vec<u8>>> {
        let v = self.view_index(m, n)?;
        Ok(self.decoded.as_ref().map(|d| grey_rgba(d.view(v), d.peak())))
    }
}

fn js(e: impl Display) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct Demo(Session);

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(seed: u32, size: usize) -> std::result::Result<Demo, JsError> {
        Session::synthetic(seed as u64, size).map(Demo).map_err(js)
    }

    pub fn size(&self) -> usize {
        self.0.lf.width()
    }

    pub fn views(&self) -> usize {
        VIEWS
    }

    pub fn view(&self, m: usize, n: usize) -> std::result::Result<Vec<u8>, JsError> {
        self.0.view_rgba(m, n).map_err(js)
    }

    pub fn segment(&mut self, superrays: usize, compactness: f64) -> std::result::Result<u32, JsError> {
        self.0.segment(superrays, compactness).map_err(js)
    }

    pub fn superrays(&mut self, m: usize, n: usize) -> std::result::Result<Vec<u8>, JsError> {
        self.0.superray_rgba(m, n).map_err(js)
    }

    pub fn analyze(&mut self) -> std::result::Result<Summary, JsError> {
        self.0.analyze().map_err(js)
    }

    /// Empty until `analyze` has run.
    pub fn energy_map(&self, separable: bool) -> Vec<u8> {
        let mode = if separable { Mode::Separable } else { Mode::NonSeparable };
        self.0.energy_rgba(mode).unwrap_or_default()
    }

    pub fn conditioning(&self) -> Vec<f64> {
        self.0.conditioning().unwrap_or_default()
    }

    /// `mode` is `nonseparable` or `separable`; `q` a positive step or
    /// `bypass`.
    pub fn code(&mut self, mode: &str, q: &str) -> std::result::Result<CodingSummary, JsError> {
        let mode: Mode = mode.parse().map_err(js)?;
        let quantizer: Quantizer = q.parse().map_err(js)?;
        self.0.code(mode, quantizer).map_err(js)
    }

    pub fn decoded(&self, m: usize, n: usize) -> std::result::Result<Vec<u8>, JsError> {
        Ok(self.0.decoded_rgba(m, n).map_err(js)?.unwrap_or_default())
    }

    pub fn error(&self, m: usize, n: usize) -> std::result::Result<Vec<u8>, JsError> {
        Ok(self.0.error_rgba(m, n).map_err(js)?.unwrap_or_default())
    }
}
