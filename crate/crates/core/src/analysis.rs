//! Per-super-ray diagnostics: energy compaction of both transforms, sampling
//! conditioning, and the cost of the reference image against direct coding of
//! the predicted coefficients.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::codec::intra::encode_image;
use crate::codec::symbols::encode_integers;
use crate::codec::{assign_class, build_geometry, decode, encode, quantize, EncoderConfig, Mode, GROUP_COUNT};
use crate::codec::{Geometry, Quantizer};
use crate::error::Result;
use crate::graph::{build_superray_graph, eigendecompose, gft_forward};
use crate::lightfield::{psnr, DisparityMap, LightField};
use crate::prediction::{SeparableLayout, SeparableTransform};
use crate::sampling::{build_correspondence, centroid_seed, naive_sampling_set, place_samples, select_sampling_set};

#[derive(Clone, Debug, PartialEq)]
pub struct SuperRayStats {
    pub label: u32,
    /// Number of rays `N_k`.
    pub size: usize,
    /// Reference-view pixels `n_k`.
    pub band: usize,
    pub class_nonseparable: u8,
    pub class_separable: u8,
    pub log10_cond_sampled: f64,
    pub log10_cond_naive: f64,
    /// Fraction of the signal energy in the predicted coefficients.
    pub energy_nonseparable: f64,
    pub energy_separable: f64,
    pub total_energy: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModeTotals {
    /// `Σ predicted energy / Σ energy` over all super-rays.
    pub energy_total: f64,
    /// `N_k`-weighted mean of the per-super-ray fractions.
    pub energy_mean: f64,
    /// Built-in intra coding of the reference image, in bits.
    pub reference_bits: u64,
    /// Predicted coefficients rounded to integers and entropy coded in 32
    /// groups, in bits.
    pub dc_direct_bits: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodingResult {
    pub mode: Mode,
    pub quantizer: Quantizer,
    pub sections: Vec<(String, u64)>,
    pub bits_total: u64,
    pub bpp: f64,
    pub psnr_db: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub superrays: Vec<SuperRayStats>,
    pub nonseparable: ModeTotals,
    pub separable: ModeTotals,
    pub coding: Option<CodingResult>,
    pub sampling_warnings: usize,
}

fn log10(x: f64) -> f64 {
    if x.is_finite() {
        x.log10()
    } else {
        f64::INFINITY
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    v[(v.len() - 1) / 2]
}

fn grouped_bits(per_superray: &[(usize, Vec<(usize, i64)>)]) -> u64 {
    let mut groups: Vec<Vec<i64>> = vec![Vec::new(); GROUP_COUNT];
    for (n, coeffs) in per_superray {
        for &(p, q) in coeffs {
            groups[GROUP_COUNT * p / n].push(q);
        }
    }
    groups.par_iter().map(|g| encode_integers(g).len() as u64 * 8).sum()
}

struct Row {
    stats: SuperRayStats,
    dc_nonseparable: (usize, Vec<(usize, i64)>),
    dc_separable: (usize, Vec<(usize, i64)>),
    predicted_energy: [f64; 2],
    warnings: usize,
    /// `(reference pixel, sample value)` of the wrapped samples.
    reference_writes: Vec<(usize, u16)>,
}

fn analyze_superrays(lf: &LightField, geometry: &Geometry) -> Result<Vec<Row>> {
    let dims = lf.dims();
    let rays = lf.rays();
    geometry
        .superrays
        .par_iter()
        .map(|sr| {
            let x: Vec<f64> = sr.rays.iter().map(|&r| rays[r] as f64).collect();
            let total: f64 = x.iter().map(|v| v * v).sum();
            let n_k = sr.reference_len;
            let graph = build_superray_graph(sr, &geometry.srmap);

            let basis = eigendecompose(&graph.laplacian())?;
            let set = select_sampling_set(&basis, n_k, centroid_seed(sr, dims))?;
            let naive = naive_sampling_set(&basis, n_k);
            let y = gft_forward(&basis, &x)?;
            let pred_ns: f64 = y[..n_k].iter().map(|c| c * c).sum();
            let class_ns = assign_class(&y[n_k..], sr.len());
            let dc_ns: Vec<(usize, i64)> = (0..n_k).map(|p| (p, quantize(y[p], 1.0))).collect();
            let placement = place_samples(&set, &build_correspondence(&graph, n_k));
            let reference_writes = set
                .selected
                .iter()
                .zip(&placement)
                .map(|(&v, &p0)| (sr.rays[p0], rays[sr.rays[v]]))
                .collect();

            let layout = SeparableLayout::new(&graph, dims.view_len(), dims.cols);
            let predicted = layout.predicted_positions();
            let ys = SeparableTransform::from_layout(&layout, dims.cols)?.forward(&x)?;
            let mut mask = vec![false; ys.len()];
            for &p in &predicted {
                mask[p] = true;
            }
            let pred_s: f64 = predicted.iter().map(|&p| ys[p] * ys[p]).sum();
            let transmitted: Vec<f64> = (0..ys.len()).filter(|&p| !mask[p]).map(|p| ys[p]).collect();
            let class_s = assign_class(&transmitted, sr.len());
            let dc_s: Vec<(usize, i64)> = predicted.iter().map(|&p| (p, quantize(ys[p], 1.0))).collect();

            let frac = |e: f64| if total > 0.0 { (e / total).clamp(0.0, 1.0) } else { 1.0 };
            Ok(Row {
                stats: SuperRayStats {
                    label: sr.label,
                    size: sr.len(),
                    band: n_k,
                    class_nonseparable: class_ns,
                    class_separable: class_s,
                    log10_cond_sampled: log10(set.condition),
                    log10_cond_naive: log10(naive.condition),
                    energy_nonseparable: frac(pred_ns),
                    energy_separable: frac(pred_s),
                    total_energy: total,
                },
                dc_nonseparable: (sr.len(), dc_ns),
                dc_separable: (sr.len(), dc_s),
                predicted_energy: [pred_ns, pred_s],
                warnings: set.warnings,
                reference_writes,
            })
        })
        .collect()
}

fn totals(rows: &[Row], idx: usize, reference_bits: u64) -> ModeTotals {
    let total: f64 = rows.iter().map(|r| r.stats.total_energy).sum();
    let pred: f64 = rows.iter().map(|r| r.predicted_energy[idx]).sum();
    let weight: f64 = rows.iter().map(|r| r.stats.size as f64).sum();
    let mean: f64 = rows
        .iter()
        .map(|r| {
            let f = if idx == 0 {
                r.stats.energy_nonseparable
            } else {
                r.stats.energy_separable
            };
            f * r.stats.size as f64
        })
        .sum::<f64>()
        / weight;
    let dc: Vec<(usize, Vec<(usize, i64)>)> = rows
        .iter()
        .map(|r| {
            if idx == 0 {
                r.dc_nonseparable.clone()
            } else {
                r.dc_separable.clone()
            }
        })
        .collect();
    ModeTotals {
        energy_total: if total > 0.0 { pred / total } else { 1.0 },
        energy_mean: mean,
        reference_bits,
        dc_direct_bits: grouped_bits(&dc),
    }
}

/// Diagnostics of `lf`; with `coding` set, also encodes and decodes it to
/// report section sizes and PSNR.
pub fn analyze(lf: &LightField, disp: &DisparityMap, config: &EncoderConfig, coding: bool) -> Result<AnalysisReport> {
    let dims = lf.dims();
    let mut slic = config.slic;
    slic.k_target = slic.k_target.clamp(1, dims.view_len());
    let geometry = build_geometry(lf.view(0), disp, dims, lf.bitdepth(), &slic, config.vertex_cap)?;
    let rows = analyze_superrays(lf, &geometry)?;

    let mut reference = vec![0u16; dims.view_len()];
    for &(p, v) in rows.iter().flat_map(|r| &r.reference_writes) {
        reference[p] = v;
    }
    let ref_bits = |img: &[u16]| encode_image(img, dims.height, dims.width, lf.bitdepth()).len() as u64 * 8;
    let nonseparable = totals(&rows, 0, ref_bits(&reference));
    let separable = totals(&rows, 1, ref_bits(lf.view(0)));

    let coding = if coding {
        let enc = encode(lf, disp, config)?;
        let dec = decode(&enc.bytes, None)?;
        let bits_total = enc.bytes.len() as u64 * 8;
        Some(CodingResult {
            mode: config.mode,
            quantizer: config.quantizer,
            sections: enc
                .section_sizes
                .iter()
                .map(|&(n, b)| (n.to_string(), b as u64 * 8))
                .collect(),
            bits_total,
            bpp: bits_total as f64 / dims.num_rays() as f64,
            psnr_db: psnr(lf, &dec)?,
        })
    } else {
        None
    };
    let sampling_warnings = rows.iter().map(|r| r.warnings).sum();
    Ok(AnalysisReport {
        superrays: rows.into_iter().map(|r| r.stats).collect(),
        nonseparable,
        separable,
        coding,
        sampling_warnings,
    })
}

impl AnalysisReport {
    pub fn median_log10_cond(&self) -> (f64, f64) {
        (
            median(self.superrays.iter().map(|s| s.log10_cond_sampled).collect()),
            median(self.superrays.iter().map(|s| s.log10_cond_naive).collect()),
        )
    }

    pub fn max_log10_cond(&self) -> (f64, f64) {
        let max = |f: fn(&SuperRayStats) -> f64| self.superrays.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        (max(|s| s.log10_cond_sampled), max(|s| s.log10_cond_naive))
    }

    /// Class histogram `[class 1, .., class 4]` for one mode.
    pub fn class_counts(&self, mode: Mode) -> [usize; 4] {
        let mut out = [0; 4];
        for s in &self.superrays {
            let c = match mode {
                Mode::NonSeparable => s.class_nonseparable,
                Mode::Separable => s.class_separable,
            };
            out[c as usize - 1] += 1;
        }
        out
    }

    /// Flat `key = value` text: aggregates first, then one `[superray]`
    /// record per super-ray.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let (med_s, med_n) = self.median_log10_cond();
        let (max_s, max_n) = self.max_log10_cond();
        let _ = writeln!(out, "superrays = {}", self.superrays.len());
        let _ = writeln!(out, "sampling_warnings = {}", self.sampling_warnings);
        let _ = writeln!(out, "log10_cond_sampled_median = {med_s:.4}");
        let _ = writeln!(out, "log10_cond_sampled_max = {max_s:.4}");
        let _ = writeln!(out, "log10_cond_naive_median = {med_n:.4}");
        let _ = writeln!(out, "log10_cond_naive_max = {max_n:.4}");
        for (name, t, mode) in [
            ("nonseparable", &self.nonseparable, Mode::NonSeparable),
            ("separable", &self.separable, Mode::Separable),
        ] {
            let _ = writeln!(out, "{name}.energy_total = {:.6}", t.energy_total);
            let _ = writeln!(out, "{name}.energy_mean = {:.6}", t.energy_mean);
            let _ = writeln!(out, "{name}.reference_bits = {}", t.reference_bits);
            let _ = writeln!(out, "{name}.dc_direct_bits = {}", t.dc_direct_bits);
            let c = self.class_counts(mode);
            let _ = writeln!(out, "{name}.classes = {} {} {} {}", c[0], c[1], c[2], c[3]);
        }
        if let Some(c) = &self.coding {
            let _ = writeln!(out, "coding.mode = {}", c.mode);
            let q = match c.quantizer {
                Quantizer::Step(q) => q.to_string(),
                Quantizer::Bypass => "bypass".into(),
            };
            let _ = writeln!(out, "coding.q = {q}");
            for (name, bits) in &c.sections {
                let _ = writeln!(out, "coding.bits.{name} = {bits}");
            }
            let _ = writeln!(out, "coding.bits_total = {}", c.bits_total);
            let _ = writeln!(out, "coding.bpp = {:.6}", c.bpp);
            let _ = writeln!(out, "coding.psnr_db = {}", fmt_db(c.psnr_db));
        }
        for s in &self.superrays {
            let _ = writeln!(out, "[superray]");
            let _ = writeln!(out, "label = {}", s.label);
            let _ = writeln!(out, "size = {}", s.size);
            let _ = writeln!(out, "band = {}", s.band);
            let _ = writeln!(out, "class_nonseparable = {}", s.class_nonseparable);
            let _ = writeln!(out, "class_separable = {}", s.class_separable);
            let _ = writeln!(out, "log10_cond_sampled = {:.4}", s.log10_cond_sampled);
            let _ = writeln!(out, "log10_cond_naive = {:.4}", s.log10_cond_naive);
            let _ = writeln!(out, "energy_nonseparable = {:.6}", s.energy_nonseparable);
            let _ = writeln!(out, "energy_separable = {:.6}", s.energy_separable);
        }
        out
    }
}

/// PSNR for display; identical images print as `inf`.
pub fn fmt_db(db: f64) -> String {
    if db.is_infinite() {
        "inf".into()
    } else {
        format!("{db:.2}")
    }
}
