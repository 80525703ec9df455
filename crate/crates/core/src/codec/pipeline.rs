//! End-to-end encoder and decoder for both transform schemes.

use rayon::prelude::*;

use super::bitstream::{read_stream, write_stream, Header, Mode, Sections, GROUP_COUNT, GROUP_SCHEME_UNIFORM};
use super::classes::{assign_class, cut_size, CLASS_COUNT};
use super::labels::{decode_labels, encode_labels};
use super::quant::{dequantize, quantize, Quantizer};
use super::rangecoder::{BitTree, Decoder, Encoder};
use super::refcodec::{decode_reference, encode_reference, ImageShape, PluginCommands, ReferenceCodec};
use super::symbols::{decode_integers, encode_integers};
use crate::error::{Error, Result};
use crate::graph::{build_superray_graph, eigendecompose, gft_forward, EigenBasis, EIGENSOLVER_ID};
use crate::lightfield::{Dims, DisparityMap, LightField};
use crate::prediction::{predict_low_frequencies, reconstruct_complement, SeparableLayout, SeparableTransform};
use crate::sampling::{
    build_correspondence, centroid_seed, gather_samples, place_samples, select_sampling_set, SamplingSet,
};
use crate::segmentation::{
    median_disparity, project_superrays, round_half_away, slic_segment, SegmentationMap, SlicParams, SuperRay,
    SuperRayMap,
};

/// Disparity precision of the transmitted per-label medians.
pub const DISPARITY_SCALE: f64 = 16.0;

#[derive(Clone, Debug, PartialEq)]
pub struct EncoderConfig {
    pub mode: Mode,
    pub quantizer: Quantizer,
    pub slic: SlicParams,
    /// Upper bound on super-ray size; larger super-pixels are split.
    pub vertex_cap: usize,
    pub reference: ReferenceCodec,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        EncoderConfig {
            mode: Mode::NonSeparable,
            quantizer: Quantizer::Step(1.0),
            slic: SlicParams::default(),
            vertex_cap: 1024,
            reference: ReferenceCodec::Builtin,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Encoded {
    pub bytes: Vec<u8>,
    /// `(section, bytes)` in stream order.
    pub section_sizes: Vec<(&'static str, usize)>,
    pub superray_count: u32,
    pub classes: Vec<u8>,
    /// Sampling iterations with a degenerate kernel, summed over super-rays.
    pub sampling_warnings: usize,
}

/// Super-rays and the segmentation they come from.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub segmentation: SegmentationMap,
    pub srmap: SuperRayMap,
    pub superrays: Vec<SuperRay>,
    /// Per-label disparity after transmission rounding.
    pub disparity: Vec<f64>,
    /// Transmitted disparity integers.
    pub disparity_codes: Vec<i64>,
}

pub(crate) fn quantize_disparity(d: f64) -> i64 {
    round_half_away(d * DISPARITY_SCALE)
}

fn geometry_from(seg: SegmentationMap, codes: Vec<i64>, dims: Dims) -> Result<Geometry> {
    let disparity: Vec<f64> = codes.iter().map(|&q| q as f64 / DISPARITY_SCALE).collect();
    let srmap = project_superrays(&seg, &disparity, dims)?;
    let superrays = srmap.superrays();
    Ok(Geometry {
        segmentation: seg,
        srmap,
        superrays,
        disparity,
        disparity_codes: codes,
    })
}

fn effective_slic(params: &SlicParams, view_len: usize) -> SlicParams {
    SlicParams {
        k_target: params.k_target.clamp(1, view_len),
        ..*params
    }
}

/// Segmentation of `view`, split to respect `vertex_cap`.
pub fn segment_view(
    view: &[u16],
    dims: Dims,
    bitdepth: u8,
    params: &SlicParams,
    vertex_cap: usize,
) -> Result<SegmentationMap> {
    let seg = slic_segment(view, dims.height, dims.width, bitdepth, params)?;
    seg.split_oversized(dims.num_views(), vertex_cap)
}

/// Segments the reference view and projects super-rays with the transmitted
/// disparity precision.
pub fn build_geometry(
    view: &[u16],
    disp: &DisparityMap,
    dims: Dims,
    bitdepth: u8,
    params: &SlicParams,
    vertex_cap: usize,
) -> Result<Geometry> {
    let seg = segment_view(view, dims, bitdepth, params, vertex_cap)?;
    let codes = median_disparity(&seg, disp)?
        .into_iter()
        .map(quantize_disparity)
        .collect();
    geometry_from(seg, codes, dims)
}

/// Per-super-ray transform data shared by encoder and decoder.
pub(crate) enum Model {
    NonSeparable {
        basis: EigenBasis,
        set: SamplingSet,
        placement: Vec<usize>,
    },
    Separable(SeparableTransform),
}

fn label_err(label: u32) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::SingularSampling { cond, .. } => Error::SingularSampling { label, cond },
        Error::DecoupledReference { band, .. } => Error::DecoupledReference { label, band },
        other => other,
    }
}

/// Graph basis, sampling set and placement of a non-separable super-ray.
pub(crate) fn nonseparable_model(sr: &SuperRay, srmap: &SuperRayMap) -> Result<(EigenBasis, SamplingSet, Vec<usize>)> {
    let graph = build_superray_graph(sr, srmap);
    let basis = eigendecompose(&graph.laplacian())?;
    let seed = centroid_seed(sr, srmap.dims);
    let set = select_sampling_set(&basis, sr.reference_len, seed).map_err(label_err(sr.label))?;
    let corr = build_correspondence(&graph, sr.reference_len);
    let placement = place_samples(&set, &corr);
    Ok((basis, set, placement))
}

pub(crate) fn separable_layout(sr: &SuperRay, srmap: &SuperRayMap) -> SeparableLayout {
    let graph = build_superray_graph(sr, srmap);
    SeparableLayout::new(&graph, srmap.dims.view_len(), srmap.dims.cols)
}

/// Which coefficient positions are predicted rather than transmitted.
fn predicted_mask(mode: Mode, sr: &SuperRay, srmap: &SuperRayMap) -> Vec<bool> {
    let mut mask = vec![false; sr.len()];
    match mode {
        Mode::NonSeparable => mask[..sr.reference_len].iter_mut().for_each(|m| *m = true),
        Mode::Separable => {
            for p in separable_layout(sr, srmap).predicted_positions() {
                mask[p] = true;
            }
        }
    }
    mask
}

/// Transmitted coefficient positions kept by `class`, ascending.
fn kept_positions(mask: &[bool], class: u8) -> Vec<usize> {
    let transmitted: Vec<usize> = (0..mask.len()).filter(|&p| !mask[p]).collect();
    let cut = cut_size(mask.len(), transmitted.len(), class);
    transmitted[..transmitted.len() - cut].to_vec()
}

fn group_of(position: usize, n_k: usize) -> usize {
    GROUP_COUNT * position / n_k
}

/// Signal of one super-ray (local vertex order) from its full coefficient
/// vector; predicted positions of `y` are ignored.
fn reconstruct(model: &Model, sr: &SuperRay, y: &[f64], reference: &[u16]) -> Result<Vec<f64>> {
    match model {
        Model::NonSeparable { basis, set, placement } => {
            let n_k = set.band();
            let samples = gather_samples(sr, placement, reference);
            let high = &y[n_k..];
            let low = predict_low_frequencies(basis, &set.selected, &samples, high).map_err(label_err(sr.label))?;
            let rest = reconstruct_complement(basis, &set.complement, &low, high);
            let mut x = vec![0.0; sr.len()];
            for (&v, s) in set.selected.iter().zip(samples) {
                x[v] = s;
            }
            for (&v, r) in set.complement.iter().zip(rest) {
                x[v] = r;
            }
            Ok(x)
        }
        Model::Separable(t) => {
            let refs: Vec<f64> = sr.rays[..sr.reference_len]
                .iter()
                .map(|&r| reference[r] as f64)
                .collect();
            t.reconstruct(y, &refs).map_err(label_err(sr.label))
        }
    }
}

fn to_pixel(v: f64, peak: u16) -> u16 {
    round_half_away(v).clamp(0, peak as i64) as u16
}

struct SuperRayCode {
    class: u8,
    /// `(position, quantized value)` of every kept coefficient.
    kept: Vec<(usize, i64)>,
    /// Decoder-side reconstruction, computed when a residual is coded.
    recon: Option<Vec<f64>>,
}

fn encode_classes(classes: &[u8]) -> Vec<u8> {
    let mut enc = Encoder::new();
    let mut tree = BitTree::new(2);
    for &c in classes {
        tree.encode(&mut enc, u32::from(c - 1));
    }
    enc.finish()
}

fn decode_classes(bytes: &[u8], count: usize) -> Result<Vec<u8>> {
    let mut dec = Decoder::new(bytes);
    let mut tree = BitTree::new(2);
    let classes: Vec<u8> = (0..count).map(|_| tree.decode(&mut dec) as u8 + 1).collect();
    if dec.overrun() {
        return Err(Error::corrupt("classes", "truncated"));
    }
    debug_assert!(classes.iter().all(|&c| (1..=CLASS_COUNT).contains(&c)));
    Ok(classes)
}

fn check_dims(dims: Dims) -> Result<()> {
    if dims.rows > u16::MAX as usize || dims.cols > u16::MAX as usize {
        return Err(Error::InvalidArgument(format!(
            "{}x{} views exceed the format",
            dims.rows, dims.cols
        )));
    }
    if dims.height > u32::MAX as usize || dims.width > u32::MAX as usize {
        return Err(Error::InvalidArgument(format!(
            "{}x{} views exceed the format",
            dims.height, dims.width
        )));
    }
    Ok(())
}

pub fn encode(lf: &LightField, disp: &DisparityMap, config: &EncoderConfig) -> Result<Encoded> {
    let dims = lf.dims();
    check_dims(dims)?;
    if (disp.height, disp.width) != (dims.height, dims.width) {
        return Err(Error::DimensionMismatch(format!(
            "disparity {}x{} vs views {}x{}",
            disp.height, disp.width, dims.height, dims.width
        )));
    }
    let shape = ImageShape {
        height: dims.height,
        width: dims.width,
        bitdepth: lf.bitdepth(),
    };
    let plugin = match &config.reference {
        ReferenceCodec::Plugin(cmds) => Some(cmds),
        ReferenceCodec::Builtin => None,
    };
    let slic = effective_slic(&config.slic, dims.view_len());
    let peak = lf.peak();
    let rays = lf.rays();

    // reference payload first in separable mode: segmentation runs on the
    // decoded reference view
    let (geometry, reference_payload, decoded_ref, models_a) = match config.mode {
        Mode::Separable => {
            let payload = encode_reference(&config.reference, lf.view(0), shape)?;
            let decoded = decode_reference(&payload, shape, plugin)?;
            let geometry = build_geometry(&decoded, disp, dims, lf.bitdepth(), &slic, config.vertex_cap)?;
            (geometry, payload, decoded, None)
        }
        Mode::NonSeparable => {
            let geometry = build_geometry(lf.view(0), disp, dims, lf.bitdepth(), &slic, config.vertex_cap)?;
            let sampling = geometry
                .superrays
                .par_iter()
                .map(|sr| nonseparable_model(sr, &geometry.srmap).map(|(_, set, placement)| (set, placement)))
                .collect::<Result<Vec<_>>>()?;
            let mut reference = vec![0u16; dims.view_len()];
            for (sr, (set, placement)) in geometry.superrays.iter().zip(&sampling) {
                for (&v, &p0) in set.selected.iter().zip(placement) {
                    reference[sr.rays[p0]] = rays[sr.rays[v]];
                }
            }
            let payload = encode_reference(&config.reference, &reference, shape)?;
            let decoded = decode_reference(&payload, shape, plugin)?;
            (geometry, payload, decoded, Some(sampling))
        }
    };

    let q_step = config.quantizer.step();
    let bypass = config.quantizer.is_bypass();
    let codes = geometry
        .superrays
        .par_iter()
        .enumerate()
        .map(|(i, sr)| {
            let mut x: Vec<f64> = sr.rays.iter().map(|&r| rays[r] as f64).collect();
            let (model, y, mask) = match config.mode {
                Mode::NonSeparable => {
                    let (set, placement) = models_a.as_ref().expect("sampling computed")[i].clone();
                    for (&v, &p0) in set.selected.iter().zip(&placement) {
                        x[v] = decoded_ref[sr.rays[p0]] as f64;
                    }
                    let graph = build_superray_graph(sr, &geometry.srmap);
                    let basis = eigendecompose(&graph.laplacian())?;
                    let y = gft_forward(&basis, &x)?;
                    let mut mask = vec![false; sr.len()];
                    mask[..sr.reference_len].iter_mut().for_each(|m| *m = true);
                    (Model::NonSeparable { basis, set, placement }, y, mask)
                }
                Mode::Separable => {
                    for (xv, &r) in x.iter_mut().zip(&sr.rays[..sr.reference_len]) {
                        *xv = decoded_ref[r] as f64;
                    }
                    let layout = separable_layout(sr, &geometry.srmap);
                    let mut mask = vec![false; sr.len()];
                    for p in layout.predicted_positions() {
                        mask[p] = true;
                    }
                    let t = SeparableTransform::from_layout(&layout, dims.cols)?;
                    let y = t.forward(&x)?;
                    (Model::Separable(t), y, mask)
                }
            };
            let transmitted: Vec<f64> = (0..y.len()).filter(|&p| !mask[p]).map(|p| y[p]).collect();
            let class = if bypass {
                CLASS_COUNT
            } else {
                assign_class(&transmitted, sr.len())
            };
            let kept: Vec<(usize, i64)> = kept_positions(&mask, class)
                .into_iter()
                .map(|p| (p, quantize(y[p], q_step)))
                .collect();
            let recon = if bypass {
                let mut yq = vec![0.0; y.len()];
                for &(p, q) in &kept {
                    yq[p] = dequantize(q, q_step);
                }
                Some(reconstruct(&model, sr, &yq, &decoded_ref)?)
            } else {
                None
            };
            Ok(SuperRayCode { class, kept, recon })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut groups: Vec<Vec<i64>> = vec![Vec::new(); GROUP_COUNT];
    for (sr, code) in geometry.superrays.iter().zip(&codes) {
        for &(p, q) in &code.kept {
            groups[group_of(p, sr.len())].push(q);
        }
    }
    let group_bytes: Vec<Vec<u8>> = groups.par_iter().map(|g| encode_integers(g)).collect();

    let residual = if bypass {
        let mut decoded = vec![0u16; rays.len()];
        for (sr, code) in geometry.superrays.iter().zip(&codes) {
            for (&r, &v) in sr.rays.iter().zip(code.recon.as_ref().expect("bypass reconstruction")) {
                decoded[r] = to_pixel(v, peak);
            }
        }
        let diff: Vec<i64> = rays.iter().zip(&decoded).map(|(&a, &b)| a as i64 - b as i64).collect();
        Some(encode_integers(&diff))
    } else {
        None
    };

    let classes: Vec<u8> = codes.iter().map(|c| c.class).collect();
    let header = Header {
        mode: config.mode,
        residual: residual.is_some(),
        rows: dims.rows as u16,
        cols: dims.cols as u16,
        height: dims.height as u32,
        width: dims.width as u32,
        bitdepth: lf.bitdepth(),
        superray_count: geometry.segmentation.count,
        eigensolver: EIGENSOLVER_ID,
        quantizer: config.quantizer,
        group_scheme: GROUP_SCHEME_UNIFORM,
        vertex_cap: config.vertex_cap as u32,
        slic,
    };
    let sections = Sections {
        disparity: encode_integers(&geometry.disparity_codes),
        segmentation: match config.mode {
            Mode::NonSeparable => Some(encode_labels(&geometry.segmentation)),
            Mode::Separable => None,
        },
        reference: reference_payload,
        classes: encode_classes(&classes),
        groups: group_bytes,
        residual,
    };
    let sampling_warnings = models_a.map_or(0, |m| m.iter().map(|(s, _)| s.warnings).sum());
    Ok(Encoded {
        bytes: write_stream(&header, &sections),
        section_sizes: sections.sizes(),
        superray_count: header.superray_count,
        classes,
        sampling_warnings,
    })
}

/// Decodes a stream; `plugin` is needed only for plug-in reference payloads.
pub fn decode(bytes: &[u8], plugin: Option<&PluginCommands>) -> Result<LightField> {
    let (header, sections) = read_stream(bytes)?;
    let dims = Dims {
        rows: header.rows as usize,
        cols: header.cols as usize,
        height: header.height as usize,
        width: header.width as usize,
    };
    let rays = [
        header.rows as u128,
        header.cols as u128,
        header.height as u128,
        header.width as u128,
    ]
    .iter()
    .product::<u128>();
    if rays > 1 << 30 {
        return Err(Error::corrupt("header", format!("{rays} rays")));
    }
    let shape = ImageShape {
        height: dims.height,
        width: dims.width,
        bitdepth: header.bitdepth,
    };
    let count = header.superray_count;
    let disparity_codes = decode_integers(&sections.disparity, count as usize, "disparity")?;
    let reference = decode_reference(&sections.reference, shape, plugin)?;
    if (header.vertex_cap as usize) < dims.num_views() {
        return Err(Error::corrupt("header", format!("vertex cap {}", header.vertex_cap)));
    }
    let seg = match header.mode {
        Mode::NonSeparable => {
            let bytes = sections
                .segmentation
                .as_deref()
                .expect("non-separable stream has segmentation");
            decode_labels(bytes, dims.height, dims.width, count)?
        }
        Mode::Separable => {
            if header.slic.k_target == 0 || header.slic.k_target > dims.view_len() {
                return Err(Error::corrupt(
                    "header",
                    format!("super-pixel target {}", header.slic.k_target),
                ));
            }
            let seg = segment_view(
                &reference,
                dims,
                header.bitdepth,
                &header.slic,
                header.vertex_cap as usize,
            )?;
            if seg.count != count {
                return Err(Error::corrupt(
                    "header",
                    format!("segmentation gives {} super-rays, header says {count}", seg.count),
                ));
            }
            seg
        }
    };
    let geometry = geometry_from(seg, disparity_codes, dims)?;
    let classes = decode_classes(&sections.classes, count as usize)?;

    let kept: Vec<Vec<usize>> = geometry
        .superrays
        .par_iter()
        .zip(&classes)
        .map(|(sr, &class)| kept_positions(&predicted_mask(header.mode, sr, &geometry.srmap), class))
        .collect();
    let mut group_len = [0usize; GROUP_COUNT];
    for (sr, positions) in geometry.superrays.iter().zip(&kept) {
        for &p in positions {
            group_len[group_of(p, sr.len())] += 1;
        }
    }
    let groups = sections
        .groups
        .par_iter()
        .enumerate()
        .map(|(g, bytes)| decode_integers(bytes, group_len[g], &format!("coefficient group {g}")))
        .collect::<Result<Vec<_>>>()?;
    let step = header.quantizer.step();
    let mut cursor = [0usize; GROUP_COUNT];
    let spectra: Vec<Vec<f64>> = geometry
        .superrays
        .iter()
        .zip(&kept)
        .map(|(sr, positions)| {
            let mut y = vec![0.0; sr.len()];
            for &p in positions {
                let g = group_of(p, sr.len());
                y[p] = dequantize(groups[g][cursor[g]], step);
                cursor[g] += 1;
            }
            y
        })
        .collect();

    let values = geometry
        .superrays
        .par_iter()
        .zip(&spectra)
        .map(|(sr, y)| {
            let model = match header.mode {
                Mode::NonSeparable => {
                    let (basis, set, placement) = nonseparable_model(sr, &geometry.srmap)?;
                    Model::NonSeparable { basis, set, placement }
                }
                Mode::Separable => Model::Separable(SeparableTransform::from_layout(
                    &separable_layout(sr, &geometry.srmap),
                    dims.cols,
                )?),
            };
            reconstruct(&model, sr, y, &reference)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut lf = LightField::new(dims.rows, dims.cols, dims.height, dims.width, header.bitdepth)?;
    let peak = lf.peak();
    {
        let out = lf.rays_mut();
        for (sr, vals) in geometry.superrays.iter().zip(values) {
            for (&r, v) in sr.rays.iter().zip(vals) {
                out[r] = to_pixel(v, peak);
            }
        }
    }
    if let Some(res) = &sections.residual {
        let diff = decode_integers(res, dims.num_rays(), "residual")?;
        for (px, d) in lf.rays_mut().iter_mut().zip(diff) {
            let v = (*px as i64)
                .checked_add(d)
                .filter(|v| (0..=peak as i64).contains(v))
                .ok_or_else(|| Error::corrupt("residual", "pixel out of range"))?;
            *px = v as u16;
        }
    }
    Ok(lf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lightfield::psnr;
    use crate::synthetic::{render, textured_scene};

    fn field() -> (LightField, DisparityMap) {
        render(3, 3, 24, 24, 8, &textured_scene(24, 24, 5)).unwrap()
    }

    fn config(mode: Mode, quantizer: Quantizer) -> EncoderConfig {
        EncoderConfig {
            mode,
            quantizer,
            slic: SlicParams {
                k_target: 40,
                ..SlicParams::default()
            },
            ..EncoderConfig::default()
        }
    }

    #[test]
    fn bypass_is_lossless() {
        let (lf, disp) = field();
        for mode in [Mode::NonSeparable, Mode::Separable] {
            let enc = encode(&lf, &disp, &config(mode, Quantizer::Bypass)).unwrap();
            let dec = decode(&enc.bytes, None).unwrap();
            assert_eq!(dec, lf, "{mode}");
        }
    }

    #[test]
    fn unit_step_is_quasi_lossless() {
        let (lf, disp) = field();
        for mode in [Mode::NonSeparable, Mode::Separable] {
            let enc = encode(&lf, &disp, &config(mode, Quantizer::Step(1.0))).unwrap();
            let dec = decode(&enc.bytes, None).unwrap();
            let p = psnr(&lf, &dec).unwrap();
            assert!(p > 50.0, "{mode}: {p}");
        }
    }
}
