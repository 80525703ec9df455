//! Lossless intra coding of a single luminance image: median edge detector
//! prediction with residuals coded under local-activity contexts.

use super::rangecoder::{Decoder, Encoder};
use super::symbols::{stream_width, zero_context, IntegerModel};
use crate::error::{Error, Result};

const SECTION: &str = "reference";
const ACTIVITY_CONTEXTS: usize = 8;

fn med(a: i64, b: i64, c: i64) -> i64 {
    if c >= a.max(b) {
        a.min(b)
    } else if c <= a.min(b) {
        a.max(b)
    } else {
        a + b - c
    }
}

/// Prediction and context of pixel `p` from already decoded samples.
fn predict(pixels: &[u16], p: usize, width: usize, bitdepth: u8) -> (i64, usize) {
    let (s, t) = (p / width, p % width);
    let at = |q: usize| pixels[q] as i64;
    let mid = 1i64 << (bitdepth - 1);
    let (a, b, c, d) = match (s, t) {
        (0, 0) => (mid, mid, mid, mid),
        (0, _) => {
            let a = at(p - 1);
            (a, a, a, a)
        }
        (_, 0) => {
            let b = at(p - width);
            let d = if width > 1 { at(p - width + 1) } else { b };
            (b, b, b, d)
        }
        _ => {
            let d = if t + 1 < width {
                at(p - width + 1)
            } else {
                at(p - width)
            };
            (at(p - 1), at(p - width), at(p - width - 1), d)
        }
    };
    let activity = ((a - c).abs() + (b - c).abs() + (b - d).abs()) >> bitdepth.saturating_sub(8);
    let ctx = (64 - (activity as u64).leading_zeros() as usize).min(ACTIVITY_CONTEXTS - 1);
    (med(a, b, c), ctx)
}

pub fn encode_image(pixels: &[u16], height: usize, width: usize, bitdepth: u8) -> Vec<u8> {
    assert_eq!(pixels.len(), height * width);
    let mut residuals = Vec::with_capacity(pixels.len());
    let mut contexts = Vec::with_capacity(pixels.len());
    for p in 0..pixels.len() {
        let (pred, ctx) = predict(pixels, p, width, bitdepth);
        residuals.push(pixels[p] as i64 - pred);
        contexts.push(ctx);
    }
    let width_bits = stream_width(&residuals);
    let mut enc = Encoder::new();
    let mut models = vec![IntegerModel::default(); ACTIVITY_CONTEXTS];
    let mut prev = 0;
    for (&r, &ctx) in residuals.iter().zip(&contexts) {
        models[ctx].encode(&mut enc, r, zero_context(prev), width_bits);
        prev = r;
    }
    let mut out = vec![width_bits as u8];
    out.extend(enc.finish());
    out
}

pub fn decode_image(bytes: &[u8], height: usize, width: usize, bitdepth: u8) -> Result<Vec<u16>> {
    let (&width_bits, body) = bytes
        .split_first()
        .ok_or_else(|| Error::corrupt(SECTION, "empty intra payload"))?;
    let width_bits = width_bits as u32;
    if width_bits > 64 {
        return Err(Error::corrupt(SECTION, format!("escape width {width_bits}")));
    }
    let peak = (1i64 << bitdepth) - 1;
    let mut dec = Decoder::new(body);
    let mut models = vec![IntegerModel::default(); ACTIVITY_CONTEXTS];
    let mut pixels = vec![0u16; height * width];
    let mut prev = 0;
    for p in 0..pixels.len() {
        let (pred, ctx) = predict(&pixels, p, width, bitdepth);
        let r = models[ctx]
            .decode(&mut dec, zero_context(prev), width_bits)
            .map_err(|e| Error::corrupt(SECTION, e.to_string()))?;
        let v = pred
            .checked_add(r)
            .filter(|v| (0..=peak).contains(v))
            .ok_or_else(|| Error::corrupt(SECTION, format!("pixel {p} out of range")))?;
        if dec.overrun() {
            return Err(Error::corrupt(SECTION, "truncated intra payload"));
        }
        pixels[p] = v as u16;
        prev = r;
    }
    Ok(pixels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn med_predictor() {
        assert_eq!(med(10, 20, 25), 10);
        assert_eq!(med(10, 20, 5), 20);
        assert_eq!(med(10, 20, 15), 15);
    }

    #[test]
    fn constant_image_is_nearly_free() {
        let (h, w) = (64, 64);
        let img = vec![77u16; h * w];
        let bytes = encode_image(&img, h, w, 8);
        let bpp = bytes.len() as f64 * 8.0 / (h * w) as f64;
        assert!(bpp < 0.05, "{bpp}");
        assert_eq!(decode_image(&bytes, h, w, 8).unwrap(), img);
    }

    #[test]
    fn round_trips() {
        let (h, w) = (23, 31);
        let noise: Vec<u16> = (0..h * w).map(|p| ((p * 2654435761) >> 7) as u16 & 1023).collect();
        assert_eq!(decode_image(&encode_image(&noise, h, w, 10), h, w, 10).unwrap(), noise);
        let ramp: Vec<u16> = (0..h * w).map(|p| ((p / w) * 3 + (p % w) * 5) as u16).collect();
        assert_eq!(decode_image(&encode_image(&ramp, h, w, 8), h, w, 8).unwrap(), ramp);
        let col = vec![0u16, 255, 0, 255, 1];
        assert_eq!(decode_image(&encode_image(&col, 5, 1, 8), 5, 1, 8).unwrap(), col);
        let row = vec![0u16, 255, 0, 255, 1];
        assert_eq!(decode_image(&encode_image(&row, 1, 5, 8), 1, 5, 8).unwrap(), row);
    }

    #[test]
    fn smooth_beats_raw() {
        let (h, w) = (64, 64);
        let img: Vec<u16> = (0..h * w)
            .map(|p| (128.0 + 60.0 * ((p / w) as f64 / 9.0).sin() * ((p % w) as f64 / 7.0).cos()) as u16)
            .collect();
        let bytes = encode_image(&img, h, w, 8);
        assert!(bytes.len() * 2 < h * w, "{}", bytes.len());
    }
}
