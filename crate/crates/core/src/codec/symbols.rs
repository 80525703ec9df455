//! Signed integer streams over the range coder.
//!
//! Each value is a zero flag, a sign bit and, for nonzero values, the
//! magnitude: `1..=255` through an 8-bit adaptive tree, larger magnitudes as
//! the escape symbol followed by a fixed-width tail whose width is stored in
//! the first byte of the stream.

use super::rangecoder::{Bit, BitTree, Decoder, Encoder};
use crate::error::{Error, Result};

const ESCAPE: u32 = 255;
const ESCAPE_BASE: u64 = 256;
pub const ZERO_CONTEXTS: usize = 3;

fn tail_width(max_magnitude: u64) -> u32 {
    if max_magnitude < ESCAPE_BASE {
        0
    } else {
        64 - (max_magnitude - ESCAPE_BASE).leading_zeros()
    }
}

/// Adaptive model for signed integers.
#[derive(Clone, Debug)]
pub struct IntegerModel {
    zero: [Bit; ZERO_CONTEXTS],
    magnitude: BitTree,
}

impl Default for IntegerModel {
    fn default() -> Self {
        IntegerModel {
            zero: [Bit::default(); ZERO_CONTEXTS],
            magnitude: BitTree::new(8),
        }
    }
}

/// Zero-flag context from the previous value of the stream.
pub fn zero_context(prev: i64) -> usize {
    match prev.unsigned_abs() {
        0 => 0,
        1 => 1,
        _ => 2,
    }
}

impl IntegerModel {
    pub fn encode(&mut self, enc: &mut Encoder, value: i64, ctx: usize, width: u32) {
        enc.encode(&mut self.zero[ctx], value == 0);
        if value == 0 {
            return;
        }
        enc.encode_direct((value < 0) as u64, 1);
        let m = value.unsigned_abs();
        if m < ESCAPE_BASE {
            self.magnitude.encode(enc, m as u32 - 1);
        } else {
            self.magnitude.encode(enc, ESCAPE);
            enc.encode_direct(m - ESCAPE_BASE, width);
        }
    }

    pub fn decode(&mut self, dec: &mut Decoder, ctx: usize, width: u32) -> Result<i64> {
        if dec.decode(&mut self.zero[ctx]) {
            return Ok(0);
        }
        let negative = dec.decode_direct(1) == 1;
        let sym = self.magnitude.decode(dec);
        let m = if sym == ESCAPE {
            (dec.decode_direct(width))
                .checked_add(ESCAPE_BASE)
                .ok_or_else(|| Error::InvalidArgument("escape overflow".into()))?
        } else {
            sym as u64 + 1
        };
        let value = if negative {
            0i64.checked_sub_unsigned(m)
        } else {
            i64::try_from(m).ok()
        };
        value.ok_or_else(|| Error::InvalidArgument("magnitude out of range".into()))
    }
}

/// Stream header byte for a set of values.
pub fn stream_width(values: &[i64]) -> u32 {
    tail_width(values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0))
}

pub fn encode_integers(values: &[i64]) -> Vec<u8> {
    let width = stream_width(values);
    let mut enc = Encoder::new();
    let mut model = IntegerModel::default();
    let mut prev = 0;
    for &v in values {
        model.encode(&mut enc, v, zero_context(prev), width);
        prev = v;
    }
    let mut out = vec![width as u8];
    out.extend(enc.finish());
    out
}

pub fn decode_integers(bytes: &[u8], count: usize, section: &str) -> Result<Vec<i64>> {
    let (&width, body) = bytes
        .split_first()
        .ok_or_else(|| Error::corrupt(section, "empty integer stream"))?;
    let width = width as u32;
    if width > 64 {
        return Err(Error::corrupt(section, format!("escape width {width}")));
    }
    let mut dec = Decoder::new(body);
    let mut model = IntegerModel::default();
    let mut out = Vec::with_capacity(count.min(body.len().saturating_mul(64)));
    let mut prev = 0;
    for _ in 0..count {
        let v = model
            .decode(&mut dec, zero_context(prev), width)
            .map_err(|e| Error::corrupt(section, e.to_string()))?;
        if dec.overrun() {
            return Err(Error::corrupt(section, "truncated integer stream"));
        }
        out.push(v);
        prev = v;
    }
    Ok(out)
}
