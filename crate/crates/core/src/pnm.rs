//! Minimal portable any-map codecs: PGM/PPM (binary and ASCII) and PFM.
//!
//! Sample values are kept exactly as stored; a 10-bit view is a PGM with
//! `maxval` 1023 and two-byte big-endian samples.

use std::path::Path;

use crate::error::{Error, Result};

/// A decoded grey or color map. `channels` is 1 or 3, samples interleaved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnyMap {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

impl AnyMap {
    /// Integer BT.601 luma, `(299 R + 587 G + 114 B + 500) / 1000`.
    pub fn luma(&self) -> Vec<u16> {
        match self.channels {
            1 => self.samples.clone(),
            _ => self
                .samples
                .chunks_exact(3)
                .map(|px| {
                    let y = 299 * px[0] as u32 + 587 * px[1] as u32 + 114 * px[2] as u32;
                    ((y + 500) / 1000) as u16
                })
                .collect(),
        }
    }
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).ok()
    }

    fn number(&mut self) -> Option<usize> {
        self.token()?.parse().ok()
    }
}

pub fn decode_pnm(bytes: &[u8], path: &Path) -> Result<AnyMap> {
    let bad = |reason: &str| Error::BadImage {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let mut h = Header { bytes, pos: 0 };
    let magic = h.token().ok_or_else(|| bad("empty file"))?;
    let (channels, ascii) = match magic {
        "P2" => (1, true),
        "P3" => (3, true),
        "P5" => (1, false),
        "P6" => (3, false),
        _ => return Err(bad("not a PGM/PPM file")),
    };
    let width = h.number().ok_or_else(|| bad("bad width"))?;
    let height = h.number().ok_or_else(|| bad("bad height"))?;
    let maxval = h.number().ok_or_else(|| bad("bad maxval"))?;
    if width == 0 || height == 0 {
        return Err(bad("zero dimension"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(bad("maxval out of range"));
    }
    let count = width * height * channels;
    let mut samples = Vec::with_capacity(count);
    if ascii {
        for _ in 0..count {
            let v = h.number().ok_or_else(|| bad("truncated sample data"))?;
            if v > maxval {
                return Err(bad("sample exceeds maxval"));
            }
            samples.push(v as u16);
        }
    } else {
        // exactly one whitespace byte separates maxval from the raster
        let start = h.pos + 1;
        let wide = maxval > 255;
        let need = count * if wide { 2 } else { 1 };
        if bytes.len() < start + need {
            return Err(bad("truncated sample data"));
        }
        let raster = &bytes[start..start + need];
        if wide {
            samples.extend(raster.chunks_exact(2).map(|b| u16::from_be_bytes([b[0], b[1]])));
        } else {
            samples.extend(raster.iter().map(|&b| b as u16));
        }
        if samples.iter().any(|&v| v as usize > maxval) {
            return Err(bad("sample exceeds maxval"));
        }
    }
    Ok(AnyMap {
        width,
        height,
        channels,
        maxval: maxval as u16,
        samples,
    })
}

pub fn encode_pgm(width: usize, height: usize, maxval: u16, samples: &[u16]) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n{}\n", width, height, maxval).into_bytes();
    if maxval > 255 {
        for &v in samples {
            out.extend_from_slice(&v.to_be_bytes());
        }
    } else {
        out.extend(samples.iter().map(|&v| v as u8));
    }
    out
}

pub fn read_pnm(path: &Path) -> Result<AnyMap> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_pnm(&bytes, path)
}

pub fn write_pgm(path: &Path, width: usize, height: usize, maxval: u16, samples: &[u16]) -> Result<()> {
    std::fs::write(path, encode_pgm(width, height, maxval, samples)).map_err(|e| Error::io(path, e))
}

/// Reads a single-channel PFM (`Pf`). Rows are returned top to bottom.
pub fn read_pfm(path: &Path) -> Result<(usize, usize, Vec<f32>)> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let bad = |reason: &str| Error::BadImage {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let mut h = Header { bytes: &bytes, pos: 0 };
    if h.token() != Some("Pf") {
        return Err(bad("not a greyscale PFM file"));
    }
    let width = h.number().ok_or_else(|| bad("bad width"))?;
    let height = h.number().ok_or_else(|| bad("bad height"))?;
    let scale: f32 = h.token().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad scale"))?;
    let start = h.pos + 1;
    let need = width * height * 4;
    if bytes.len() < start + need {
        return Err(bad("truncated sample data"));
    }
    let little = scale < 0.0;
    let mut values = vec![0f32; width * height];
    for (i, b) in bytes[start..start + need].chunks_exact(4).enumerate() {
        let raw = [b[0], b[1], b[2], b[3]];
        let v = if little {
            f32::from_le_bytes(raw)
        } else {
            f32::from_be_bytes(raw)
        };
        let (row, col) = (i / width, i % width);
        values[(height - 1 - row) * width + col] = v;
    }
    Ok((width, height, values))
}

pub fn write_pfm(path: &Path, width: usize, height: usize, values: &[f32]) -> Result<()> {
    let mut out = format!("Pf\n{} {}\n-1.0\n", width, height).into_bytes();
    for row in (0..height).rev() {
        for v in &values[row * width..(row + 1) * width] {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}
