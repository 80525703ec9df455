//! Context coding of canonical label grids.
//!
//! Each pixel is coded against its left, top and top-right neighbours: one
//! adaptive flag per distinct candidate label, then a "next new label" flag,
//! then the label index in direct bits.

use super::rangecoder::{Bit, Decoder, Encoder};
use crate::error::{Error, Result};
use crate::segmentation::SegmentationMap;

const SECTION: &str = "segmentation";

fn candidates(labels: &[u32], p: usize, width: usize) -> ([u32; 3], usize, usize) {
    let (s, t) = (p / width, p % width);
    let mut out = [0u32; 3];
    let mut n = 0;
    let mut push = |l: u32| {
        if !out[..n].contains(&l) {
            out[n] = l;
            n += 1;
        }
    };
    if t > 0 {
        push(labels[p - 1]);
    }
    if s > 0 {
        push(labels[p - width]);
        if t + 1 < width {
            push(labels[p - width + 1]);
        }
    }
    let uniform = (t > 0 && s > 0 && labels[p - 1] == labels[p - width]) as usize;
    (out, n, uniform)
}

fn index_bits(max: u32) -> u32 {
    32 - max.saturating_sub(1).leading_zeros()
}

struct Models {
    same: [[Bit; 2]; 3],
    new: [Bit; 2],
}

impl Models {
    fn new() -> Self {
        Models {
            same: [[Bit::default(); 2]; 3],
            new: [Bit::default(); 2],
        }
    }
}

pub fn encode_labels(seg: &SegmentationMap) -> Vec<u8> {
    let mut enc = Encoder::new();
    let mut models = Models::new();
    let mut max_seen = 0u32;
    for p in 0..seg.labels.len() {
        let label = seg.labels[p];
        let (cand, n, uniform) = candidates(&seg.labels, p, seg.width);
        let mut matched = false;
        for (i, &c) in cand[..n].iter().enumerate() {
            let hit = c == label;
            enc.encode(&mut models.same[i][uniform], hit);
            if hit {
                matched = true;
                break;
            }
        }
        if matched {
            continue;
        }
        let has_context = (n > 0) as usize;
        if max_seen < seg.count {
            let is_new = label == max_seen + 1;
            enc.encode(&mut models.new[has_context], is_new);
            if is_new {
                max_seen += 1;
                continue;
            }
        }
        enc.encode_direct(u64::from(label - 1), index_bits(max_seen));
    }
    enc.finish()
}

pub fn decode_labels(bytes: &[u8], height: usize, width: usize, count: u32) -> Result<SegmentationMap> {
    let total = height * width;
    if total == 0 || count == 0 || count as usize > total {
        return Err(Error::corrupt(SECTION, format!("{count} labels for {height}x{width}")));
    }
    let mut dec = Decoder::new(bytes);
    let mut models = Models::new();
    let mut labels = vec![0u32; total];
    let mut max_seen = 0u32;
    for p in 0..total {
        let (cand, n, uniform) = candidates(&labels, p, width);
        let mut label = None;
        for (i, &c) in cand[..n].iter().enumerate() {
            if dec.decode(&mut models.same[i][uniform]) {
                label = Some(c);
                break;
            }
        }
        let label = match label {
            Some(l) => l,
            None => {
                let has_context = (n > 0) as usize;
                if max_seen < count && dec.decode(&mut models.new[has_context]) {
                    max_seen += 1;
                    max_seen
                } else {
                    let l = dec.decode_direct(index_bits(max_seen)) as u32 + 1;
                    if l > max_seen || max_seen == 0 {
                        return Err(Error::corrupt(SECTION, format!("label {l} before it appeared")));
                    }
                    l
                }
            }
        };
        labels[p] = label;
        if dec.overrun() {
            return Err(Error::corrupt(SECTION, "truncated label map"));
        }
    }
    if max_seen != count {
        return Err(Error::corrupt(
            SECTION,
            format!("{max_seen} labels decoded, header says {count}"),
        ));
    }
    Ok(SegmentationMap {
        height,
        width,
        labels,
        count,
    })
}
