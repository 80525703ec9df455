//! Label projection from the top-left view to all views.

use std::collections::VecDeque;

use super::slic::{neighbors4, SegmentationMap};
use crate::error::{Error, Result};
use crate::lightfield::{Dims, DisparityMap};

/// Round half away from zero (`f64::round` semantics), as `i64`.
pub fn round_half_away(x: f64) -> i64 {
    x.round() as i64
}

/// Per-label median disparity, indexed by `label - 1`. Even-sized sets take
/// the lower median.
pub fn median_disparity(seg: &SegmentationMap, disp: &DisparityMap) -> Result<Vec<f64>> {
    if (seg.height, seg.width) != (disp.height, disp.width) {
        return Err(Error::DimensionMismatch(format!(
            "segmentation {}x{} vs disparity {}x{}",
            seg.height, seg.width, disp.height, disp.width
        )));
    }
    let mut buckets: Vec<Vec<f64>> = vec![Vec::new(); seg.count as usize];
    for (&l, &d) in seg.labels.iter().zip(&disp.values) {
        buckets[l as usize - 1].push(d);
    }
    Ok(buckets
        .into_iter()
        .map(|mut b| {
            b.sort_by(f64::total_cmp);
            b[(b.len() - 1) / 2]
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    Vertical,
    Horizontal,
}

/// Labels of every ray of the light field, plus the per-label disparity used
/// to build them.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperRayMap {
    pub dims: Dims,
    /// One label per ray, indexed like the light field.
    pub labels: Vec<u32>,
    /// Disparity of label `k` at index `k - 1`.
    pub disparity: Vec<f64>,
    pub count: u32,
}

impl SuperRayMap {
    pub fn view_labels(&self, v: usize) -> &[u32] {
        let len = self.dims.view_len();
        &self.labels[v * len..(v + 1) * len]
    }

    /// Integer per-step shift of label `k`.
    pub fn shift(&self, label: u32) -> i64 {
        round_half_away(self.disparity[label as usize - 1])
    }

    /// Super-rays ordered by label; vertex lists are in ascending ray order,
    /// so the reference-view pixels come first.
    pub fn superrays(&self) -> Vec<SuperRay> {
        let mut rays: Vec<Vec<usize>> = vec![Vec::new(); self.count as usize];
        for (r, &l) in self.labels.iter().enumerate() {
            rays[l as usize - 1].push(r);
        }
        let view_len = self.dims.view_len();
        rays.into_iter()
            .enumerate()
            .map(|(i, rays)| {
                let reference_len = rays.iter().take_while(|&&r| r < view_len).count();
                SuperRay {
                    label: i as u32 + 1,
                    rays,
                    reference_len,
                }
            })
            .collect()
    }
}

/// The rays sharing one label. `rays[..reference_len]` lie in the top-left view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperRay {
    pub label: u32,
    pub rays: Vec<usize>,
    pub reference_len: usize,
}

impl SuperRay {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn local_index(&self, ray: usize) -> Option<usize> {
        self.rays.binary_search(&ray).ok()
    }
}

/// Projects the top-left segmentation to every view.
///
/// Row 0 is projected horizontally from view `(0,0)`; every other row first
/// gets a vertical projection of view `(0,0)` into `(m,0)`, then horizontal
/// projections from `(m,0)`. Each label moves by `round(d_k)` pixels per
/// angular step. Overlaps keep the higher-disparity label and holes take the
/// lower-disparity label among the nearest assigned pixels on both sides
/// along the projection axis.
pub fn project_superrays(seg: &SegmentationMap, disparity: &[f64], dims: Dims) -> Result<SuperRayMap> {
    if (seg.height, seg.width) != (dims.height, dims.width) {
        return Err(Error::DimensionMismatch(format!(
            "segmentation {}x{} vs views {}x{}",
            seg.height, seg.width, dims.height, dims.width
        )));
    }
    if disparity.len() != seg.count as usize {
        return Err(Error::LengthMismatch {
            expected: seg.count as usize,
            actual: disparity.len(),
        });
    }
    let shifts: Vec<i64> = disparity.iter().map(|&d| round_half_away(d)).collect();
    let (h, w) = (dims.height, dims.width);
    let view_len = dims.view_len();
    let mut labels = vec![0u32; dims.num_rays()];

    // rows only depend on the top-left view
    let rows: Vec<Vec<u32>> = {
        use rayon::prelude::*;
        (0..dims.rows)
            .into_par_iter()
            .map(|m| {
                let first = if m == 0 {
                    seg.labels.clone()
                } else {
                    project(&seg.labels, h, w, disparity, &shifts, Axis::Vertical, m as i64)
                };
                let mut row = Vec::with_capacity(dims.cols * view_len);
                row.extend_from_slice(&first);
                for n in 1..dims.cols {
                    row.extend(project(&first, h, w, disparity, &shifts, Axis::Horizontal, n as i64));
                }
                row
            })
            .collect()
    };
    for (m, row) in rows.into_iter().enumerate() {
        let start = m * dims.cols * view_len;
        labels[start..start + row.len()].copy_from_slice(&row);
    }
    Ok(SuperRayMap {
        dims,
        labels,
        disparity: disparity.to_vec(),
        count: seg.count,
    })
}

/// `a` beats `b` on a collision when it has the higher disparity.
fn foreground_wins(a: u32, b: u32, disparity: &[f64]) -> bool {
    let (da, db) = (disparity[a as usize - 1], disparity[b as usize - 1]);
    da > db || (da == db && a < b)
}

fn background_wins(a: u32, b: u32, disparity: &[f64]) -> bool {
    let (da, db) = (disparity[a as usize - 1], disparity[b as usize - 1]);
    da < db || (da == db && a < b)
}

fn project(src: &[u32], h: usize, w: usize, disparity: &[f64], shifts: &[i64], axis: Axis, steps: i64) -> Vec<u32> {
    let mut out = vec![0u32; h * w];
    for s in 0..h {
        for t in 0..w {
            let k = src[s * w + t];
            let off = shifts[k as usize - 1] * steps;
            let (ts, tt) = match axis {
                Axis::Vertical => (s as i64 + off, t as i64),
                Axis::Horizontal => (s as i64, t as i64 + off),
            };
            if ts < 0 || tt < 0 || ts >= h as i64 || tt >= w as i64 {
                continue;
            }
            let q = ts as usize * w + tt as usize;
            if out[q] == 0 || foreground_wins(k, out[q], disparity) {
                out[q] = k;
            }
        }
    }
    if out.iter().all(|&l| l == 0) {
        return src.to_vec();
    }
    fill_holes(&mut out, h, w, disparity, axis);
    out
}

fn fill_holes(labels: &mut [u32], h: usize, w: usize, disparity: &[f64], axis: Axis) {
    let (lines, len) = match axis {
        Axis::Horizontal => (h, w),
        Axis::Vertical => (w, h),
    };
    let at = |line: usize, i: usize| match axis {
        Axis::Horizontal => line * w + i,
        Axis::Vertical => i * w + line,
    };
    let mut filled = Vec::new();
    for line in 0..lines {
        let mut i = 0;
        while i < len {
            if labels[at(line, i)] != 0 {
                i += 1;
                continue;
            }
            let start = i;
            while i < len && labels[at(line, i)] == 0 {
                i += 1;
            }
            let before = (start > 0).then(|| labels[at(line, start - 1)]);
            let after = (i < len).then(|| labels[at(line, i)]);
            let pick = match (before, after) {
                (Some(a), Some(b)) => Some(if background_wins(a, b, disparity) { a } else { b }),
                (a, b) => a.or(b),
            };
            if let Some(k) = pick {
                for j in start..i {
                    filled.push((at(line, j), k));
                }
            }
        }
    }
    for (p, k) in filled {
        labels[p] = k;
    }
    if labels.contains(&0) {
        fill_nearest(labels, h, w, disparity);
    }
}

/// Multi-source breadth-first fill; among equally near sources the
/// lower-disparity label wins, then the smaller label.
fn fill_nearest(labels: &mut [u32], h: usize, w: usize, disparity: &[f64]) {
    let mut dist = vec![u32::MAX; labels.len()];
    let mut frontier: VecDeque<usize> = VecDeque::new();
    for (p, &l) in labels.iter().enumerate() {
        if l != 0 {
            dist[p] = 0;
            frontier.push_back(p);
        }
    }
    while let Some(p) = frontier.pop_front() {
        for q in neighbors4(p, h, w) {
            if dist[q] == u32::MAX {
                dist[q] = dist[p] + 1;
                labels[q] = labels[p];
                frontier.push_back(q);
            } else if dist[q] == dist[p] + 1 && background_wins(labels[p], labels[q], disparity) {
                labels[q] = labels[p];
            }
        }
    }
}
