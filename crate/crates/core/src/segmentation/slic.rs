//! Luminance-only SLIC with connectivity post-processing.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicParams {
    pub k_target: usize,
    pub compactness: f64,
    pub iterations: usize,
}

impl Default for SlicParams {
    fn default() -> Self {
        SlicParams {
            k_target: 4000,
            compactness: 10.0,
            iterations: 10,
        }
    }
}

/// Label grid with labels `1..=count`, numbered by first appearance in
/// raster order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentationMap {
    pub height: usize,
    pub width: usize,
    pub labels: Vec<u32>,
    pub count: u32,
}

impl SegmentationMap {
    /// Renumbers an arbitrary positive label grid canonically.
    pub fn from_raw(height: usize, width: usize, raw: &[u32]) -> Result<Self> {
        if raw.len() != height * width || raw.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "label grid of {} entries for {height}x{width}",
                raw.len()
            )));
        }
        let mut remap = std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &l in raw {
            let next = remap.len() as u32 + 1;
            labels.push(*remap.entry(l).or_insert(next));
        }
        Ok(SegmentationMap {
            height,
            width,
            labels,
            count: remap.len() as u32,
        })
    }

    pub fn label(&self, s: usize, t: usize) -> u32 {
        self.labels[s * self.width + t]
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count as usize];
        for &l in &self.labels {
            sizes[l as usize - 1] += 1;
        }
        sizes
    }

    /// Splits every label whose super-ray could exceed `vertex_cap` vertices
    /// (`size * views`) by bisecting it at the median coordinate of its longer
    /// bounding-box axis.
    pub fn split_oversized(&self, views: usize, vertex_cap: usize) -> Result<Self> {
        if vertex_cap < views {
            return Err(Error::InvalidArgument(format!(
                "vertex cap {vertex_cap} is below the view count {views}"
            )));
        }
        let max_pixels = vertex_cap / views;
        let mut labels = self.labels.clone();
        let mut next_label = self.count + 1;
        let mut queue: VecDeque<u32> = (1..=self.count).collect();
        while let Some(label) = queue.pop_front() {
            let pixels: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label).collect();
            if pixels.len() <= max_pixels || pixels.len() < 2 {
                continue;
            }
            let (mut s0, mut s1, mut t0, mut t1) = (usize::MAX, 0, usize::MAX, 0);
            for &p in &pixels {
                let (s, t) = (p / self.width, p % self.width);
                s0 = s0.min(s);
                s1 = s1.max(s);
                t0 = t0.min(t);
                t1 = t1.max(t);
            }
            let by_row = s1 - s0 >= t1 - t0;
            let key = |p: usize| {
                if by_row {
                    (p / self.width, p % self.width)
                } else {
                    (p % self.width, p / self.width)
                }
            };
            let mut keys: Vec<(usize, usize)> = pixels.iter().map(|&p| key(p)).collect();
            keys.sort_unstable();
            let cut = keys[keys.len() / 2];
            for &p in &pixels {
                if key(p) >= cut {
                    labels[p] = next_label;
                }
            }
            queue.push_back(label);
            queue.push_back(next_label);
            next_label += 1;
        }
        Self::from_raw(self.height, self.width, &labels)
    }
}

#[derive(Clone, Copy, Debug)]
struct Center {
    l: f64,
    s: f64,
    t: f64,
}

/// Segments a luminance view into roughly `k_target` connected super-pixels.
pub fn slic_segment(
    view: &[u16],
    height: usize,
    width: usize,
    bitdepth: u8,
    params: &SlicParams,
) -> Result<SegmentationMap> {
    let n = height * width;
    if n == 0 || view.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "view of {} pixels for {height}x{width}",
            view.len()
        )));
    }
    if params.k_target == 0 || params.k_target > n {
        return Err(Error::InvalidArgument(format!(
            "k_target {} must lie in [1, {n}]",
            params.k_target
        )));
    }
    let scale = 255.0 / ((1u32 << bitdepth) - 1) as f64;
    let lum: Vec<f64> = view.iter().map(|&v| v as f64 * scale).collect();

    let k = params.k_target as f64;
    let grid_rows = ((k * height as f64 / width as f64).sqrt().round() as usize).clamp(1, height);
    let grid_cols = ((k / grid_rows as f64).round() as usize).clamp(1, width);
    let step = ((n as f64) / k).sqrt().max(1.0);

    let mut centers = Vec::with_capacity(grid_rows * grid_cols);
    for i in 0..grid_rows {
        for j in 0..grid_cols {
            let cs = (i as f64 + 0.5) * height as f64 / grid_rows as f64 - 0.5;
            let ct = (j as f64 + 0.5) * width as f64 / grid_cols as f64 - 0.5;
            let (s, t) = (cs.round() as usize, ct.round() as usize);
            let (ms, mt) = lowest_gradient(&lum, height, width, s.min(height - 1), t.min(width - 1));
            let (cs, ct) = if (ms, mt) == (s, t) {
                (cs, ct)
            } else {
                (ms as f64, mt as f64)
            };
            centers.push(Center {
                l: lum[ms * width + mt],
                s: cs,
                t: ct,
            });
        }
    }

    // start from the grid cells so every pixel is always assigned
    let mut labels: Vec<usize> = (0..n)
        .map(|p| {
            let (s, t) = (p / width, p % width);
            let i = (s * grid_rows / height).min(grid_rows - 1);
            let j = (t * grid_cols / width).min(grid_cols - 1);
            i * grid_cols + j
        })
        .collect();
    let mut dist = vec![f64::INFINITY; n];
    let spatial_weight = (params.compactness / step).powi(2);

    for _ in 0..params.iterations {
        dist.fill(f64::INFINITY);
        for (c, center) in centers.iter().enumerate() {
            let s_lo = (center.s - step).floor().max(0.0) as usize;
            let s_hi = ((center.s + step).ceil().max(0.0) as usize).min(height - 1);
            let t_lo = (center.t - step).floor().max(0.0) as usize;
            let t_hi = ((center.t + step).ceil().max(0.0) as usize).min(width - 1);
            for s in s_lo..=s_hi {
                for t in t_lo..=t_hi {
                    let p = s * width + t;
                    let dl = lum[p] - center.l;
                    let ds = s as f64 - center.s;
                    let dt = t as f64 - center.t;
                    let d = dl * dl + spatial_weight * (ds * ds + dt * dt);
                    if d < dist[p] {
                        dist[p] = d;
                        labels[p] = c;
                    }
                }
            }
        }
        let mut acc = vec![(0.0, 0.0, 0.0, 0usize); centers.len()];
        for p in 0..n {
            let a = &mut acc[labels[p]];
            a.0 += lum[p];
            a.1 += (p / width) as f64;
            a.2 += (p % width) as f64;
            a.3 += 1;
        }
        for (center, a) in centers.iter_mut().zip(&acc) {
            if a.3 > 0 {
                let cnt = a.3 as f64;
                *center = Center {
                    l: a.0 / cnt,
                    s: a.1 / cnt,
                    t: a.2 / cnt,
                };
            }
        }
    }

    let merged = enforce_connectivity(&labels, height, width);
    SegmentationMap::from_raw(height, width, &merged)
}

fn lowest_gradient(lum: &[f64], height: usize, width: usize, s: usize, t: usize) -> (usize, usize) {
    let grad = |s: usize, t: usize| -> f64 {
        let at = |s: usize, t: usize| lum[s * width + t];
        let gs = at((s + 1).min(height - 1), t) - at(s.saturating_sub(1), t);
        let gt = at(s, (t + 1).min(width - 1)) - at(s, t.saturating_sub(1));
        gs * gs + gt * gt
    };
    let mut best = (s, t);
    let mut best_g = grad(s, t);
    for ns in s.saturating_sub(1)..=(s + 1).min(height - 1) {
        for nt in t.saturating_sub(1)..=(t + 1).min(width - 1) {
            let g = grad(ns, nt);
            if g < best_g {
                best_g = g;
                best = (ns, nt);
            }
        }
    }
    best
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Makes every label 4-connected. Every component other than the largest of
/// its label is merged into the neighbouring component sharing the longest
/// border with it.
pub(crate) fn enforce_connectivity(labels: &[usize], height: usize, width: usize) -> Vec<u32> {
    let n = labels.len();
    let mut comp = vec![usize::MAX; n];
    let mut comp_label = Vec::new();
    let mut comp_size = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comp_label.len();
        comp[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(p) = queue.pop_front() {
            size += 1;
            for q in neighbors4(p, height, width) {
                if comp[q] == usize::MAX && labels[q] == labels[start] {
                    comp[q] = id;
                    queue.push_back(q);
                }
            }
        }
        comp_label.push(labels[start]);
        comp_size.push(size);
    }

    let ncomp = comp_label.len();
    let mut largest = std::collections::HashMap::new();
    for c in 0..ncomp {
        let e = largest.entry(comp_label[c]).or_insert(c);
        if comp_size[c] > comp_size[*e] {
            *e = c;
        }
    }
    let orphan: Vec<bool> = (0..ncomp).map(|c| largest[&comp_label[c]] != c).collect();

    let mut border: Vec<std::collections::BTreeMap<usize, usize>> = vec![Default::default(); ncomp];
    for p in 0..n {
        if !orphan[comp[p]] {
            continue;
        }
        for q in neighbors4(p, height, width) {
            if comp[q] != comp[p] {
                *border[comp[p]].entry(comp[q]).or_insert(0) += 1;
            }
        }
    }

    let mut parent: Vec<usize> = (0..ncomp).collect();
    for c in 0..ncomp {
        if !orphan[c] {
            continue;
        }
        // BTreeMap iteration gives the smallest component id on ties
        let mut best: Option<(usize, usize)> = None;
        for (&other, &len) in &border[c] {
            if best.is_none_or(|(_, l)| len > l) {
                best = Some((other, len));
            }
        }
        if let Some((other, _)) = best {
            let root_other = find(&mut parent, other);
            let root_c = find(&mut parent, c);
            if root_other != root_c {
                parent[root_c] = root_other;
            }
        }
    }
    (0..n).map(|p| find(&mut parent, comp[p]) as u32 + 1).collect()
}

pub(crate) fn neighbors4(p: usize, height: usize, width: usize) -> impl Iterator<Item = usize> {
    let (s, t) = (p / width, p % width);
    let up = (s > 0).then(|| p - width);
    let left = (t > 0).then(|| p - 1);
    let right = (t + 1 < width).then(|| p + 1);
    let down = (s + 1 < height).then(|| p + width);
    [up, left, right, down].into_iter().flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_connected(seg: &SegmentationMap) -> bool {
        let n = seg.labels.len();
        let mut seen = vec![false; seg.count as usize + 1];
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let l = seg.labels[start];
            if seen[l as usize] {
                return false;
            }
            seen[l as usize] = true;
            let mut stack = vec![start];
            visited[start] = true;
            while let Some(p) = stack.pop() {
                for q in neighbors4(p, seg.height, seg.width) {
                    if !visited[q] && seg.labels[q] == l {
                        visited[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        true
    }

    #[test]
    fn constant_image_gives_grid_cells() {
        let view = vec![100u16; 16 * 16];
        let p = SlicParams {
            k_target: 4,
            ..Default::default()
        };
        let seg = slic_segment(&view, 16, 16, 8, &p).unwrap();
        assert_eq!(seg.count, 4);
        assert_eq!(seg.sizes(), vec![64; 4]);
        assert_eq!(seg.label(0, 0), 1);
        assert_eq!(seg.label(0, 15), 2);
        assert_eq!(seg.label(15, 0), 3);
        assert_eq!(seg.label(15, 15), 4);
    }

    #[test]
    fn tiny_image_single_cluster() {
        let seg = slic_segment(
            &[1, 2, 3, 4],
            2,
            2,
            8,
            &SlicParams {
                k_target: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seg.labels, vec![1; 4]);
    }

    #[test]
    fn k_target_exceeding_pixels_fails() {
        let p = SlicParams {
            k_target: 5,
            ..Default::default()
        };
        assert!(slic_segment(&[0; 4], 2, 2, 8, &p).is_err());
    }

    #[test]
    fn textured_image_count_and_connectivity() {
        let (h, w) = (96, 128);
        let view: Vec<u16> = (0..h * w)
            .map(|p| {
                let (s, t) = ((p / w) as f64, (p % w) as f64);
                let v = 128.0 + 60.0 * (s / 9.0).sin() * (t / 13.0).cos() + if t > 70.0 { 40.0 } else { 0.0 };
                v.clamp(0.0, 255.0) as u16
            })
            .collect();
        for k in [12, 48, 150] {
            let p = SlicParams {
                k_target: k,
                ..Default::default()
            };
            let seg = slic_segment(&view, h, w, 8, &p).unwrap();
            let ratio = seg.count as f64 / k as f64;
            assert!((0.8..=1.2).contains(&ratio), "k={k} got {}", seg.count);
            assert!(is_connected(&seg));
            assert!(seg.sizes().iter().all(|&s| s > 0));
        }
    }

    #[test]
    fn split_oversized_respects_cap() {
        let seg = SegmentationMap::from_raw(8, 8, &[1; 64]).unwrap();
        let split = seg.split_oversized(4, 40).unwrap();
        assert!(split.sizes().iter().all(|&s| s * 4 <= 40));
        assert_eq!(split.labels.len(), 64);
        assert!(is_connected(&split));
    }

    #[test]
    fn orphans_merge_into_dominant_neighbour() {
        // label 0 occupies the left half, label 1 the right half plus a
        // stray pixel inside label 0's area
        let mut raw: Vec<usize> = (0..16).map(|p| usize::from(p % 4 >= 2)).collect();
        raw[4] = 1;
        let merged = enforce_connectivity(&raw, 4, 4);
        let seg = SegmentationMap::from_raw(4, 4, &merged).unwrap();
        assert_eq!(seg.count, 2);
        assert_eq!(seg.labels[4], seg.labels[0]);
    }
}
