//! Block-matching disparity estimate for the top-left view, using the first
//! row of views.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lightfield::{DisparityMap, LightField};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockMatchParams {
    /// Candidate disparities are the integers in `[-max, max]`.
    pub max_disparity: i64,
    /// Half width of the square matching window.
    pub radius: usize,
}

impl Default for BlockMatchParams {
    fn default() -> Self {
        BlockMatchParams {
            max_disparity: 4,
            radius: 2,
        }
    }
}

/// Sum of absolute differences between the window around `(s, t)` in view
/// `(0, 0)` and its shifted counterparts in views `(0, 1..N)`, normalized by
/// the number of in-bounds comparisons.
fn cost(lf: &LightField, s: usize, t: usize, d: i64, radius: usize) -> f64 {
    let (h, w) = (lf.height() as i64, lf.width() as i64);
    let r = radius as i64;
    let mut sum = 0u64;
    let mut count = 0u64;
    for n in 1..lf.cols() {
        for ds in -r..=r {
            for dt in -r..=r {
                let (s0, t0) = (s as i64 + ds, t as i64 + dt);
                let t1 = t0 + n as i64 * d;
                if s0 < 0 || s0 >= h || t0 < 0 || t0 >= w || t1 < 0 || t1 >= w {
                    continue;
                }
                let a = lf.get(0, 0, s0 as usize, t0 as usize) as i64;
                let b = lf.get(0, n, s0 as usize, t1 as usize) as i64;
                sum += a.abs_diff(b);
                count += 1;
            }
        }
    }
    if count == 0 {
        f64::INFINITY
    } else {
        sum as f64 / count as f64
    }
}

/// Integer disparity per pixel of view `(0, 0)`; ties prefer the smallest
/// magnitude, then the negative candidate.
pub fn estimate_disparity(lf: &LightField, params: &BlockMatchParams) -> Result<DisparityMap> {
    if params.max_disparity < 0 {
        return Err(Error::InvalidArgument(format!(
            "max disparity {}",
            params.max_disparity
        )));
    }
    let (h, w) = (lf.height(), lf.width());
    if lf.cols() < 2 {
        return DisparityMap::new(h, w, vec![0.0; h * w]);
    }
    let mut candidates: Vec<i64> = (-params.max_disparity..=params.max_disparity).collect();
    candidates.sort_by_key(|d| (d.abs(), *d));
    let values = (0..h * w)
        .into_par_iter()
        .map(|p| {
            let (s, t) = (p / w, p % w);
            let mut best = (f64::INFINITY, 0i64);
            for &d in &candidates {
                let c = cost(lf, s, t, d, params.radius);
                if c < best.0 {
                    best = (c, d);
                }
            }
            best.1 as f64
        })
        .collect();
    DisparityMap::new(h, w, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::{render, textured_scene};

    #[test]
    fn recovers_layers_away_from_edges() {
        let layers = textured_scene(48, 48, 11);
        let (lf, truth) = render(1, 4, 48, 48, 8, &layers).unwrap();
        let est = estimate_disparity(&lf, &BlockMatchParams::default()).unwrap();
        let agree = est.values.iter().zip(&truth.values).filter(|(a, b)| a == b).count();
        assert!(agree as f64 > 0.7 * truth.values.len() as f64, "{agree}");
    }

    #[test]
    fn single_column_is_zero() {
        let lf = LightField::new(2, 1, 4, 4, 8).unwrap();
        let est = estimate_disparity(&lf, &BlockMatchParams::default()).unwrap();
        assert!(est.values.iter().all(|&d| d == 0.0));
    }
}
