use crate::error::{Error, Result};
use crate::graph::{eigendecompose, gft_forward, gft_inverse, laplacian, EigenBasis, SuperRayGraph};

/// Values of spatial band `band` across the views where it exists.
#[derive(Clone, Debug, PartialEq)]
pub struct BandVector {
    pub band: usize,
    /// View indices `v = m * N + n`, ascending.
    pub views: Vec<usize>,
    pub values: Vec<f64>,
}

/// Spatial transform of one view's super-pixel.
pub fn spatial_transform_view(basis: &EigenBasis, signal: &[f64]) -> Result<Vec<f64>> {
    gft_forward(basis, signal)
}

/// Angular transform `V^T x̂^b` of a band vector.
pub fn angular_transform_band(band: &BandVector, basis: &EigenBasis) -> Result<Vec<f64>> {
    gft_forward(basis, &band.values)
}

/// Connected groups of `views` under 4-neighbour adjacency on the angular
/// grid. Groups are ascending and ordered by their first view.
pub fn angular_components(views: &[usize], cols: usize) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; views.len()];
    let mut out = Vec::new();
    let adjacent = |a: usize, b: usize| {
        let (ma, na) = (a / cols, a % cols);
        let (mb, nb) = (b / cols, b % cols);
        ma.abs_diff(mb) + na.abs_diff(nb) == 1
    };
    for start in 0..views.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[start] = id;
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(views[i]);
            for j in 0..views.len() {
                if comp[j] == usize::MAX && adjacent(views[i], views[j]) {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Eigenbasis of the 4-neighbour grid graph over `views`.
pub fn angular_basis(views: &[usize], cols: usize) -> Result<EigenBasis> {
    let mut edges = Vec::new();
    for i in 0..views.len() {
        for j in i + 1..views.len() {
            let (a, b) = (views[i], views[j]);
            if (a / cols).abs_diff(b / cols) + (a % cols).abs_diff(b % cols) == 1 {
                edges.push((i, j));
            }
        }
    }
    eigendecompose(&laplacian(views.len(), &edges))
}

/// `dd(1) = (x̂^b(1) - V(1, 2..) dd(2..)) / V(1,1)`.
pub fn predict_dc_band(basis: &EigenBasis, first: f64, ac: &[f64]) -> Result<f64> {
    let nb = basis.len();
    if ac.len() + 1 != nb {
        return Err(Error::LengthMismatch {
            expected: nb - 1,
            actual: ac.len(),
        });
    }
    let v11 = basis.vectors[(0, 0)];
    if v11.abs() < 1e-12 {
        return Err(Error::DecoupledReference { label: 0, band: 0 });
    }
    let mut acc = first;
    for (j, c) in ac.iter().enumerate() {
        acc -= basis.vectors[(0, j + 1)] * c;
    }
    Ok(acc / v11)
}

/// Spatial coefficients of views `2..N_b` of the band from the full angular
/// coefficient vector `[dc, ac..]`.
pub fn reconstruct_band(basis: &EigenBasis, dc: f64, ac: &[f64]) -> Result<Vec<f64>> {
    let mut full = Vec::with_capacity(ac.len() + 1);
    full.push(dc);
    full.extend_from_slice(ac);
    let mut out = gft_inverse(basis, &full)?;
    out.remove(0);
    Ok(out)
}

/// Super-pixel of one view inside a super-ray.
#[derive(Clone, Debug, PartialEq)]
pub struct ViewSlice {
    pub view: usize,
    /// Local vertex indices of the super-ray, ascending.
    pub vertices: Vec<usize>,
    pub basis: EigenBasis,
}

/// One angular component of one spatial band.
#[derive(Clone, Debug, PartialEq)]
pub struct BandGroup {
    pub band: usize,
    /// Indices into [`SeparableTransform::slices`], ascending.
    pub slices: Vec<usize>,
    pub basis: EigenBasis,
    /// The group holds the reference view, so its first angular coefficient is
    /// predicted rather than transmitted.
    pub predicted: bool,
}

/// Separable spatial-then-angular transform of a super-ray. Coefficients are
/// laid out band by band; inside a band the group holding the reference view
/// comes first, and each group lists its angular coefficients in ascending
/// eigenvalue order.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparableTransform {
    pub slices: Vec<ViewSlice>,
    pub groups: Vec<BandGroup>,
    len: usize,
}

/// `(view, local vertices, spatial edges in slice-local indices)`.
pub type SliceLayout = (usize, Vec<usize>, Vec<(usize, usize)>);

/// Coefficient layout of the separable transform, without the bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparableLayout {
    /// One per view, ascending by view.
    pub slices: Vec<SliceLayout>,
    /// `(band, slice indices, views, predicted)` per band group, in coding
    /// order.
    pub groups: Vec<(usize, Vec<usize>, Vec<usize>, bool)>,
    pub len: usize,
}

impl SeparableLayout {
    /// `graph` must come from a super-ray whose `reference_len` pixels lie in
    /// view 0; only its spatial edges are used.
    pub fn new(graph: &SuperRayGraph, view_len: usize, cols: usize) -> Self {
        let mut by_view: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &ray) in graph.vertices.iter().enumerate() {
            by_view.entry(ray / view_len).or_default().push(i);
        }
        let mut position = vec![(0usize, 0usize); graph.len()];
        for (si, vertices) in by_view.values().enumerate() {
            for (li, &v) in vertices.iter().enumerate() {
                position[v] = (si, li);
            }
        }
        let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); by_view.len()];
        for &(a, b) in &graph.spatial_edges {
            let (sa, la) = position[a];
            let (sb, lb) = position[b];
            debug_assert_eq!(sa, sb);
            edges[sa].push((la, lb));
        }
        let slices: Vec<_> = by_view
            .into_iter()
            .zip(edges)
            .map(|((view, vertices), edges)| (view, vertices, edges))
            .collect();

        let max_band = slices.iter().map(|s| s.1.len()).max().unwrap_or(0);
        let mut groups = Vec::new();
        for band in 0..max_band {
            let present: Vec<usize> = (0..slices.len()).filter(|&i| slices[i].1.len() > band).collect();
            let views: Vec<usize> = present.iter().map(|&i| slices[i].0).collect();
            for comp in angular_components(&views, cols) {
                let idx: Vec<usize> = comp
                    .iter()
                    .map(|v| present[views.iter().position(|x| x == v).expect("view in band")])
                    .collect();
                let predicted = comp[0] == 0;
                groups.push((band, idx, comp, predicted));
            }
        }
        SeparableLayout {
            slices,
            groups,
            len: graph.len(),
        }
    }

    /// Coefficient positions that are predicted from the reference view.
    pub fn predicted_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut pos = 0;
        for g in &self.groups {
            if g.3 {
                out.push(pos);
            }
            pos += g.1.len();
        }
        out
    }
}

impl SeparableTransform {
    /// `graph` must come from a super-ray whose `reference_len` pixels lie in
    /// view 0; only its spatial edges are used.
    pub fn new(graph: &SuperRayGraph, view_len: usize, cols: usize) -> Result<Self> {
        Self::from_layout(&SeparableLayout::new(graph, view_len, cols), cols)
    }

    pub fn from_layout(layout: &SeparableLayout, cols: usize) -> Result<Self> {
        let slices = layout
            .slices
            .iter()
            .map(|(view, vertices, edges)| {
                let basis = eigendecompose(&laplacian(vertices.len(), edges))?;
                Ok(ViewSlice {
                    view: *view,
                    vertices: vertices.clone(),
                    basis,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let groups = layout
            .groups
            .iter()
            .map(|(band, idx, views, predicted)| {
                Ok(BandGroup {
                    band: *band,
                    slices: idx.clone(),
                    basis: angular_basis(views, cols)?,
                    predicted: *predicted,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeparableTransform {
            slices,
            groups,
            len: layout.len,
        })
    }

    /// Number of coefficients, equal to the super-ray size.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coefficient positions that are predicted from the reference view.
    pub fn predicted_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut pos = 0;
        for g in &self.groups {
            if g.predicted {
                out.push(pos);
            }
            pos += g.slices.len();
        }
        out
    }

    fn spatial_coefficients(&self, x: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.slices
            .iter()
            .map(|s| {
                let signal: Vec<f64> = s.vertices.iter().map(|&v| x[v]).collect();
                spatial_transform_view(&s.basis, &signal)
            })
            .collect()
    }

    /// Full coefficient vector of the super-ray signal `x` (local vertex order).
    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                actual: x.len(),
            });
        }
        let spatial = self.spatial_coefficients(x)?;
        let mut out = Vec::with_capacity(self.len);
        for g in &self.groups {
            let band = BandVector {
                band: g.band,
                views: g.slices.iter().map(|&i| self.slices[i].view).collect(),
                values: g.slices.iter().map(|&i| spatial[i][g.band]).collect(),
            };
            out.extend(angular_transform_band(&band, &g.basis)?);
        }
        Ok(out)
    }

    /// Rebuilds the signal from the coefficient vector; predicted positions
    /// are ignored and recomputed from `reference`, the signal on the
    /// reference-view slice (slice 0).
    pub fn reconstruct(&self, coeffs: &[f64], reference: &[f64]) -> Result<Vec<f64>> {
        if coeffs.len() != self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                actual: coeffs.len(),
            });
        }
        let ref_slice = &self.slices[0];
        if ref_slice.view != 0 || reference.len() != ref_slice.vertices.len() {
            return Err(Error::LengthMismatch {
                expected: ref_slice.vertices.len(),
                actual: reference.len(),
            });
        }
        let ref_spatial = spatial_transform_view(&ref_slice.basis, reference)?;
        let mut spatial: Vec<Vec<f64>> = self.slices.iter().map(|s| vec![0.0; s.vertices.len()]).collect();
        let mut pos = 0;
        for g in &self.groups {
            let n = g.slices.len();
            let block = &coeffs[pos..pos + n];
            pos += n;
            let values = if g.predicted {
                let dc = predict_dc_band(&g.basis, ref_spatial[g.band], &block[1..])
                    .map_err(|_| Error::DecoupledReference { label: 0, band: g.band })?;
                let mut v = vec![ref_spatial[g.band]];
                v.extend(reconstruct_band(&g.basis, dc, &block[1..])?);
                v
            } else {
                gft_inverse(&g.basis, block)?
            };
            for (&si, val) in g.slices.iter().zip(values) {
                spatial[si][g.band] = val;
            }
        }
        let mut x = vec![0.0; self.len];
        for (si, s) in self.slices.iter().enumerate() {
            let values = if si == 0 {
                reference.to_vec()
            } else {
                gft_inverse(&s.basis, &spatial[si])?
            };
            for (&v, val) in s.vertices.iter().zip(values) {
                x[v] = val;
            }
        }
        Ok(x)
    }

    /// Inverse of [`SeparableTransform::forward`] without prediction.
    pub fn inverse(&self, coeffs: &[f64]) -> Result<Vec<f64>> {
        let mut spatial: Vec<Vec<f64>> = self.slices.iter().map(|s| vec![0.0; s.vertices.len()]).collect();
        let mut pos = 0;
        for g in &self.groups {
            let n = g.slices.len();
            let values = gft_inverse(&g.basis, &coeffs[pos..pos + n])?;
            pos += n;
            for (&si, val) in g.slices.iter().zip(values) {
                spatial[si][g.band] = val;
            }
        }
        let mut x = vec![0.0; self.len];
        for (si, s) in self.slices.iter().enumerate() {
            for (&v, val) in s.vertices.iter().zip(gft_inverse(&s.basis, &spatial[si])?) {
                x[v] = val;
            }
        }
        Ok(x)
    }
}

/// `V^b_k(1,1)` for a band basis, the value inverted by the DC prediction.
pub fn reference_weight(basis: &EigenBasis) -> f64 {
    basis.vectors[(0, 0)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_views(rows: usize, cols: usize) -> Vec<usize> {
        (0..rows * cols).collect()
    }

    #[test]
    fn single_view_band_is_identity() {
        let b = angular_basis(&[0], 4).unwrap();
        assert_eq!(b.vectors[(0, 0)], 1.0);
        assert_eq!(predict_dc_band(&b, 3.5, &[]).unwrap(), 3.5);
        assert!(reconstruct_band(&b, 3.5, &[]).unwrap().is_empty());
    }

    #[test]
    fn constant_band() {
        let views = grid_views(2, 3);
        let b = angular_basis(&views, 3).unwrap();
        let band = BandVector {
            band: 0,
            views: views.clone(),
            values: vec![2.0; 6],
        };
        let c = angular_transform_band(&band, &b).unwrap();
        assert!((c[0] - 2.0 * 6f64.sqrt()).abs() < 1e-12);
        assert!(c[1..].iter().all(|x| x.abs() < 1e-12));
        let dc = predict_dc_band(&b, 2.0, &[0.0; 5]).unwrap();
        assert!((dc - 2.0 * 6f64.sqrt()).abs() < 1e-12);
        let rest = reconstruct_band(&b, dc, &[0.0; 5]).unwrap();
        assert!(rest.iter().all(|x| (x - 2.0).abs() < 1e-12));
    }

    #[test]
    fn random_band_parseval_and_prediction() {
        let views = vec![0, 1, 2, 5, 6];
        let b = angular_basis(&views, 4).unwrap();
        let band = BandVector {
            band: 3,
            views,
            values: vec![1.5, -2.0, 0.25, 7.0, 3.0],
        };
        let c = angular_transform_band(&band, &b).unwrap();
        let e0: f64 = band.values.iter().map(|x| x * x).sum();
        let e1: f64 = c.iter().map(|x| x * x).sum();
        assert!((e0 - e1).abs() < 1e-9 * e0);
        let dc = predict_dc_band(&b, band.values[0], &c[1..]).unwrap();
        assert!((dc - c[0]).abs() < 1e-8);
        let rest = reconstruct_band(&b, dc, &c[1..]).unwrap();
        for (a, e) in rest.iter().zip(&band.values[1..]) {
            assert!((a - e).abs() < 1e-8);
        }
    }

    #[test]
    fn angular_grid_components() {
        // 3 columns; views 0,1 connected, 5 alone, 6 and 3 connected? 3=(1,0), 6=(2,0)
        let comps = angular_components(&[0, 1, 3, 5, 6], 3);
        assert_eq!(comps, vec![vec![0, 1, 3, 6], vec![5]]);
    }

    #[test]
    fn reference_weight_minimum() {
        let b = angular_basis(&grid_views(3, 3), 3).unwrap();
        assert!((reference_weight(&b) - 1.0 / 3.0).abs() < 1e-12);
    }
}
