use nalgebra::DMatrix;

use crate::segmentation::{SuperRay, SuperRayMap};

/// Unweighted graph over the rays of one super-ray. Vertex `i` is
/// `superray.rays[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperRayGraph {
    pub vertices: Vec<usize>,
    /// Edges between 4-adjacent pixels of one view, `(i, j)` with `i < j`.
    pub spatial_edges: Vec<(usize, usize)>,
    /// Edges between disparity-corresponding pixels of grid-adjacent views.
    pub angular_edges: Vec<(usize, usize)>,
}

/// Laplacian `D - A` of an edge list over `n` vertices.
pub fn laplacian(n: usize, edges: &[(usize, usize)]) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(n, n);
    for &(i, j) in edges {
        l[(i, j)] -= 1.0;
        l[(j, i)] -= 1.0;
        l[(i, i)] += 1.0;
        l[(j, j)] += 1.0;
    }
    l
}

impl SuperRayGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn spatial_laplacian(&self) -> DMatrix<f64> {
        laplacian(self.len(), &self.spatial_edges)
    }

    pub fn angular_laplacian(&self) -> DMatrix<f64> {
        laplacian(self.len(), &self.angular_edges)
    }

    /// `L = L^s + L^a`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut edges = self.spatial_edges.clone();
        edges.extend_from_slice(&self.angular_edges);
        laplacian(self.len(), &edges)
    }

    pub fn isolated_vertices(&self) -> usize {
        let mut degree = vec![0usize; self.len()];
        for &(i, j) in self.spatial_edges.iter().chain(&self.angular_edges) {
            degree[i] += 1;
            degree[j] += 1;
        }
        degree.iter().filter(|&&d| d == 0).count()
    }
}

pub fn build_superray_graph(superray: &SuperRay, srmap: &SuperRayMap) -> SuperRayGraph {
    let dims = srmap.dims;
    let k = superray.label;
    let shift = srmap.shift(k);
    let (h, w) = (dims.height as i64, dims.width as i64);
    let mut spatial_edges = Vec::new();
    let mut angular_edges = Vec::new();

    let link = |i: usize, view: usize, s: i64, t: i64, edges: &mut Vec<(usize, usize)>| {
        if s < 0 || t < 0 || s >= h || t >= w {
            return;
        }
        let (m, n) = (view / dims.cols, view % dims.cols);
        let ray = dims.ray_index(m, n, s as usize, t as usize);
        if srmap.labels[ray] != k {
            return;
        }
        if let Some(j) = superray.local_index(ray) {
            edges.push((i, j));
        }
    };

    for (i, &ray) in superray.rays.iter().enumerate() {
        let (v, s, t) = dims.split_ray(ray);
        let (s, t) = (s as i64, t as i64);
        link(i, v, s, t + 1, &mut spatial_edges);
        link(i, v, s + 1, t, &mut spatial_edges);
        let (m, n) = (v / dims.cols, v % dims.cols);
        if n + 1 < dims.cols {
            link(i, v + 1, s, t + shift, &mut angular_edges);
        }
        if m + 1 < dims.rows {
            link(i, v + dims.cols, s + shift, t, &mut angular_edges);
        }
    }
    SuperRayGraph {
        vertices: superray.rays.clone(),
        spatial_edges,
        angular_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lightfield::Dims;

    fn map(rows: usize, cols: usize, h: usize, w: usize, labels: Vec<u32>, disparity: Vec<f64>) -> SuperRayMap {
        let count = disparity.len() as u32;
        SuperRayMap {
            dims: Dims {
                rows,
                cols,
                height: h,
                width: w,
            },
            labels,
            disparity,
            count,
        }
    }

    #[test]
    fn single_view_block() {
        let m = map(1, 1, 2, 2, vec![1; 4], vec![0.0]);
        let sr = &m.superrays()[0];
        let g = build_superray_graph(sr, &m);
        assert_eq!(g.spatial_edges.len(), 4);
        assert!(g.angular_edges.is_empty());
        assert_eq!(g.angular_laplacian(), DMatrix::zeros(4, 4));
    }

    #[test]
    fn smallest_angular_graph() {
        let m = map(1, 2, 1, 1, vec![1, 1], vec![0.0]);
        let g = build_superray_graph(&m.superrays()[0], &m);
        assert_eq!(g.laplacian(), DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn shifted_correspondences_match_enumeration() {
        // 1x2 views of 1x5; label 1 covers t=0..3 in both views, disparity 1
        let labels = vec![1, 1, 1, 2, 2, 1, 1, 1, 2, 2];
        let m = map(1, 2, 1, 5, labels.clone(), vec![1.0, 0.0]);
        let sr = &m.superrays()[0];
        let g = build_superray_graph(sr, &m);
        let mut expected = Vec::new();
        for t in 0..5usize {
            let target = t + 1;
            if labels[t] == 1 && target < 5 && labels[5 + target] == 1 {
                expected.push((sr.local_index(t).unwrap(), sr.local_index(5 + target).unwrap()));
            }
        }
        assert_eq!(expected.len(), 2);
        assert_eq!(g.angular_edges, expected);
    }

    #[test]
    fn combined_is_sum() {
        let labels: Vec<u32> = (0..4 * 3 * 3).map(|r| if (r % 9) % 3 < 2 { 1 } else { 2 }).collect();
        let m = map(2, 2, 3, 3, labels, vec![0.0, 0.0]);
        for sr in m.superrays() {
            let g = build_superray_graph(&sr, &m);
            let l = g.laplacian();
            assert_eq!(l, g.spatial_laplacian() + g.angular_laplacian());
            for i in 0..l.nrows() {
                assert_eq!(l.row(i).sum(), 0.0);
                for j in 0..l.ncols() {
                    assert_eq!(l[(i, j)], l[(j, i)]);
                    if i != j {
                        assert!(l[(i, j)] == 0.0 || l[(i, j)] == -1.0);
                    }
                }
            }
        }
    }
}
