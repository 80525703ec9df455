//! Uniqueness-set selection per super-ray and wrapping of the selected samples
//! into one reference image.
//!
//! The greedy selection grows the sampling set one vertex at a time. With
//! `m - 1` vertices chosen, the `(m-1) x m` block `U(S, 1..m)` has a
//! one-dimensional kernel `z`; the next vertex is the unselected one whose
//! row-normalized `U(v, 1..m)` has the largest projection on `z`, which keeps
//! `U(S, 1..m)` invertible and well conditioned.

use nalgebra::{DMatrix, DVector, SVD};

use crate::error::{Error, Result};
use crate::graph::{EigenBasis, SuperRayGraph};
use crate::lightfield::Dims;
use crate::segmentation::SuperRay;

const ROW_EPS: f64 = 1e-12;
const KERNEL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingSet {
    /// Selected local vertices in selection order; `selected.len()` is the
    /// band size `n_k`.
    pub selected: Vec<usize>,
    /// Remaining vertices, ascending.
    pub complement: Vec<usize>,
    /// 2-norm condition number of `U(S, 1..n_k)`.
    pub condition: f64,
    /// Iterations where the kernel was not one-dimensional.
    pub warnings: usize,
}

impl SamplingSet {
    pub fn band(&self) -> usize {
        self.selected.len()
    }

    fn from_selected(basis: &EigenBasis, selected: Vec<usize>, warnings: usize) -> Self {
        let mut in_set = vec![false; basis.len()];
        for &v in &selected {
            in_set[v] = true;
        }
        let complement = (0..basis.len()).filter(|&v| !in_set[v]).collect();
        let condition = condition_number(basis, &selected);
        SamplingSet {
            selected,
            complement,
            condition,
            warnings,
        }
    }
}

/// 2-norm condition number of `U(rows, 1..rows.len())`; infinite when singular.
pub fn condition_number(basis: &EigenBasis, rows: &[usize]) -> f64 {
    let n = rows.len();
    if n == 0 {
        return 1.0;
    }
    let sub = DMatrix::from_fn(n, n, |r, c| basis.vectors[(rows[r], c)]);
    let sv = SVD::new(sub, false, false).singular_values;
    let max = sv.max();
    let min = sv.min();
    if min <= 0.0 || max / min > 1e300 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Reference-view pixel of the super-ray closest to the mean position of its
/// reference super-pixel (ties: raster order). Returns a local vertex index.
pub fn centroid_seed(superray: &SuperRay, dims: Dims) -> usize {
    let refs = &superray.rays[..superray.reference_len];
    let (mut ms, mut mt) = (0.0, 0.0);
    for &r in refs {
        ms += (r / dims.width) as f64;
        mt += (r % dims.width) as f64;
    }
    let cnt = refs.len() as f64;
    let (ms, mt) = (ms / cnt, mt / cnt);
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, &r) in refs.iter().enumerate() {
        let ds = (r / dims.width) as f64 - ms;
        let dt = (r % dims.width) as f64 - mt;
        let d = ds * ds + dt * dt;
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Kernel vector of a `(m-1) x m` matrix and whether the kernel was
/// degenerate (dimension above one).
fn kernel_vector(a: &DMatrix<f64>) -> (DVector<f64>, bool) {
    let m = a.ncols();
    let mut padded = DMatrix::zeros(m, m);
    padded.rows_mut(0, a.nrows()).copy_from(a);
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma = &svd.singular_values;
    let tol = KERNEL_TOL * sigma[0].max(f64::MIN_POSITIVE);
    let kernel: Vec<usize> = (0..m).filter(|&i| sigma[i] <= tol).collect();
    let pick = kernel.first().copied().unwrap_or(m - 1);
    (v_t.row(pick).transpose(), kernel.len() > 1)
}

/// Greedy uniqueness-set selection of `n_k` vertices starting from `seed`.
pub fn select_sampling_set(basis: &EigenBasis, n_k: usize, seed: usize) -> Result<SamplingSet> {
    let n = basis.len();
    if n_k == 0 || n_k > n {
        return Err(Error::InvalidArgument(format!(
            "sampling set size {n_k} for {n} vertices"
        )));
    }
    if seed >= n {
        return Err(Error::InvalidArgument(format!("seed vertex {seed} out of {n}")));
    }
    let u = &basis.vectors;
    let mut selected = vec![seed];
    let mut in_set = vec![false; n];
    in_set[seed] = true;
    let mut warnings = 0;

    for m in 2..=n_k {
        let a = DMatrix::from_fn(m - 1, m, |r, c| u[(selected[r], c)]);
        let (z, degenerate) = kernel_vector(&a);
        if degenerate {
            warnings += 1;
        }
        let mut best: Option<(usize, f64)> = None;
        for v in (0..n).filter(|&v| !in_set[v]) {
            let row = u.view((v, 0), (1, m));
            let norm = row.norm();
            if norm < ROW_EPS {
                continue;
            }
            let score = (row.dot(&z.transpose()) / norm).abs();
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((v, score));
            }
        }
        let next = match best {
            Some((v, _)) => v,
            None => {
                warnings += 1;
                (0..n).find(|&v| !in_set[v]).expect("n_k <= n")
            }
        };
        selected.push(next);
        in_set[next] = true;
    }
    Ok(SamplingSet::from_selected(basis, selected, warnings))
}

/// The reference-view pixels themselves, `S = {0, .., n_k - 1}`.
pub fn naive_sampling_set(basis: &EigenBasis, n_k: usize) -> SamplingSet {
    SamplingSet::from_selected(basis, (0..n_k).collect(), 0)
}

/// Reachability through angular edges between reference-view pixels
/// (`0..reference_len`) and all vertices of a super-ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceMatrix {
    component: Vec<usize>,
    reference_len: usize,
    /// Reference pixels of each angular component, ascending.
    members: Vec<Vec<usize>>,
}

impl CorrespondenceMatrix {
    /// `E(p_ref, p)`.
    pub fn get(&self, p_ref: usize, p: usize) -> bool {
        p_ref < self.reference_len && self.component[p_ref] == self.component[p]
    }

    pub fn row(&self, p_ref: usize) -> Vec<usize> {
        (0..self.component.len()).filter(|&p| self.get(p_ref, p)).collect()
    }

    /// Reference pixels reachable from `p`, ascending.
    pub fn sources(&self, p: usize) -> &[usize] {
        &self.members[self.component[p]]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.reference_len, self.component.len())
    }
}

pub fn build_correspondence(graph: &SuperRayGraph, reference_len: usize) -> CorrespondenceMatrix {
    let n = graph.len();
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in &graph.angular_edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut component = vec![usize::MAX; n];
    let mut members = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        component[start] = id;
        let mut stack = vec![start];
        let mut refs = Vec::new();
        while let Some(p) = stack.pop() {
            if p < reference_len {
                refs.push(p);
            }
            for &q in &adj[p] {
                if component[q] == usize::MAX {
                    component[q] = id;
                    stack.push(q);
                }
            }
        }
        refs.sort_unstable();
        members.push(refs);
    }
    CorrespondenceMatrix {
        component,
        reference_len,
        members,
    }
}

/// Reference-view local index of every sample, in sampling order.
///
/// Samples are visited in selection order; each goes to the first free
/// reference pixel it corresponds to, otherwise it is queued. Queued samples
/// then fill the remaining reference pixels in raster order.
pub fn place_samples(set: &SamplingSet, corr: &CorrespondenceMatrix) -> Vec<usize> {
    let reference_len = corr.reference_len;
    let mut placement = vec![usize::MAX; set.band()];
    let mut taken = vec![false; reference_len];
    let mut queue = Vec::new();
    for (i, &p) in set.selected.iter().enumerate() {
        match corr.sources(p).iter().copied().find(|&p0| !taken[p0]) {
            Some(p0) => {
                placement[i] = p0;
                taken[p0] = true;
            }
            None => queue.push(i),
        }
    }
    let mut free = (0..reference_len).filter(|&p0| !taken[p0]);
    for i in queue {
        placement[i] = free.next().expect("band size equals reference region size");
    }
    placement
}

/// Samples of all super-rays wrapped into the top-left view's raster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceImage {
    pub height: usize,
    pub width: usize,
    pub pixels: Vec<u16>,
}

/// Writes `rays[superray.rays[selected[i]]]` at reference pixel
/// `superray.rays[placement[i]]` for every super-ray.
pub fn project_samples_to_reference(
    dims: Dims,
    superrays: &[SuperRay],
    sets: &[SamplingSet],
    placements: &[Vec<usize>],
    rays: &[u16],
) -> ReferenceImage {
    let mut pixels = vec![0u16; dims.view_len()];
    for ((sr, set), placement) in superrays.iter().zip(sets).zip(placements) {
        for (&v, &p0) in set.selected.iter().zip(placement) {
            pixels[sr.rays[p0]] = rays[sr.rays[v]];
        }
    }
    ReferenceImage {
        height: dims.height,
        width: dims.width,
        pixels,
    }
}

/// Inverse of the placement: the sample values `x(S)` of one super-ray.
pub fn gather_samples(superray: &SuperRay, placement: &[usize], reference: &[u16]) -> Vec<f64> {
    placement
        .iter()
        .map(|&p0| reference[superray.rays[p0]] as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{eigendecompose, laplacian};

    fn path(n: usize) -> EigenBasis {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        eigendecompose(&laplacian(n, &edges)).unwrap()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn single_sample_is_the_seed() {
        let s = select_sampling_set(&path(4), 1, 2).unwrap();
        assert_eq!(s.selected, vec![2]);
        assert_eq!(s.complement, vec![0, 1, 3]);
    }

    #[test]
    fn two_node_angular_graph() {
        let b = eigendecompose(&laplacian(2, &[(0, 1)])).unwrap();
        let s = select_sampling_set(&b, 1, 0).unwrap();
        assert_eq!(s.selected, vec![0]);
        assert!((b.vectors[(0, 0)] - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((s.condition - 1.0).abs() < 1e-12);
    }

    #[test]
    fn path_of_five_beats_naive_choice() {
        let b = path(5);
        let s = select_sampling_set(&b, 3, 0).unwrap();
        let naive = condition_number(&b, &[0, 1, 2]);
        assert!(s.condition <= naive, "{} > {naive}", s.condition);
        let best = subsets(5, 3)
            .iter()
            .map(|sub| condition_number(&b, sub))
            .fold(f64::INFINITY, f64::min);
        assert!(s.condition >= best - 1e-12);
        assert!(s.condition <= 10.0 * best);
    }

    #[test]
    fn selected_block_is_invertible() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 6), (6, 7), (7, 4)];
        let b = eigendecompose(&laplacian(8, &edges)).unwrap();
        for n_k in 1..=8 {
            let s = select_sampling_set(&b, n_k, 0).unwrap();
            assert!(
                s.condition.is_finite() && s.condition < 1e8,
                "n_k={n_k}: {}",
                s.condition
            );
            assert_eq!(s.selected.len() + s.complement.len(), 8);
        }
    }

    #[test]
    fn disconnected_component_without_reference_pixel() {
        // vertices 0,1 reference view; 2,3 an angularly unreachable component
        let b = eigendecompose(&laplacian(4, &[(0, 1), (2, 3)])).unwrap();
        assert!(naive_sampling_set(&b, 2).condition.is_infinite());
        let s = select_sampling_set(&b, 2, 0).unwrap();
        assert!(s.condition.is_finite());
        assert!(s.selected[1] >= 2);
    }

    fn graph(n: usize, angular: &[(usize, usize)]) -> SuperRayGraph {
        SuperRayGraph {
            vertices: (0..n).collect(),
            spatial_edges: Vec::new(),
            angular_edges: angular.to_vec(),
        }
    }

    fn bfs_reach(n: usize, edges: &[(usize, usize)], from: usize) -> Vec<usize> {
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut frontier = vec![from];
        while let Some(p) = frontier.pop() {
            for &(a, b) in edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == p && !seen[y] {
                        seen[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }

    #[test]
    fn correspondence_without_angular_edges_is_identity() {
        let e = build_correspondence(&graph(5, &[]), 2);
        assert_eq!(e.shape(), (2, 5));
        assert_eq!(e.row(0), vec![0]);
        assert_eq!(e.row(1), vec![1]);
    }

    #[test]
    fn correspondence_chain_through_four_views() {
        // reference pixels 0,1; chain 0-2-4-6 across views, 1 isolated
        let edges = [(0, 2), (2, 4), (4, 6), (3, 5)];
        let e = build_correspondence(&graph(7, &edges), 2);
        assert_eq!(e.row(0), bfs_reach(7, &edges, 0));
        assert_eq!(e.row(0).len(), 4);
        assert_eq!(e.row(1), vec![1]);
    }

    #[test]
    fn correspondence_shared_component() {
        let edges = [(0, 2), (1, 2), (2, 3)];
        let e = build_correspondence(&graph(4, &edges), 2);
        assert_eq!(e.row(0), e.row(1));
        assert_eq!(e.row(0), bfs_reach(4, &edges, 1));
    }

    fn set(selected: Vec<usize>) -> SamplingSet {
        SamplingSet {
            selected,
            complement: Vec::new(),
            condition: 1.0,
            warnings: 0,
        }
    }

    #[test]
    fn placement_identity_for_reference_samples() {
        let e = build_correspondence(&graph(6, &[(0, 3), (1, 4)]), 3);
        assert_eq!(place_samples(&set(vec![2, 0, 1]), &e), vec![2, 0, 1]);
    }

    #[test]
    fn placement_collision_goes_to_next_free_raster_pixel() {
        // samples 3 and 4 both correspond to reference pixel 1
        let e = build_correspondence(&graph(5, &[(1, 3), (3, 4)]), 3);
        assert_eq!(place_samples(&set(vec![3, 4, 2]), &e), vec![1, 0, 2]);
    }
}
