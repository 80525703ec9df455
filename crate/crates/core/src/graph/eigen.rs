use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Identifier of the eigensolver recorded in bitstream headers. Encoder and
/// decoder must agree on it, since degenerate eigenspaces are not
/// canonicalized.
pub const EIGENSOLVER_ID: u8 = 1;

const ZERO_SNAP: f64 = 1e-12;
const SIGN_EPS: f64 = 1e-8;

/// Orthonormal Laplacian eigenvectors as columns, ascending eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenBasis {
    pub vectors: DMatrix<f64>,
    pub values: Vec<f64>,
}

impl EigenBasis {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn identity(n: usize) -> Self {
        EigenBasis {
            vectors: DMatrix::identity(n, n),
            values: vec![0.0; n],
        }
    }
}

/// Connected components of the graph whose adjacency is the off-diagonal
/// support of `l`; each component lists its vertices ascending, components
/// ordered by their smallest vertex.
pub fn components(l: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = l.nrows();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[start] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if j != i && l[(i, j)] != 0.0 && comp[j] == usize::MAX {
                    comp[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn dense_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    if n == 1 {
        return (vec![m[(0, 0)]], DMatrix::from_element(1, 1, 1.0));
    }
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigendecomposition of a symmetric positive semi-definite Laplacian.
///
/// Each connected component is decomposed on its own and the eigenpairs are
/// merged in ascending eigenvalue order (ties: component order, then local
/// order). Eigenvalues within `1e-12` of zero are snapped to zero. In every
/// column the first entry larger than `1e-8` in magnitude is positive.
pub fn eigendecompose(l: &DMatrix<f64>) -> Result<EigenBasis> {
    let n = l.nrows();
    if l.ncols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} Laplacian", n, l.ncols())));
    }
    if n == 0 {
        return Ok(EigenBasis {
            vectors: DMatrix::zeros(0, 0),
            values: Vec::new(),
        });
    }
    let scale = l.amax().max(1.0);
    let asym = (l - l.transpose()).amax();
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }

    let comps = components(l);
    let mut pairs: Vec<(f64, usize, usize, DVector<f64>)> = Vec::with_capacity(n);
    for (ci, members) in comps.iter().enumerate() {
        let sub = DMatrix::from_fn(members.len(), members.len(), |r, c| l[(members[r], members[c])]);
        let (values, vectors) = dense_eigen(sub);
        for (li, value) in values.into_iter().enumerate() {
            let mut full = DVector::zeros(n);
            for (r, &vtx) in members.iter().enumerate() {
                full[vtx] = vectors[(r, li)];
            }
            let value = if value.abs() < ZERO_SNAP { 0.0 } else { value };
            pairs.push((value, ci, li, full));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut vectors = DMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (c, (value, _, _, mut v)) in pairs.into_iter().enumerate() {
        if let Some(first) = v.iter().find(|x| x.abs() > SIGN_EPS) {
            if *first < 0.0 {
                v.neg_mut();
            }
        }
        vectors.set_column(c, &v);
        values.push(value);
    }
    Ok(EigenBasis { vectors, values })
}

pub fn gft_forward(basis: &EigenBasis, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != basis.len() {
        return Err(Error::LengthMismatch {
            expected: basis.len(),
            actual: x.len(),
        });
    }
    let x = DVector::from_column_slice(x);
    Ok(basis.vectors.tr_mul(&x).as_slice().to_vec())
}

pub fn gft_inverse(basis: &EigenBasis, coeffs: &[f64]) -> Result<Vec<f64>> {
    if coeffs.len() != basis.len() {
        return Err(Error::LengthMismatch {
            expected: basis.len(),
            actual: coeffs.len(),
        });
    }
    let c = DVector::from_column_slice(coeffs);
    Ok((&basis.vectors * c).as_slice().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build::laplacian;

    #[test]
    fn path_graph_spectrum() {
        let b = eigendecompose(&laplacian(3, &[(0, 1), (1, 2)])).unwrap();
        let expected: Vec<f64> = (0..3)
            .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / 3.0).cos())
            .collect();
        for (a, e) in b.values.iter().zip(&expected) {
            assert!((a - e).abs() < 1e-12, "{a} vs {e}");
        }
        assert!((expected[1] - 1.0).abs() < 1e-12 && (expected[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_vertex() {
        let b = eigendecompose(&DMatrix::zeros(1, 1)).unwrap();
        assert_eq!(b.vectors, DMatrix::from_element(1, 1, 1.0));
        assert_eq!(b.values, vec![0.0]);
    }

    #[test]
    fn complete_graph_k4() {
        let edges: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let b = eigendecompose(&laplacian(4, &edges)).unwrap();
        for (a, e) in b.values.iter().zip([0.0, 4.0, 4.0, 4.0]) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let mut l = laplacian(3, &[(0, 1), (1, 2)]);
        l[(0, 2)] = 0.5;
        assert!(matches!(eigendecompose(&l), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn sign_convention_and_dc() {
        let b = eigendecompose(&laplacian(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])).unwrap();
        assert_eq!(b.values[0], 0.0);
        assert!(b.vectors.column(0).iter().all(|&x| x > 0.0));
        for c in 0..5 {
            let first = b
                .vectors
                .column(c)
                .iter()
                .copied()
                .find(|x| x.abs() > SIGN_EPS)
                .unwrap();
            assert!(first > 0.0);
        }
    }

    #[test]
    fn disconnected_graph_keeps_one_dc_per_component() {
        let b = eigendecompose(&laplacian(5, &[(0, 1), (2, 3), (3, 4)])).unwrap();
        assert_eq!(&b.values[..2], &[0.0, 0.0]);
        let d0 = 1.0 / 2f64.sqrt();
        let d1 = 1.0 / 3f64.sqrt();
        assert!((b.vectors[(0, 0)] - d0).abs() < 1e-12 && b.vectors[(2, 0)] == 0.0);
        assert!((b.vectors[(4, 1)] - d1).abs() < 1e-12 && b.vectors[(0, 1)] == 0.0);
        let orth = b.vectors.tr_mul(&b.vectors) - DMatrix::identity(5, 5);
        assert!(orth.amax() < 1e-12);
    }

    #[test]
    fn constant_signal_is_pure_dc() {
        let b = eigendecompose(&laplacian(4, &[(0, 1), (1, 2), (2, 3)])).unwrap();
        let c = gft_forward(&b, &[3.0; 4]).unwrap();
        assert!((c[0] - 3.0 * 2.0).abs() < 1e-12);
        assert!(c[1..].iter().all(|x| x.abs() < 1e-12));
        assert_eq!(gft_forward(&b, &[0.0; 4]).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn parseval_on_five_nodes() {
        let b = eigendecompose(&laplacian(5, &[(0, 1), (1, 2), (1, 3), (3, 4)])).unwrap();
        let x = [0.3, -1.7, 2.2, 5.0, -0.4];
        let c = gft_forward(&b, &x).unwrap();
        let ex: f64 = x.iter().map(|v| v * v).sum();
        let ec: f64 = c.iter().map(|v| v * v).sum();
        assert!((ex - ec).abs() < 1e-9 * ex);
        let back = gft_inverse(&b, &c).unwrap();
        for (a, e) in back.iter().zip(&x) {
            assert!((a - e).abs() < 1e-12);
        }
        assert!(gft_forward(&b, &x[..4]).is_err());
    }

    #[test]
    fn deterministic() {
        let edges: Vec<_> = (0..6)
            .flat_map(|i| (i + 1..6).filter(move |j| (i + j) % 3 != 0).map(move |j| (i, j)))
            .collect();
        let l = laplacian(6, &edges);
        assert_eq!(eigendecompose(&l).unwrap(), eigendecompose(&l).unwrap());
    }
}
