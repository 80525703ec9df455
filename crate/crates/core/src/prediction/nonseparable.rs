use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::EigenBasis;

/// Recovers the `n_k = selected.len()` lowest-frequency coefficients from the
/// samples `x(S)` and the high-frequency coefficients `x̂(T_c)`:
/// `x̂(T) = U(S,T)^-1 (x(S) - U(S,T_c) x̂(T_c))`.
pub fn predict_low_frequencies(
    basis: &EigenBasis,
    selected: &[usize],
    samples: &[f64],
    high: &[f64],
) -> Result<Vec<f64>> {
    let n = basis.len();
    let band = selected.len();
    if samples.len() != band {
        return Err(Error::LengthMismatch {
            expected: band,
            actual: samples.len(),
        });
    }
    if high.len() + band != n {
        return Err(Error::LengthMismatch {
            expected: n - band,
            actual: high.len(),
        });
    }
    let u = &basis.vectors;
    let mut rhs = DVector::from_column_slice(samples);
    for (r, &v) in selected.iter().enumerate() {
        let mut acc = 0.0;
        for (j, h) in high.iter().enumerate() {
            acc += u[(v, band + j)] * h;
        }
        rhs[r] -= acc;
    }
    let block = DMatrix::from_fn(band, band, |r, c| u[(selected[r], c)]);
    let singular = || Error::SingularSampling {
        label: 0,
        cond: f64::INFINITY,
    };
    let lu = block.lu();
    if !lu.is_invertible() {
        return Err(singular());
    }
    let low = lu.solve(&rhs).ok_or_else(singular)?;
    if low.iter().any(|x| !x.is_finite()) {
        return Err(singular());
    }
    Ok(low.as_slice().to_vec())
}

/// `x(S_c) = U(S_c,T) x̂(T) + U(S_c,T_c) x̂(T_c)`, in `complement` order.
pub fn reconstruct_complement(basis: &EigenBasis, complement: &[usize], low: &[f64], high: &[f64]) -> Vec<f64> {
    let u = &basis.vectors;
    let band = low.len();
    complement
        .iter()
        .map(|&v| {
            let mut acc = 0.0;
            for (j, c) in low.iter().enumerate() {
                acc += u[(v, j)] * c;
            }
            for (j, c) in high.iter().enumerate() {
                acc += u[(v, band + j)] * c;
            }
            acc
        })
        .collect()
}
