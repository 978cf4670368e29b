//! Thin numerical kernels over `nalgebra`: spectra, singular values, null
//! spaces and inverses of the small dense matrices used by the normal form.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::{ComplexMatrix, ComplexScalar, ComplexVector};

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;

pub(crate) fn to_na(m: &ComplexMatrix) -> DMatrix<ComplexScalar> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

pub(crate) fn from_na(m: &DMatrix<ComplexScalar>) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(i, j)] = m[(i, j)];
        }
    }
    out
}

/// Eigenvalues (with multiplicity) from a complex Schur form.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<ComplexScalar>> {
    assert!(m.is_square());
    if m.rows() == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let scale = m.max_norm();
    if scale == 0.0 {
        return Ok(vec![ComplexScalar::new(0.0, 0.0); m.rows()]);
    }
    // the QR sweep occasionally stalls on exactly structured input; retry on shifted copies
    for shift in [0.0, 0.5, -0.75, 1.25] {
        let sigma = ComplexScalar::new(shift * scale, 0.0);
        if let Some(schur) = nalgebra::linalg::Schur::try_new(to_na(&m.shift(sigma)), SCHUR_EPS, SCHUR_MAX_ITER) {
            let (_, t) = schur.unpack();
            return Ok((0..t.nrows()).map(|i| t[(i, i)] + sigma).collect());
        }
    }
    Err(Error::NormalFormFailure { reason: "Schur iteration did not converge".into(), residual: f64::NAN })
}

/// Singular values sorted in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_na(m).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn smallest_singular_value(m: &ComplexMatrix) -> f64 {
    let s = singular_values(m);
    if m.rows() < m.cols() {
        0.0
    } else {
        s.last().copied().unwrap_or(0.0)
    }
}

/// Orthonormal basis of `{x : m·x = 0}`, where singular values at or below
/// `rel_tol · max(1, σ_max)` count as zero.
pub fn null_space(m: &ComplexMatrix, rel_tol: f64) -> Vec<ComplexVector> {
    let cols = m.cols();
    let mut a = to_na(m);
    if a.nrows() < cols {
        a = a.resize_vertically(cols, ComplexScalar::new(0.0, 0.0));
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    let threshold = rel_tol * sigma_max.max(1.0);
    let mut null: Vec<(f64, ComplexVector)> = (0..sigma.len())
        .filter(|&i| sigma[i] <= threshold)
        .map(|i| {
            let v = (0..cols).map(|j| v_t[(i, j)].conj()).collect();
            (sigma[i], ComplexVector::from_vec(v))
        })
        .collect();
    null.sort_by(|a, b| a.0.total_cmp(&b.0));
    null.into_iter().map(|(_, v)| v).collect()
}

pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    assert!(m.is_square());
    to_na(m)
        .try_inverse()
        .map(|inv| from_na(&inv))
        .ok_or_else(|| Error::NormalFormFailure { reason: "singular matrix".into(), residual: f64::INFINITY })
}

/// Hermitian inner product `⟨u, v⟩ = Σ conj(u_i) v_i`.
pub fn inner(u: &ComplexVector, v: &ComplexVector) -> ComplexScalar {
    u.entries().iter().zip(v.entries()).map(|(a, b)| a.conj() * b).sum()
}

/// Orthonormal basis of the span of `vectors` (modified Gram–Schmidt, with
/// re-orthogonalisation); vectors whose residual falls below `tol` are dropped.
pub fn orthonormalize(vectors: &[ComplexVector], tol: f64) -> Vec<ComplexVector> {
    let mut basis: Vec<ComplexVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                w = w.sub(&q.scale(inner(q, &w)));
            }
        }
        let norm = w.euclidean_norm();
        if norm > tol {
            basis.push(w.scale(ComplexScalar::new(1.0 / norm, 0.0)));
        }
    }
    basis
}

/// Orthogonal projection of `v` onto the span of the orthonormal `basis`.
pub fn project(basis: &[ComplexVector], v: &ComplexVector) -> ComplexVector {
    basis.iter().fold(ComplexVector::zeros(v.dim()), |acc, q| acc.add(&q.scale(inner(q, v))))
}
