//! Embedding of affine maps on ℂⁿ into `(n+1)×(n+1)` matrices,
//! `(A, a) ↦ [[1, 0], [a, A]]`, which turns composition into matrix
//! multiplication and identifies ℂⁿ with the chart `{1}×ℂⁿ`.

use crate::error::{Error, Result};
use crate::model::{AffineMap, ComplexMatrix, ComplexScalar, ComplexVector};

const ONE: ComplexScalar = ComplexScalar::new(1.0, 0.0);
const ZERO: ComplexScalar = ComplexScalar::new(0.0, 0.0);

/// A matrix whose first row is exactly `(1, 0, …, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogenizedMatrix(ComplexMatrix);

impl HomogenizedMatrix {
    /// Checks the first row exactly; no tolerance.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() < 2 {
            return Err(Error::NotAffineChart);
        }
        let row = matrix.row(0);
        if row[0] != ONE || row[1..].iter().any(|&z| z != ZERO) {
            return Err(Error::NotAffineChart);
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Order `n+1`.
    pub fn order(&self) -> usize {
        self.0.rows()
    }
}

pub fn homogenize(f: &AffineMap) -> HomogenizedMatrix {
    let n = f.dim();
    let mut m = ComplexMatrix::zeros(n + 1, n + 1);
    m[(0, 0)] = ONE;
    for i in 0..n {
        m[(i + 1, 0)] = f.translation()[i];
        for j in 0..n {
            m[(i + 1, j + 1)] = f.linear()[(i, j)];
        }
    }
    HomogenizedMatrix(m)
}

pub fn dehomogenize(m: &ComplexMatrix) -> Result<AffineMap> {
    let h = HomogenizedMatrix::new(m.clone())?;
    let n = h.order() - 1;
    let linear = h.0.submatrix(1, 1, n, n);
    let translation = h.0.submatrix(1, 0, n, 1).column(0);
    AffineMap::new(linear, translation)
}

/// `f ∘ g = (AB, Ab + a)`.
pub fn compose(f: &AffineMap, g: &AffineMap) -> Result<AffineMap> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim(), context: "compose" });
    }
    let linear = f.linear().mul(g.linear());
    let translation = f.linear().mul_vec(g.translation()).add(f.translation());
    AffineMap::new(linear, translation)
}

/// Inverse affine map `(A⁻¹, −A⁻¹a)`.
pub fn invert(f: &AffineMap) -> Result<AffineMap> {
    let inv = crate::linalg::inverse(f.linear())?;
    let t = inv.mul_vec(f.translation()).scale(-ONE);
    AffineMap::new(inv, t)
}

/// `(x₁, …, x_{n+1}) ↦ (x₂, …, x_{n+1})`.
pub fn second_projection(v: &ComplexVector) -> Result<ComplexVector> {
    if v.dim() < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: v.dim(), context: "second projection" });
    }
    Ok(ComplexVector::from_vec(v.entries()[1..].to_vec()))
}

/// `x ↦ (1, x)`.
pub fn lift(x: &ComplexVector) -> ComplexVector {
    let mut e = Vec::with_capacity(x.dim() + 1);
    e.push(ONE);
    e.extend_from_slice(x.entries());
    ComplexVector::from_vec(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn homogenize_scalar_map() {
        let f = AffineMap::scalar(c(2.0, 0.0), c(3.0, 0.0));
        let expected = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[3.0, 2.0]]).unwrap();
        assert_eq!(homogenize(&f).matrix(), &expected);
    }

    #[test]
    fn homogenize_identity() {
        assert_eq!(homogenize(&AffineMap::identity(2)).matrix(), &ComplexMatrix::identity(3));
    }

    #[test]
    fn homogenize_translation() {
        let f = AffineMap::translation_only(ComplexVector::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap());
        let expected = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(homogenize(&f).matrix(), &expected);
    }

    #[test]
    fn dehomogenize_examples() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[3.0, 2.0]]).unwrap();
        assert_eq!(dehomogenize(&m).unwrap(), AffineMap::scalar(c(2.0, 0.0), c(3.0, 0.0)));
        assert_eq!(dehomogenize(&ComplexMatrix::identity(3)).unwrap(), AffineMap::identity(2));
        let bad = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert_eq!(dehomogenize(&bad), Err(Error::NotAffineChart));
        let almost = ComplexMatrix::from_real_rows(&[&[1.0, 1e-300], &[0.0, 1.0]]).unwrap();
        assert_eq!(dehomogenize(&almost), Err(Error::NotAffineChart));
    }

    #[test]
    fn compose_scalar_maps() {
        let f = AffineMap::scalar(c(2.0, 0.0), c(3.0, 0.0));
        let g = AffineMap::scalar(c(5.0, 0.0), c(7.0, 0.0));
        assert_eq!(compose(&f, &g).unwrap(), AffineMap::scalar(c(10.0, 0.0), c(17.0, 0.0)));
        assert!(compose(&f, &AffineMap::identity(2)).is_err());
    }

    #[test]
    fn second_projection_examples() {
        let v = ComplexVector::new(vec![c(1.0, 0.0), c(5.0, 0.0), c(0.0, 7.0)]).unwrap();
        assert_eq!(second_projection(&v).unwrap().entries(), &[c(5.0, 0.0), c(0.0, 7.0)]);
        assert_eq!(second_projection(&ComplexVector::zeros(2)).unwrap(), ComplexVector::zeros(1));
        assert!(second_projection(&ComplexVector::zeros(1)).is_err());
        let w0 = ComplexVector::new(vec![c(0.5, -2.0), c(3.0, 1.0)]).unwrap();
        assert_eq!(second_projection(&lift(&w0)).unwrap(), w0);
    }

    #[test]
    fn commuting_maps_compose_both_ways() {
        // f = (A, a) and g = (A², A a + a) are both polynomials in Φ(f) fixing the chart.
        let a = ComplexMatrix::from_rows(&[vec![c(0.5, 0.1), c(0.2, 0.0)], vec![c(-0.3, 0.4), c(0.9, -0.2)]]).unwrap();
        let t = ComplexVector::new(vec![c(1.0, -1.0), c(0.25, 0.5)]).unwrap();
        let f = AffineMap::new(a, t).unwrap();
        let g = dehomogenize(&homogenize(&f).matrix().pow(2)).unwrap();
        let fg = compose(&f, &g).unwrap();
        let gf = compose(&g, &f).unwrap();
        let hf = homogenize(&f).into_matrix();
        let hg = homogenize(&g).into_matrix();
        // independent route: the matrix product of the homogenizations
        assert!(homogenize(&fg).matrix().distance(&hf.mul(&hg)) <= 1e-12);
        assert!(homogenize(&gf).matrix().distance(&hg.mul(&hf)) <= 1e-12);
        assert!(homogenize(&fg).matrix().distance(homogenize(&gf).matrix()) <= 1e-12);
    }

    fn scalar() -> impl Strategy<Value = ComplexScalar> {
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| ComplexScalar::new(re, im))
    }

    fn affine(n: usize) -> impl Strategy<Value = AffineMap> {
        (proptest::collection::vec(scalar(), n * n), proptest::collection::vec(scalar(), n)).prop_map(move |(a, t)| {
            AffineMap::new(ComplexMatrix::from_row_major(n, n, a).unwrap(), ComplexVector::new(t).unwrap()).unwrap()
        })
    }

    fn affine_with_point() -> impl Strategy<Value = (AffineMap, AffineMap, ComplexVector)> {
        (1usize..=3).prop_flat_map(|n| {
            (affine(n), affine(n), proptest::collection::vec(scalar(), n))
                .prop_map(|(f, g, x)| (f, g, ComplexVector::new(x).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn round_trip_is_exact((f, _, _) in affine_with_point()) {
            prop_assert_eq!(dehomogenize(homogenize(&f).matrix()).unwrap(), f);
        }

        #[test]
        fn homomorphism((f, g, _) in affine_with_point()) {
            let lhs = homogenize(&compose(&f, &g).unwrap()).into_matrix();
            let rhs = homogenize(&f).matrix().mul(homogenize(&g).matrix());
            prop_assert!(lhs.distance(&rhs) <= 1e-12);
        }

        #[test]
        fn chart_is_preserved((f, _, x) in affine_with_point()) {
            let image = homogenize(&f).matrix().mul_vec(&lift(&x));
            prop_assert_eq!(image[0], c(1.0, 0.0));
            prop_assert!(image.distance(&lift(&f.apply(&x))) <= 1e-12);
        }
    }
}
