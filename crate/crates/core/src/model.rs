//! Value types shared by every other module: complex vectors and matrices,
//! affine maps `x ↦ Ax + a`, generator sets and exponent words.
//!
//! All norms in this crate are max-norms taken over real and imaginary parts
//! separately, so tolerances are coordinate-wise.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homogenize::homogenize;

pub type ComplexScalar = Complex64;

pub const DEFAULT_COMMUTATION_TOLERANCE: f64 = 1e-9;

/// `max(|re|, |im|)`.
#[inline]
pub fn scalar_max_norm(z: ComplexScalar) -> f64 {
    z.re.abs().max(z.im.abs())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexVector {
    entries: Vec<ComplexScalar>,
}

impl ComplexVector {
    pub fn new(entries: Vec<ComplexScalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("vector must have positive dimension".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Self { entries })
    }

    /// Builds without the finiteness check; used for intermediate results.
    pub(crate) fn from_vec(entries: Vec<ComplexScalar>) -> Self {
        debug_assert!(!entries.is_empty());
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_vec(vec![ComplexScalar::new(0.0, 0.0); dim])
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::from_vec(values.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<ComplexScalar> {
        self.entries
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, &z| m.max(scalar_max_norm(z)))
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::from_vec(self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::from_vec(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self::from_vec(self.entries.iter().map(|z| z * s).collect())
    }

    /// Max-norm distance.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.entries.iter().zip(&other.entries).fold(0.0, |m, (a, b)| m.max(scalar_max_norm(a - b)))
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<usize> for ComplexVector {
    type Output = ComplexScalar;
    fn index(&self, i: usize) -> &ComplexScalar {
        &self.entries[i]
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<ComplexScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix must have positive shape".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
                context: "matrix entries",
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds from nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<ComplexScalar>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len(), context: "matrix row length" });
        }
        Self::from_row_major(r, c, rows.concat())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<ComplexScalar>> =
            rows.iter().map(|r| r.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![ComplexScalar::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ComplexScalar::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(diag: &[ComplexScalar]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[ComplexScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::from_vec((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<ComplexScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, ComplexVector::dim);
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.dim(), context: "column" });
            }
            for i in 0..rows {
                m[(i, j)] = c[i];
            }
        }
        Ok(m)
    }

    /// Row-by-column product, accumulated left to right.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ComplexScalar::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self[(i, k)] * other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimensions differ");
        ComplexVector::from_vec(
            (0..self.rows)
                .map(|i| {
                    let mut acc = ComplexScalar::new(0.0, 0.0);
                    for (a, x) in self.row(i).iter().zip(v.entries()) {
                        acc += a * x;
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|z| z * s).collect() }
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: ComplexScalar) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= lambda;
        }
        m
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, &z| m.max(scalar_max_norm(z)))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_norm()
    }

    /// `‖AB − BA‖_max`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        self.mul(other).sub(&other.mul(self)).max_norm()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        out
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = ComplexScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        &mut self.entries[i * self.cols + j]
    }
}

/// `x ↦ linear·x + translation` on ℂⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    linear: ComplexMatrix,
    translation: ComplexVector,
}

impl AffineMap {
    pub fn new(linear: ComplexMatrix, translation: ComplexVector) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::DimensionMismatch {
                expected: linear.rows(),
                found: linear.cols(),
                context: "linear part must be square",
            });
        }
        if linear.rows() != translation.dim() {
            return Err(Error::DimensionMismatch {
                expected: linear.rows(),
                found: translation.dim(),
                context: "translation length",
            });
        }
        Ok(Self { linear, translation })
    }

    pub fn identity(n: usize) -> Self {
        Self { linear: ComplexMatrix::identity(n), translation: ComplexVector::zeros(n) }
    }

    pub fn linear_only(linear: ComplexMatrix) -> Result<Self> {
        let n = linear.rows();
        Self::new(linear, ComplexVector::zeros(n))
    }

    pub fn translation_only(translation: ComplexVector) -> Self {
        Self { linear: ComplexMatrix::identity(translation.dim()), translation }
    }

    /// Scalar map `x ↦ a·x + b` on ℂ.
    pub fn scalar(a: ComplexScalar, b: ComplexScalar) -> Self {
        Self { linear: ComplexMatrix::diagonal(&[a]), translation: ComplexVector::from_vec(vec![b]) }
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn linear(&self) -> &ComplexMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &ComplexVector {
        &self.translation
    }

    pub fn apply(&self, x: &ComplexVector) -> ComplexVector {
        self.linear.mul_vec(x).add(&self.translation)
    }

    pub fn is_invertible_linear(&self) -> bool {
        crate::linalg::smallest_singular_value(&self.linear) > 0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub abelian: bool,
    pub worst_commutator: f64,
    /// Indices of the pair attaining the worst commutator, smaller index first.
    pub worst_pair: Option<(usize, usize)>,
    pub tolerance: f64,
}

/// Generators `f₁,…,f_p` of an abelian semigroup on ℂⁿ.
///
/// Construction only checks shapes; commutation is checked by
/// [`GeneratorSet::validate`] / [`GeneratorSet::ensure_abelian`].
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    dimension: usize,
    generators: Vec<AffineMap>,
    commutation_tolerance: f64,
}

impl GeneratorSet {
    pub fn new(generators: Vec<AffineMap>) -> Result<Self> {
        Self::with_tolerance(generators, DEFAULT_COMMUTATION_TOLERANCE)
    }

    pub fn with_tolerance(generators: Vec<AffineMap>, commutation_tolerance: f64) -> Result<Self> {
        let first =
            generators.first().ok_or_else(|| Error::InvalidArgument("at least one generator is required".into()))?;
        let dimension = first.dim();
        if let Some(bad) = generators.iter().find(|g| g.dim() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: bad.dim(),
                context: "generator dimension",
            });
        }
        if !(commutation_tolerance >= 0.0) {
            return Err(Error::InvalidArgument("commutation tolerance must be nonnegative".into()));
        }
        Ok(Self { dimension, generators, commutation_tolerance })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[AffineMap] {
        &self.generators
    }

    pub fn commutation_tolerance(&self) -> f64 {
        self.commutation_tolerance
    }

    pub fn homogenized(&self) -> Vec<ComplexMatrix> {
        self.generators.iter().map(|g| homogenize(g).into_matrix()).collect()
    }

    /// Worst pairwise commutator of the homogenized generators against `tol`.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let mats = self.homogenized();
        let mut worst = 0.0;
        let mut worst_pair = None;
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let c = mats[i].commutator_norm(&mats[j]);
                if worst_pair.is_none() || c > worst {
                    worst = c;
                    worst_pair = Some((i, j));
                }
            }
        }
        ValidationReport { abelian: worst <= tol, worst_commutator: worst, worst_pair, tolerance: tol }
    }

    pub fn ensure_abelian(&self) -> Result<()> {
        let report = self.validate(self.commutation_tolerance);
        if report.abelian {
            Ok(())
        } else {
            Err(Error::NotAbelian {
                worst: report.worst_commutator,
                tolerance: report.tolerance,
                pair: report.worst_pair.unwrap_or((0, 0)),
            })
        }
    }

    /// Same generators in a different order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: order.len(),
                context: "permutation length",
            });
        }
        let gens = order.iter().map(|&i| self.generators[i].clone()).collect();
        Self::with_tolerance(gens, self.commutation_tolerance)
    }
}

/// Exponent tuple `(k⁽¹⁾,…,k⁽ᵖ⁾)` naming `f₁^{k⁽¹⁾}∘…∘f_p^{k⁽ᵖ⁾}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    exponents: Vec<u32>,
}

impl Word {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn identity(p: usize) -> Self {
        Self { exponents: vec![0; p] }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&k| u64::from(k)).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Graded-lexicographic stream of all words of degree `≤ max_degree` in `p`
/// letters: degree ascending, lexicographically ascending within a degree.
#[derive(Clone, Debug)]
pub struct WordOrder {
    max_degree: u32,
    degree: u32,
    current: Option<Vec<u32>>,
}

pub fn word_order_enumerate(p: usize, max_degree: u32) -> WordOrder {
    assert!(p >= 1, "a word needs at least one letter");
    WordOrder { max_degree, degree: 0, current: Some(vec![0; p]) }
}

/// Number of words of degree `≤ max_degree` in `p` letters, `C(max_degree+p, p)`.
pub fn word_count(p: usize, max_degree: u32) -> u128 {
    let n = u128::from(max_degree) + p as u128;
    let k = p as u128;
    (1..=k).fold(1u128, |acc, i| acc * (n - k + i) / i)
}

impl Iterator for WordOrder {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.current.take()?;
        let out = Word::new(current.clone());
        self.current = successor(current, self.degree).or_else(|| {
            if self.degree == self.max_degree {
                None
            } else {
                self.degree += 1;
                let mut first = vec![0; out.len()];
                *first.last_mut().expect("p >= 1") = self.degree;
                Some(first)
            }
        });
        Some(out)
    }
}

/// Lexicographic successor among tuples with the same sum.
fn successor(mut t: Vec<u32>, degree: u32) -> Option<Vec<u32>> {
    let p = t.len();
    if p < 2 || t[0] == degree {
        return None;
    }
    let mut tail = 0;
    for i in (0..p - 1).rev() {
        tail += t[i + 1];
        if tail > 0 {
            t[i] += 1;
            for x in &mut t[i + 1..] {
                *x = 0;
            }
            t[p - 1] = tail - 1;
            return Some(t);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn words(p: usize, d: u32) -> Vec<Vec<u32>> {
        word_order_enumerate(p, d).map(|w| w.exponents().to_vec()).collect()
    }

    #[test]
    fn single_letter_words() {
        assert_eq!(words(1, 3), vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn two_letters_degree_one() {
        assert_eq!(words(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn three_letters_degree_four_has_35_words() {
        // exhaustive generation of all tuples in the box, filtered by degree
        let mut brute = 0;
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    if a + b + c <= 4 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(brute, 35);
        assert_eq!(words(3, 4).len(), 35);
        assert_eq!(word_count(3, 4), 35);
    }

    #[test]
    fn degree_zero_is_only_identity() {
        assert_eq!(words(4, 0), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn within_degree_order_is_lexicographic() {
        let w = words(3, 2);
        assert_eq!(
            w,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![1, 0, 0],
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0],
            ]
        );
    }

    #[test]
    fn scalar_generators_commute() {
        let g = GeneratorSet::new(vec![
            AffineMap::scalar(c(2.0, 0.0), c(0.0, 0.0)),
            AffineMap::scalar(c(1.0 / 3.0, 0.0), c(0.0, 0.0)),
        ])
        .unwrap();
        let r = g.validate(1e-9);
        assert!(r.abelian);
        assert_eq!(r.worst_commutator, 0.0);
    }

    #[test]
    fn translations_commute() {
        let g = GeneratorSet::new(vec![
            AffineMap::scalar(c(1.0, 0.0), c(1.0, 0.0)),
            AffineMap::scalar(c(1.0, 0.0), c(0.0, 1.0)),
        ])
        .unwrap();
        assert!(g.validate(1e-9).abelian);
        assert!(g.ensure_abelian().is_ok());
    }

    #[test]
    fn dilation_and_translation_do_not_commute() {
        // [[1,0],[0,2]]·[[1,0],[1,1]] = [[1,0],[2,2]]; reversed = [[1,0],[1,2]]
        let g = GeneratorSet::new(vec![
            AffineMap::scalar(c(2.0, 0.0), c(0.0, 0.0)),
            AffineMap::scalar(c(1.0, 0.0), c(1.0, 0.0)),
        ])
        .unwrap();
        let r = g.validate(1e-9);
        assert!(!r.abelian);
        assert_eq!(r.worst_commutator, 1.0);
        assert_eq!(r.worst_pair, Some((0, 1)));
        assert!(matches!(g.ensure_abelian(), Err(Error::NotAbelian { .. })));
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let err = GeneratorSet::new(vec![AffineMap::identity(1), AffineMap::identity(2)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert!(GeneratorSet::new(vec![]).is_err());
    }

    #[test]
    fn affine_map_shape_checks() {
        let a = ComplexMatrix::identity(2);
        assert!(AffineMap::new(a.clone(), ComplexVector::zeros(3)).is_err());
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(AffineMap::new(rect, ComplexVector::zeros(2)).is_err());
        assert!(ComplexVector::new(vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn word_degree() {
        let w = Word::new(vec![3, 0, 4]);
        assert_eq!(w.degree(), 7);
        assert_eq!(w.to_string(), "(3,0,4)");
    }
}
