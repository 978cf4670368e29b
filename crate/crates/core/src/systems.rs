//! Bundled generator sets used by the CLI examples, tests and the acceptance suite.

use crate::homogenize::{dehomogenize, homogenize, invert};
use crate::model::{AffineMap, ComplexMatrix, ComplexScalar, ComplexVector, GeneratorSet};

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn set(gens: Vec<AffineMap>) -> GeneratorSet {
    GeneratorSet::new(gens).expect("bundled systems are well-formed")
}

fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).expect("bundled matrices are well-formed")
}

/// `ψ ∘ f ∘ ψ⁻¹` for every generator.
pub fn conjugate_by(gens: &GeneratorSet, psi: &AffineMap) -> GeneratorSet {
    let h = homogenize(psi).into_matrix();
    let h_inv = homogenize(&invert(psi).expect("invertible conjugator")).into_matrix();
    set(gens
        .generators()
        .iter()
        .map(|f| dehomogenize(&h.mul(homogenize(f).matrix()).mul(&h_inv)).expect("chart preserved"))
        .collect())
}

/// `{x ↦ x + 1}` on ℂ.
pub fn translation_line() -> GeneratorSet {
    set(vec![AffineMap::scalar(c(1.0, 0.0), c(1.0, 0.0))])
}

/// `{x ↦ x + 1, x ↦ x + i}` on ℂ.
pub fn translation_pair() -> GeneratorSet {
    set(vec![AffineMap::scalar(c(1.0, 0.0), c(1.0, 0.0)), AffineMap::scalar(c(1.0, 0.0), c(0.0, 1.0))])
}

/// `{x ↦ 2x}` on ℂ.
pub fn dilation() -> GeneratorSet {
    set(vec![AffineMap::scalar(c(2.0, 0.0), c(0.0, 0.0))])
}

/// `{x ↦ x/2}` on ℂ.
pub fn contraction() -> GeneratorSet {
    set(vec![AffineMap::scalar(c(0.5, 0.0), c(0.0, 0.0))])
}

/// `{x ↦ 2x, x ↦ x/3}` on ℂ.
pub fn dilation_pair() -> GeneratorSet {
    set(vec![AffineMap::scalar(c(2.0, 0.0), c(0.0, 0.0)), AffineMap::scalar(c(1.0 / 3.0, 0.0), c(0.0, 0.0))])
}

/// `{x ↦ 2e^{i}x, x ↦ x/3}` on ℂ.
pub fn rotation_dilation() -> GeneratorSet {
    let rot = ComplexScalar::from_polar(2.0, 1.0);
    set(vec![AffineMap::scalar(rot, c(0.0, 0.0)), AffineMap::scalar(c(1.0 / 3.0, 0.0), c(0.0, 0.0))])
}

/// `{id}` on ℂ.
pub fn identity_only() -> GeneratorSet {
    set(vec![AffineMap::identity(1)])
}

/// `{(x₁, x₂) ↦ (2x₁, 3x₂)}` on ℂ²; three one-dimensional blocks.
pub fn diagonal_plane() -> GeneratorSet {
    set(vec![AffineMap::linear_only(ComplexMatrix::diagonal(&[c(2.0, 0.0), c(3.0, 0.0)])).unwrap()])
}

/// `{J, J²}` with `J` the lower Jordan block of eigenvalue 2 on ℂ².
pub fn jordan_plane() -> GeneratorSet {
    let j = real(&[&[2.0, 0.0], &[1.0, 2.0]]);
    set(vec![AffineMap::linear_only(j.clone()).unwrap(), AffineMap::linear_only(j.pow(2)).unwrap()])
}

/// `{(x₁, x₂) ↦ (x₁ + 1, 2x₂)}` on ℂ²: a translation block and a dilation block.
pub fn mixed_plane() -> GeneratorSet {
    let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
    set(vec![AffineMap::new(a, ComplexVector::from_real(&[1.0, 0.0])).unwrap()])
}

/// `{(x₁, x₂) ↦ (1, x₂), (x₁, x₂) ↦ (x₁, 2x₂)}` on ℂ²; the first linear part is singular.
pub fn singular_plane() -> GeneratorSet {
    let f = AffineMap::new(ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)]), ComplexVector::from_real(&[1.0, 0.0]))
        .unwrap();
    let g = AffineMap::linear_only(ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
    set(vec![f, g])
}

/// Mixed plane system with a rotation-contraction companion, in skewed coordinates.
pub fn skewed_mixed_plane() -> GeneratorSet {
    let f = AffineMap::new(ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]), ComplexVector::from_real(&[1.0, 0.0]))
        .unwrap();
    let g = AffineMap::new(
        ComplexMatrix::diagonal(&[c(1.0, 0.0), ComplexScalar::from_polar(0.5, 0.7)]),
        ComplexVector::new(vec![c(0.0, 1.0), c(0.0, 0.0)]).unwrap(),
    )
    .unwrap();
    let psi = AffineMap::new(
        ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.5, 0.25)], vec![c(-0.25, 0.0), c(1.5, -0.5)]]).unwrap(),
        ComplexVector::new(vec![c(0.3, 0.0), c(-0.7, 0.2)]).unwrap(),
    )
    .unwrap();
    conjugate_by(&set(vec![f, g]), &psi)
}

/// Three generators on ℂ³ (a translation and two powers of a Jordan-type
/// matrix), in skewed coordinates.
pub fn skewed_jordan_space() -> GeneratorSet {
    let a = real(&[&[2.0, 0.0, 0.0], &[1.0, 2.0, 0.0], &[0.0, 0.0, 1.0]]);
    let t = AffineMap::translation_only(ComplexVector::from_real(&[0.0, 0.0, 1.0]));
    let f = AffineMap::linear_only(a.clone()).unwrap();
    let g = AffineMap::linear_only(a.pow(2)).unwrap();
    let psi = AffineMap::new(
        real(&[&[1.0, 0.2, 0.0], &[0.1, 1.0, 0.3], &[0.0, -0.4, 1.0]]),
        ComplexVector::from_real(&[1.0, 0.0, -1.0]),
    )
    .unwrap();
    conjugate_by(&set(vec![t, f, g]), &psi)
}

/// The ten systems of the normal-form acceptance suite, with names.
pub fn normal_form_suite() -> Vec<(&'static str, GeneratorSet)> {
    vec![
        ("translation_line", translation_line()),
        ("translation_pair", translation_pair()),
        ("dilation", dilation()),
        ("rotation_dilation", rotation_dilation()),
        ("diagonal_plane", diagonal_plane()),
        ("jordan_plane", jordan_plane()),
        ("mixed_plane", mixed_plane()),
        ("singular_plane", singular_plane()),
        ("skewed_mixed_plane", skewed_mixed_plane()),
        ("skewed_jordan_space", skewed_jordan_space()),
    ]
}
