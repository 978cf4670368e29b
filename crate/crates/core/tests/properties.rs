mod common;

use jclass::analyzer::homogenized_word_matrix;
use jclass::dynamics::{apply_word, jset_score, jset_witness, JSetParams, WordImage, DEFAULT_NORM_CAP};
use jclass::homogenize::lift;
use jclass::model::word_order_enumerate;
use jclass::normalform::compute_normal_form;
use jclass::systems::{self, conjugate_by};
use jclass::{AffineMap, ComplexMatrix, ComplexScalar, ComplexVector, GeneratorSet, Word};
use num_complex::Complex64;
use proptest::prelude::*;

use common::*;

fn system_and_point() -> impl Strategy<Value = (GeneratorSet, ComplexVector)> {
    (any::<u64>(), 1usize..=3, 1usize..=3).prop_map(|(seed, n, p)| {
        let mut rng = seeded(seed);
        let gens = random_abelian_system(&mut rng, n, p);
        let x = ComplexVector::new((0..n).map(|_| random_scalar(&mut rng, 1.0)).collect()).unwrap();
        (gens, x)
    })
}

fn image(gens: &GeneratorSet, w: &Word, x: &ComplexVector) -> ComplexVector {
    match apply_word(gens, w, x).unwrap() {
        WordImage::Point(y) => y,
        WordImage::Escaped => panic!("small systems stay bounded at low degree"),
    }
}

fn rel(a: &ComplexVector, b: &ComplexVector) -> f64 {
    a.distance(b) / a.max_norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Applying the generators of a word in another order lands on the same point.
    #[test]
    fn application_order_is_irrelevant((gens, x) in system_and_point(), rot in 0usize..3) {
        let p = gens.len();
        let order: Vec<usize> = (0..p).map(|i| (i + rot) % p).collect();
        let permuted = gens.permuted(&order).unwrap();
        for w in word_order_enumerate(p, 6) {
            let pw = Word::new(order.iter().map(|&i| w.exponents()[i]).collect());
            let a = image(&gens, &w, &x);
            let b = image(&permuted, &pw, &x);
            prop_assert!(rel(&a, &b) <= 1e-9, "{w}: {a:?} vs {b:?}");
        }
    }

    /// `(1, f_w(x))` equals the homogenized word product applied to `(1, x)`.
    #[test]
    fn homogenized_consistency((gens, x) in system_and_point()) {
        for w in word_order_enumerate(gens.len(), 6) {
            let affine = lift(&image(&gens, &w, &x));
            let matrix = homogenized_word_matrix(&gens, &w).unwrap().mul_vec(&lift(&x));
            prop_assert!(rel(&affine, &matrix) <= 1e-9);
        }
    }

    /// Returned witnesses re-validate and use strictly increasing degrees.
    #[test]
    fn witnesses_are_sound(r in 0.2f64..0.9, theta in -3.0f64..3.0, tx in -1.0f64..1.0, ty in -1.0f64..1.0) {
        let a = ComplexScalar::from_polar(r, theta);
        let b = ComplexScalar::new(tx, ty);
        let gens = GeneratorSet::new(vec![AffineMap::scalar(a, b)]).unwrap();
        let fixed = ComplexVector::new(vec![b / (ComplexScalar::new(1.0, 0.0) - a)]).unwrap();
        let x = fixed.add(&ComplexVector::new(vec![ComplexScalar::new(0.7, -0.4)]).unwrap());
        let params = JSetParams { max_degree: 40, ..JSetParams::default() };
        let search = jset_witness(&gens, &x, &fixed, &params).unwrap();
        let w = search.witness().expect("orbits of a contraction converge to its fixed point");
        prop_assert!(w.degrees_strictly_increase());
        prop_assert!(w.words.len() >= 3);
        prop_assert!(w.distances.windows(2).all(|d| d[1] <= d[0]));
        prop_assert!((w.revalidate(&gens, DEFAULT_NORM_CAP).unwrap() - w.final_distance).abs() <= 1e-12);
        prop_assert!(w.perturbed_starts.iter().all(|s| s.distance(&x) <= params.delta));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Diagonal systems in random affine coordinates keep their block structure.
    #[test]
    fn conjugated_diagonal_systems(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = seeded(seed);
        let d1: Vec<ComplexScalar> = (0..n).map(|k| ComplexScalar::new(2.0 + k as f64, 0.5 * k as f64)).collect();
        let d2: Vec<ComplexScalar> = (0..n).map(|k| ComplexScalar::new(0.5, -(k as f64))).collect();
        let base = GeneratorSet::new(vec![
            AffineMap::linear_only(ComplexMatrix::diagonal(&d1)).unwrap(),
            AffineMap::linear_only(ComplexMatrix::diagonal(&d2)).unwrap(),
        ])
        .unwrap();
        let psi = loop {
            let f = random_affine(&mut rng, n);
            let shifted = f.linear().add(&ComplexMatrix::identity(n).scale(ComplexScalar::new(2.0, 0.0)));
            let g = AffineMap::new(shifted, f.translation().clone()).unwrap();
            if g.is_invertible_linear() {
                break g;
            }
        };
        let gens = conjugate_by(&base, &psi);
        let nf = compute_normal_form(&gens).unwrap();
        prop_assert_eq!(nf.partition.parts().len(), n + 1);
        prop_assert!(nf.conjugated.residual() <= 1e-9);
        prop_assert!(nf.residuals.reconstruction <= 1e-8);
        prop_assert_eq!(nf.critical_hyperplanes().hyperplanes.len(), n);
        prop_assert!(nf.critical_hyperplanes().invariance_residual(&gens) <= 1e-9);
        let swapped = compute_normal_form(&gens.permuted(&[1, 0]).unwrap()).unwrap();
        prop_assert_eq!(swapped.partition.parts(), nf.partition.parts());
    }
}

#[test]
fn jset_score_is_monotone_in_degree() {
    let gens = systems::dilation_pair();
    let x = point(Complex64::new(1.0, 0.0));
    let mut prev = 0.0;
    for d in [4, 8, 12, 16, 20] {
        let params = JSetParams { max_degree: d, ..JSetParams::default() };
        let s = jset_score(&gens, &x, 2.0, 0.5, &params).unwrap().score;
        assert!(s >= prev, "degree {d}: {s} < {prev}");
        prev = s;
    }
    assert!(prev > 0.0);
}
