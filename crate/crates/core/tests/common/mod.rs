//! Independent oracles and generators shared by the integration tests.
//!
//! The oracles work on scalars and hand-written loops only; they do not call
//! the orbit, density or witness code they check.

#![allow(dead_code, clippy::too_many_arguments)]

use std::collections::HashSet;

use jclass::homogenize::{dehomogenize, homogenize};
use jclass::{AffineMap, ComplexMatrix, ComplexScalar, ComplexVector, GeneratorSet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rotation() -> Complex64 {
    Complex64::from_polar(2.0, 1.0)
}

pub fn third() -> Complex64 {
    Complex64::new(1.0 / 3.0, 0.0)
}

/// `g₂^b g₁^a z` for the scalar system `{g₁, g₂}` on ℂ, applying `g₁` first,
/// one multiplication at a time.
pub fn scalar_word(g1: Complex64, g2: Complex64, a: u32, b: u32, z: Complex64) -> Complex64 {
    let mut w = z;
    for _ in 0..a {
        w = g1 * w;
    }
    for _ in 0..b {
        w = g2 * w;
    }
    w
}

/// All `2^a 3^{−b} e^{ia}·z` with `a + b ≤ max_degree`, by repeated multiplication.
pub fn positive_orbit(z: Complex64, max_degree: u32) -> Vec<Complex64> {
    let mut out = Vec::new();
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            out.push(scalar_word(rotation(), third(), a, b, z));
        }
    }
    out
}

/// Lattice `{a + b·i : a, b ≥ 0, a + b ≤ max_degree}`.
pub fn quarter_lattice(max_degree: u32) -> Vec<Complex64> {
    let mut out = Vec::new();
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            out.push(Complex64::new(a as f64, b as f64));
        }
    }
    out
}

/// Number of `⌈2R/ε⌉²` cells of `[−R, R]²` containing at least one point.
pub fn covered_cells(points: &[Complex64], r: f64, eps: f64) -> (usize, usize) {
    let m = (2.0 * r / eps).ceil() as i64;
    let index = |t: f64| -> Option<i64> {
        if t < -r || t > r {
            None
        } else {
            Some((((t + r) / eps).floor() as i64).min(m - 1))
        }
    };
    let mut cells = HashSet::new();
    for z in points {
        if let (Some(i), Some(j)) = (index(z.re), index(z.im)) {
            cells.insert((i, j));
        }
    }
    (cells.len(), (m * m) as usize)
}

fn max_dist(a: Complex64, b: Complex64) -> f64 {
    (a.re - b.re).abs().max((a.im - b.im).abs())
}

/// Number of grid targets `−R + k·step` in `[−R, R]²` for which the chain rule
/// finds a witness: per degree the closest image over all starts and words of
/// that degree is appended when it is no farther than the previous link; a
/// witness needs at least three links and a last distance within `tol`.
pub fn scalar_jset_witnessed(
    g1: Complex64,
    g2: Complex64,
    starts: &[Complex64],
    max_degree: u32,
    r: f64,
    step: f64,
    tol: f64,
    cap: f64,
) -> (usize, usize) {
    let mut by_degree: Vec<Vec<Complex64>> = vec![Vec::new(); max_degree as usize];
    for d in 1..=max_degree {
        for a in 0..=d {
            for &s in starts {
                let w = scalar_word(g1, g2, a, d - a, s);
                if w.re.abs().max(w.im.abs()) <= cap {
                    by_degree[d as usize - 1].push(w);
                }
            }
        }
    }
    let per_axis = ((2.0 * r / step) + 1e-9).floor() as usize + 1;
    let axis: Vec<f64> = (0..per_axis).map(|k| -r + k as f64 * step).collect();
    let mut witnessed = 0;
    for &re in &axis {
        for &im in &axis {
            let y = Complex64::new(re, im);
            let mut chain: Vec<f64> = Vec::new();
            for images in &by_degree {
                let Some(d) = images.iter().map(|&w| max_dist(w, y)).min_by(f64::total_cmp) else { continue };
                if chain.last().is_none_or(|&last| d <= last) {
                    chain.push(d);
                    if chain.len() >= 3 && d <= tol {
                        witnessed += 1;
                        break;
                    }
                }
            }
        }
    }
    (witnessed, per_axis * per_axis)
}

pub fn random_scalar(rng: &mut ChaCha8Rng, scale: f64) -> ComplexScalar {
    ComplexScalar::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn random_affine(rng: &mut ChaCha8Rng, n: usize) -> AffineMap {
    let entries = (0..n * n).map(|_| random_scalar(rng, 1.0)).collect();
    let a = ComplexMatrix::from_row_major(n, n, entries).unwrap();
    let t = ComplexVector::new((0..n).map(|_| random_scalar(rng, 1.0)).collect()).unwrap();
    AffineMap::new(a, t).unwrap()
}

/// `p` commuting maps `Φ⁻¹(Σ_i c_i M^i)` with `Σ_i c_i = 1`, for one random
/// `M = Φ(f)`; the coefficient sum keeps every combination in chart form.
pub fn random_abelian_system(rng: &mut ChaCha8Rng, n: usize, p: usize) -> GeneratorSet {
    let f = random_affine(rng, n);
    let mut m = homogenize(&f).into_matrix().scale(ComplexScalar::new(0.6, 0.0));
    m[(0, 0)] = ComplexScalar::new(1.0, 0.0);
    let powers: Vec<ComplexMatrix> = (0..3).map(|k| m.pow(k)).collect();
    let gens = (0..p)
        .map(|_| {
            let c1 = random_scalar(rng, 0.7);
            let c2 = random_scalar(rng, 0.3);
            let c0 = ComplexScalar::new(1.0, 0.0) - c1 - c2;
            let mut h = powers[0].scale(c0).add(&powers[1].scale(c1)).add(&powers[2].scale(c2));
            h[(0, 0)] = ComplexScalar::new(1.0, 0.0);
            dehomogenize(&h).unwrap()
        })
        .collect();
    GeneratorSet::new(gens).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point(z: Complex64) -> ComplexVector {
    ComplexVector::new(vec![z]).unwrap()
}
