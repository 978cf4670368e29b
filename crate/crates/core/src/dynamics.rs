//! Finite-scale orbits, box-grid density scores and extended-limit-set
//! (J-set) witnesses.
//!
//! Nothing here certifies a limit statement. Orbits are truncated at a word
//! degree, density is measured on one grid level, and a J-set witness is a
//! chain of words of strictly increasing degree, applied to starts within
//! `δ` of the base point, whose images approach the target monotonically.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{word_order_enumerate, ComplexScalar, ComplexVector, GeneratorSet, Word};

pub const DEFAULT_NORM_CAP: f64 = 1e12;
pub const DEFAULT_START_COUNT: usize = 32;
pub const MIN_CHAIN_LENGTH: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum WordImage {
    Point(ComplexVector),
    /// Some intermediate point exceeded the norm cap.
    Escaped,
}

impl WordImage {
    pub fn point(self) -> Option<ComplexVector> {
        match self {
            WordImage::Point(p) => Some(p),
            WordImage::Escaped => None,
        }
    }
}

fn check_word(gens: &GeneratorSet, w: &Word, x: &ComplexVector) -> Result<()> {
    if w.len() != gens.len() {
        return Err(Error::DimensionMismatch { expected: gens.len(), found: w.len(), context: "word length" });
    }
    if x.dim() != gens.dimension() {
        return Err(Error::DimensionMismatch { expected: gens.dimension(), found: x.dim(), context: "point" });
    }
    Ok(())
}

/// Applies `f₁` `k⁽¹⁾` times, then `f₂` `k⁽²⁾` times, and so on.
pub fn apply_word(gens: &GeneratorSet, w: &Word, x: &ComplexVector) -> Result<WordImage> {
    apply_word_capped(gens, w, x, DEFAULT_NORM_CAP)
}

pub fn apply_word_capped(gens: &GeneratorSet, w: &Word, x: &ComplexVector, norm_cap: f64) -> Result<WordImage> {
    check_word(gens, w, x)?;
    let mut y = x.clone();
    for (f, &k) in gens.generators().iter().zip(w.exponents()) {
        for _ in 0..k {
            y = f.apply(&y);
            if !(y.max_norm() <= norm_cap) {
                return Ok(WordImage::Escaped);
            }
        }
    }
    Ok(WordImage::Point(y))
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSample {
    pub base_point: ComplexVector,
    pub max_degree: u32,
    pub points: Vec<(Word, ComplexVector)>,
    pub pruned_count: usize,
}

impl OrbitSample {
    /// CSV with one row per point: exponents, then `re, im` of each coordinate.
    pub fn to_csv(&self) -> String {
        let p = self.points.first().map_or(0, |(w, _)| w.len());
        let n = self.base_point.dim();
        let mut header: Vec<String> = (1..=p).map(|j| format!("k{j}")).collect();
        for i in 1..=n {
            header.push(format!("re{i}"));
            header.push(format!("im{i}"));
        }
        let mut out = header.join(",");
        out.push('\n');
        for (w, x) in &self.points {
            let mut row: Vec<String> = w.exponents().iter().map(u32::to_string).collect();
            for z in x.entries() {
                row.push(crate::cli::format_f64(z.re));
                row.push(crate::cli::format_f64(z.im));
            }
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn enumerate_orbit(gens: &GeneratorSet, x: &ComplexVector, max_degree: u32, norm_cap: f64) -> Result<OrbitSample> {
    if x.dim() != gens.dimension() {
        return Err(Error::DimensionMismatch { expected: gens.dimension(), found: x.dim(), context: "point" });
    }
    let mut points = Vec::new();
    let mut pruned_count = 0;
    for w in word_order_enumerate(gens.len(), max_degree) {
        match apply_word_capped(gens, &w, x, norm_cap)? {
            WordImage::Point(y) => points.push((w, y)),
            WordImage::Escaped => pruned_count += 1,
        }
    }
    Ok(OrbitSample { base_point: x.clone(), max_degree, points, pruned_count })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub box_radius: f64,
    pub cell_size: f64,
    pub cells_per_axis: u64,
    pub covered_cells: u64,
    pub total_cells: u64,
    pub score: f64,
}

fn grid_check(box_radius: f64, cell_size: f64) -> Result<u64> {
    if !(box_radius > 0.0 && box_radius.is_finite()) {
        return Err(Error::InvalidArgument("box radius must be positive".into()));
    }
    if !(cell_size > 0.0 && cell_size <= 2.0 * box_radius) {
        return Err(Error::InvalidArgument("cell size must lie in (0, 2R]".into()));
    }
    Ok((2.0 * box_radius / cell_size).ceil() as u64)
}

/// Grid index of a real coordinate in the closed box `[−R, R]`, or `None` outside.
fn cell_index(t: f64, box_radius: f64, cell_size: f64, cells: u64) -> Option<u64> {
    if !(t.abs() <= box_radius) {
        return None;
    }
    Some((((t + box_radius) / cell_size).floor() as u64).min(cells - 1))
}

/// Fraction of the `⌈2R/ε⌉^{2n}` cells of `[−R, R]^{2n}` hit by the orbit.
pub fn density_score(orbit: &OrbitSample, box_radius: f64, cell_size: f64) -> Result<DensityReport> {
    let cells = grid_check(box_radius, cell_size)?;
    let n = orbit.base_point.dim();
    let total_cells = u32::try_from(2 * n)
        .ok()
        .and_then(|e| cells.checked_pow(e))
        .ok_or_else(|| Error::InvalidArgument("grid too large".into()))?;
    let mut covered: BTreeSet<Vec<u64>> = BTreeSet::new();
    'points: for (_, x) in &orbit.points {
        let mut key = Vec::with_capacity(2 * n);
        for z in x.entries() {
            for t in [z.re, z.im] {
                match cell_index(t, box_radius, cell_size, cells) {
                    Some(i) => key.push(i),
                    None => continue 'points,
                }
            }
        }
        covered.insert(key);
    }
    let covered_cells = covered.len() as u64;
    Ok(DensityReport {
        box_radius,
        cell_size,
        cells_per_axis: cells,
        covered_cells,
        total_cells,
        score: covered_cells as f64 / total_cells as f64,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JSetParams {
    pub delta: f64,
    pub max_degree: u32,
    pub witness_tolerance: f64,
    pub norm_cap: f64,
    pub start_count: usize,
    pub seed: u64,
}

impl Default for JSetParams {
    fn default() -> Self {
        Self {
            delta: 1e-3,
            max_degree: 30,
            witness_tolerance: 1e-2,
            norm_cap: DEFAULT_NORM_CAP,
            start_count: DEFAULT_START_COUNT,
            seed: 42,
        }
    }
}

fn first_primes(k: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(k);
    let mut candidate = 2u64;
    while primes.len() < k {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while i > 0 {
        out += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    out
}

/// `x` itself followed by `count − 1` points of a seeded, rotated Halton
/// sequence in the max-norm ball of radius `δ` around `x`.
pub fn perturbed_starts(x: &ComplexVector, delta: f64, count: usize, seed: u64) -> Vec<ComplexVector> {
    let dims = 2 * x.dim();
    let bases = first_primes(dims);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rotation: Vec<f64> = (0..dims).map(|_| rng.gen::<f64>()).collect();
    let mut starts = Vec::with_capacity(count.max(1));
    starts.push(x.clone());
    for i in 1..count as u64 {
        let offsets: Vec<f64> = bases
            .iter()
            .zip(&rotation)
            .map(|(&b, &r)| {
                let u = (radical_inverse(i, b) + r).fract();
                delta * (2.0 * u - 1.0)
            })
            .collect();
        let shifted =
            x.entries().iter().zip(offsets.chunks(2)).map(|(z, o)| z + ComplexScalar::new(o[0], o[1])).collect();
        starts.push(ComplexVector::from_vec(shifted));
    }
    starts
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JSetWitness {
    pub base_point: ComplexVector,
    pub target: ComplexVector,
    /// One start per chain element.
    pub perturbed_starts: Vec<ComplexVector>,
    /// Strictly increasing degrees.
    pub words: Vec<Word>,
    /// Non-increasing max-norm distances of the chain images to the target.
    pub distances: Vec<f64>,
    pub final_distance: f64,
}

impl JSetWitness {
    /// Re-applies every word to its start; returns the recomputed final distance.
    pub fn revalidate(&self, gens: &GeneratorSet, norm_cap: f64) -> Result<f64> {
        let mut last = f64::INFINITY;
        for (w, s) in self.words.iter().zip(&self.perturbed_starts) {
            last = match apply_word_capped(gens, w, s, norm_cap)? {
                WordImage::Point(y) => y.distance(&self.target),
                WordImage::Escaped => f64::INFINITY,
            };
        }
        Ok(last)
    }

    pub fn degrees_strictly_increase(&self) -> bool {
        self.words.windows(2).all(|p| p[0].degree() < p[1].degree())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome")]
pub enum JSetSearch {
    Found(JSetWitness),
    NotFound { best_distance: f64 },
}

impl JSetSearch {
    pub fn witness(&self) -> Option<&JSetWitness> {
        match self {
            JSetSearch::Found(w) => Some(w),
            JSetSearch::NotFound { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, JSetSearch::Found(_))
    }
}

struct Image {
    word: usize,
    start: usize,
    point: ComplexVector,
}

/// All non-escaped images of the perturbed starts under words of degree
/// `1..=max_degree`, grouped by degree in canonical order.
struct ImageTable {
    base_point: ComplexVector,
    starts: Vec<ComplexVector>,
    words: Vec<Word>,
    by_degree: Vec<Vec<Image>>,
}

impl ImageTable {
    fn build(gens: &GeneratorSet, x: &ComplexVector, params: &JSetParams) -> Result<Self> {
        if !(params.delta > 0.0) {
            return Err(Error::InvalidArgument("delta must be positive".into()));
        }
        if x.dim() != gens.dimension() {
            return Err(Error::DimensionMismatch { expected: gens.dimension(), found: x.dim(), context: "point" });
        }
        let starts = perturbed_starts(x, params.delta, params.start_count, params.seed);
        let words: Vec<Word> = word_order_enumerate(gens.len(), params.max_degree).filter(|w| w.degree() > 0).collect();
        let mut by_degree: Vec<Vec<Image>> = (0..params.max_degree).map(|_| Vec::new()).collect();
        for (wi, w) in words.iter().enumerate() {
            for (si, s) in starts.iter().enumerate() {
                if let WordImage::Point(point) = apply_word_capped(gens, w, s, params.norm_cap)? {
                    by_degree[(w.degree() - 1) as usize].push(Image { word: wi, start: si, point });
                }
            }
        }
        Ok(Self { base_point: x.clone(), starts, words, by_degree })
    }

    fn search(&self, y: &ComplexVector, tolerance: f64) -> JSetSearch {
        let mut chain: Vec<(&Image, f64)> = Vec::new();
        let mut best_distance = f64::INFINITY;
        for images in &self.by_degree {
            let mut best: Option<(&Image, f64)> = None;
            for im in images {
                let d = im.point.distance(y);
                if best.is_none_or(|(_, b)| d < b) {
                    best = Some((im, d));
                }
            }
            let Some((im, d)) = best else { continue };
            best_distance = best_distance.min(d);
            if chain.last().is_none_or(|&(_, last)| d <= last) {
                chain.push((im, d));
                if chain.len() >= MIN_CHAIN_LENGTH && d <= tolerance {
                    return JSetSearch::Found(JSetWitness {
                        base_point: self.base_point.clone(),
                        target: y.clone(),
                        perturbed_starts: chain.iter().map(|(i, _)| self.starts[i.start].clone()).collect(),
                        words: chain.iter().map(|(i, _)| self.words[i.word].clone()).collect(),
                        distances: chain.iter().map(|&(_, d)| d).collect(),
                        final_distance: d,
                    });
                }
            }
        }
        JSetSearch::NotFound { best_distance }
    }
}

/// Looks for a chain certifying, at finite scale, that `y ∈ J(x)`.
pub fn jset_witness(
    gens: &GeneratorSet,
    x: &ComplexVector,
    y: &ComplexVector,
    params: &JSetParams,
) -> Result<JSetSearch> {
    if y.dim() != gens.dimension() {
        return Err(Error::DimensionMismatch { expected: gens.dimension(), found: y.dim(), context: "target" });
    }
    Ok(ImageTable::build(gens, x, params)?.search(y, params.witness_tolerance))
}

/// Grid `{−R + k·step}^{2n}` in lexicographic order of the real axes.
pub fn target_grid(n: usize, box_radius: f64, grid_step: f64) -> Result<Vec<ComplexVector>> {
    if !(box_radius > 0.0 && grid_step > 0.0 && grid_step <= 2.0 * box_radius) {
        return Err(Error::InvalidArgument("grid requires R > 0 and 0 < step <= 2R".into()));
    }
    let per_axis = (2.0 * box_radius / grid_step + 1e-9).floor() as usize + 1;
    let axis: Vec<f64> = (0..per_axis).map(|k| -box_radius + k as f64 * grid_step).collect();
    let total = per_axis
        .checked_pow(2 * n as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::InvalidArgument("target grid too large".into()))?;
    Ok((0..total)
        .map(|mut idx| {
            let mut coords = vec![0.0; 2 * n];
            for slot in coords.iter_mut().rev() {
                *slot = axis[idx % per_axis];
                idx /= per_axis;
            }
            ComplexVector::from_vec(coords.chunks(2).map(|p| ComplexScalar::new(p[0], p[1])).collect())
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JSetScore {
    pub box_radius: f64,
    pub grid_step: f64,
    pub targets: usize,
    pub witnessed: usize,
    pub score: f64,
}

/// Witness search from `x` for every target of the grid, in grid order.
pub fn jset_scan(
    gens: &GeneratorSet,
    x: &ComplexVector,
    box_radius: f64,
    grid_step: f64,
    params: &JSetParams,
) -> Result<Vec<(ComplexVector, JSetSearch)>> {
    let targets = target_grid(gens.dimension(), box_radius, grid_step)?;
    let table = ImageTable::build(gens, x, params)?;
    Ok(targets
        .into_par_iter()
        .map(|y| {
            let r = table.search(&y, params.witness_tolerance);
            (y, r)
        })
        .collect())
}

impl JSetScore {
    pub fn from_scan(scan: &[(ComplexVector, JSetSearch)], box_radius: f64, grid_step: f64) -> Self {
        let witnessed = scan.iter().filter(|(_, r)| r.is_found()).count();
        Self {
            box_radius,
            grid_step,
            targets: scan.len(),
            witnessed,
            score: if scan.is_empty() { 0.0 } else { witnessed as f64 / scan.len() as f64 },
        }
    }
}

/// Fraction of grid targets in `[−R, R]^{2n}` that admit a witness from `x`.
pub fn jset_score(
    gens: &GeneratorSet,
    x: &ComplexVector,
    box_radius: f64,
    grid_step: f64,
    params: &JSetParams,
) -> Result<JSetScore> {
    let scan = jset_scan(gens, x, box_radius, grid_step, params)?;
    Ok(JSetScore::from_scan(&scan, box_radius, grid_step))
}
