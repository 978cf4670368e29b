//! Executable finite-scale checks of the hypercyclicity criteria.
//!
//! * [`hypercyclicity_report`]: scores the orbit and the J-set of the
//!   critical vector `w₀`; a semigroup is hypercyclic iff `J(w₀) = ℂⁿ` iff
//!   the orbit of `w₀` is dense.
//! * [`theorem1_check`]: for `v ∈ U`, a full J-set forces a dense orbit.
//! * [`locus_containment_check`]: for non-hypercyclic systems every point with
//!   a full J-set lies on the critical hyperplanes.
//! * [`lemma_correspondence_check`]: affine orbits and witnesses correspond to
//!   homogenized ones on the chart `{1}×ℂⁿ`, and witnesses transfer through
//!   the scalar extension `{λ·M : λ ≠ 0, M ∈ Φ(𝒢)}` in both directions.
//!
//! Scores are finite proxies, so verdicts are labelled as evidence only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynamics::{
    apply_word_capped, density_score, enumerate_orbit, jset_scan, jset_score, DensityReport, JSetParams, JSetScore,
    JSetSearch, JSetWitness, WordImage, DEFAULT_NORM_CAP, DEFAULT_START_COUNT,
};
use crate::error::{Error, Result};
use crate::homogenize::{lift, second_projection};
use crate::model::{word_order_enumerate, ComplexMatrix, ComplexScalar, ComplexVector, GeneratorSet, Word};
use crate::normalform::{compute_normal_form, critical_hyperplanes, Membership, NormalFormData};

/// Relative residual allowed between affine and homogenized images.
pub const CORRESPONDENCE_TOLERANCE: f64 = 1e-9;
pub const INVARIANCE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    pub tau_hyp: f64,
    pub tau_conc: f64,
    pub tau_neg: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { tau_hyp: 0.9, tau_conc: 0.9, tau_neg: 0.2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisParams {
    pub max_degree: u32,
    pub box_radius: f64,
    pub cell_size: f64,
    pub grid_step: f64,
    pub delta: f64,
    pub witness_tolerance: f64,
    pub membership_tolerance: f64,
    pub locus_tolerance: f64,
    pub norm_cap: f64,
    pub start_count: usize,
    pub random_samples: usize,
    pub seed: u64,
    pub thresholds: Thresholds,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        Self {
            max_degree: 30,
            box_radius: 2.0,
            cell_size: 0.125,
            grid_step: 0.5,
            delta: 1e-3,
            witness_tolerance: 1e-2,
            membership_tolerance: 1e-9,
            locus_tolerance: 1e-6,
            norm_cap: DEFAULT_NORM_CAP,
            start_count: DEFAULT_START_COUNT,
            random_samples: 16,
            seed: 42,
            thresholds: Thresholds::default(),
        }
    }
}

impl AnalysisParams {
    pub fn jset_params(&self) -> JSetParams {
        JSetParams {
            delta: self.delta,
            max_degree: self.max_degree,
            witness_tolerance: self.witness_tolerance,
            norm_cap: self.norm_cap,
            start_count: self.start_count,
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    EvidenceHypercyclic,
    EvidenceNotHypercyclic,
    Inconclusive,
}

pub fn verdict(density: f64, jset: f64, t: &Thresholds) -> Verdict {
    if density >= t.tau_hyp && jset >= t.tau_hyp {
        Verdict::EvidenceHypercyclic
    } else if density <= t.tau_neg {
        Verdict::EvidenceNotHypercyclic
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// The hypothesis side was not met at finite scale.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypercyclicityReport {
    pub w0: ComplexVector,
    pub w0_in_u: bool,
    pub w0_membership: Membership,
    pub jset_score_at_w0: f64,
    pub density_score_at_w0: f64,
    pub verdict: Verdict,
    pub density: DensityReport,
    pub jset: JSetScore,
    pub orbit_points: usize,
    pub pruned_count: usize,
    pub parameters: AnalysisParams,
}

pub fn hypercyclicity_report(gens: &GeneratorSet, params: &AnalysisParams) -> Result<HypercyclicityReport> {
    let nf = compute_normal_form(gens)?;
    Ok(report_from_scan(&nf, params)?.0)
}

/// The report together with the J-set scan at `w₀` it was computed from.
pub(crate) fn report_from_scan(
    nf: &NormalFormData,
    params: &AnalysisParams,
) -> Result<(HypercyclicityReport, Vec<(ComplexVector, JSetSearch)>)> {
    let gens = &nf.generators;
    let w0 = nf.w0.clone();
    let orbit = enumerate_orbit(gens, &w0, params.max_degree, params.norm_cap)?;
    let density = density_score(&orbit, params.box_radius, params.cell_size)?;
    let scan = jset_scan(gens, &w0, params.box_radius, params.grid_step, &params.jset_params())?;
    let jset = JSetScore::from_scan(&scan, params.box_radius, params.grid_step);
    let membership = nf.membership_u(&w0, params.membership_tolerance)?;
    let report = HypercyclicityReport {
        w0_in_u: membership.inside,
        w0_membership: membership,
        jset_score_at_w0: jset.score,
        density_score_at_w0: density.score,
        verdict: verdict(density.score, jset.score, &params.thresholds),
        w0,
        orbit_points: orbit.points.len(),
        pruned_count: orbit.pruned_count,
        density,
        jset,
        parameters: params.clone(),
    };
    Ok((report, scan))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Check {
    pub point: ComplexVector,
    pub membership: Membership,
    /// Computed only when the point lies in `U`.
    pub jset_score: Option<f64>,
    /// Computed only when the J-set hypothesis is met.
    pub density_score: Option<f64>,
    pub outcome: CheckOutcome,
}

/// `v ∈ U` and `jset(v) ≥ τ_hyp` must imply `density(v) ≥ τ_conc`.
pub fn theorem1_check(nf: &NormalFormData, v: &ComplexVector, params: &AnalysisParams) -> Result<Theorem1Check> {
    let gens = &nf.generators;
    let membership = nf.membership_u(v, params.membership_tolerance)?;
    let mut check = Theorem1Check {
        point: v.clone(),
        membership: membership.clone(),
        jset_score: None,
        density_score: None,
        outcome: CheckOutcome::Vacuous,
    };
    if !membership.inside {
        return Ok(check);
    }
    let js = jset_score(gens, v, params.box_radius, params.grid_step, &params.jset_params())?.score;
    check.jset_score = Some(js);
    if js < params.thresholds.tau_hyp {
        return Ok(check);
    }
    let orbit = enumerate_orbit(gens, v, params.max_degree, params.norm_cap)?;
    let ds = density_score(&orbit, params.box_radius, params.cell_size)?.score;
    check.density_score = Some(ds);
    check.outcome = if ds >= params.thresholds.tau_conc { CheckOutcome::Pass } else { CheckOutcome::Fail };
    Ok(check)
}

/// `w₀`, the `2^{2n}` corners of `[−R, R]^{2n}`, then `random_samples`
/// seeded uniform points of the box.
pub fn default_sample_points(nf: &NormalFormData, params: &AnalysisParams) -> Vec<ComplexVector> {
    let n = nf.dimension();
    let r = params.box_radius;
    let mut points = vec![nf.w0.clone()];
    for mask in 0..(1u64 << (2 * n)) {
        let coords: Vec<f64> = (0..2 * n).map(|b| if mask >> (2 * n - 1 - b) & 1 == 1 { r } else { -r }).collect();
        points.push(ComplexVector::from_vec(coords.chunks(2).map(|p| ComplexScalar::new(p[0], p[1])).collect()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..params.random_samples {
        let coords: Vec<ComplexScalar> =
            (0..n).map(|_| ComplexScalar::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))).collect();
        points.push(ComplexVector::from_vec(coords));
    }
    points
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusSample {
    pub point: ComplexVector,
    pub jset_score: f64,
    pub high: bool,
    /// Distance to the union of hyperplanes; `None` when the locus is empty.
    pub distance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusCheck {
    /// Whether the verdict made the containment statement applicable.
    pub applicable: bool,
    pub hyperplane_count: usize,
    pub invariance_residual: f64,
    pub samples: Vec<LocusSample>,
    pub outcome: CheckOutcome,
    pub caveat: &'static str,
}

const LOCUS_CAVEAT: &str =
    "full J-sets are approximated by jset_score >= tau_hyp; points near the boundary of that test may be misclassified";

/// Points whose J-set looks full must sit on the critical hyperplanes when the
/// semigroup is not hypercyclic; the hyperplanes themselves must be invariant.
pub fn locus_containment_check(
    nf: &NormalFormData,
    verdict: Verdict,
    sample_points: &[ComplexVector],
    params: &AnalysisParams,
) -> Result<LocusCheck> {
    let gens = &nf.generators;
    let locus = critical_hyperplanes(nf);
    let invariance_residual = locus.invariance_residual(gens);
    let applicable = verdict == Verdict::EvidenceNotHypercyclic;
    let mut check = LocusCheck {
        applicable,
        hyperplane_count: locus.hyperplanes.len(),
        invariance_residual,
        samples: Vec::new(),
        outcome: CheckOutcome::Vacuous,
        caveat: LOCUS_CAVEAT,
    };
    if invariance_residual > INVARIANCE_TOLERANCE {
        check.outcome = CheckOutcome::Fail;
        return Ok(check);
    }
    if !applicable {
        return Ok(check);
    }
    let jp = params.jset_params();
    let mut any_high = false;
    let mut all_contained = true;
    for x in sample_points {
        let score = jset_score(gens, x, params.box_radius, params.grid_step, &jp)?.score;
        let high = score >= params.thresholds.tau_hyp;
        let distance = locus.distance(x);
        if high {
            any_high = true;
            all_contained &= distance.is_some_and(|d| d <= params.locus_tolerance);
        }
        check.samples.push(LocusSample { point: x.clone(), jset_score: score, high, distance });
    }
    check.outcome = match (any_high, all_contained) {
        (false, _) => CheckOutcome::Vacuous,
        (true, true) => CheckOutcome::Pass,
        (true, false) => CheckOutcome::Fail,
    };
    Ok(check)
}

/// `λ · Φ(f₁)^{k⁽¹⁾}⋯Φ(f_p)^{k⁽ᵖ⁾}`, an element of the scalar extension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarExtensionElement {
    scale: ComplexScalar,
    word: Word,
}

impl ScalarExtensionElement {
    pub fn new(scale: ComplexScalar, word: Word) -> Result<Self> {
        if scale == ComplexScalar::new(0.0, 0.0) {
            return Err(Error::InvalidArgument("scale of a scalar-extension element must be nonzero".into()));
        }
        if !(scale.re.is_finite() && scale.im.is_finite()) {
            return Err(Error::NonFinite("scale"));
        }
        Ok(Self { scale, word })
    }

    pub fn scale(&self) -> ComplexScalar {
        self.scale
    }

    pub fn word(&self) -> &Word {
        &self.word
    }
}

/// `Φ(f₁)^{k⁽¹⁾}·…·Φ(f_p)^{k⁽ᵖ⁾}` as a matrix product in generator order.
pub fn homogenized_word_matrix(gens: &GeneratorSet, w: &Word) -> Result<ComplexMatrix> {
    if w.len() != gens.len() {
        return Err(Error::DimensionMismatch { expected: gens.len(), found: w.len(), context: "word length" });
    }
    Ok(gens
        .homogenized()
        .iter()
        .zip(w.exponents())
        .fold(ComplexMatrix::identity(gens.dimension() + 1), |acc, (m, &k)| acc.mul(&m.pow(k))))
}

pub fn scalar_extension_apply(
    elem: &ScalarExtensionElement,
    gens: &GeneratorSet,
    v: &ComplexVector,
) -> Result<ComplexVector> {
    if v.dim() != gens.dimension() + 1 {
        return Err(Error::DimensionMismatch {
            expected: gens.dimension() + 1,
            found: v.dim(),
            context: "homogeneous point",
        });
    }
    Ok(homogenized_word_matrix(gens, &elem.word)?.mul_vec(v).scale(elem.scale))
}

/// A witness chain for the scalar-extension semigroup acting on ℂⁿ⁺¹.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarExtensionWitness {
    pub target: ComplexVector,
    pub starts: Vec<ComplexVector>,
    pub elements: Vec<ScalarExtensionElement>,
    pub distances: Vec<f64>,
}

impl ScalarExtensionWitness {
    pub fn images(&self, gens: &GeneratorSet) -> Result<Vec<ComplexVector>> {
        self.elements.iter().zip(&self.starts).map(|(e, s)| scalar_extension_apply(e, gens, s)).collect()
    }

    /// Largest disagreement between stored and recomputed distances.
    pub fn revalidate(&self, gens: &GeneratorSet) -> Result<f64> {
        Ok(self
            .images(gens)?
            .iter()
            .zip(&self.distances)
            .map(|(im, &d)| (im.distance(&self.target) - d).abs())
            .fold(0.0, f64::max))
    }

    pub fn final_distance(&self) -> f64 {
        self.distances.last().copied().unwrap_or(f64::INFINITY)
    }
}

/// Lifts an affine witness for `(x, y)` to one for `((1, x), (1, y))` with all scales 1.
pub fn witness_up(gens: &GeneratorSet, w: &JSetWitness) -> Result<ScalarExtensionWitness> {
    let starts: Vec<ComplexVector> = w.perturbed_starts.iter().map(lift).collect();
    let elements = w
        .words
        .iter()
        .map(|word| ScalarExtensionElement::new(ComplexScalar::new(1.0, 0.0), word.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut sw = ScalarExtensionWitness { target: lift(&w.target), starts, elements, distances: vec![] };
    sw.distances = sw.images(gens)?.iter().map(|im| im.distance(&sw.target)).collect();
    Ok(sw)
}

/// Pushes a scalar-extension witness down to the chart: each image is divided
/// by its first coordinate `c_m` and each start `(λ'_m, x_m)` becomes
/// `x_m / λ'_m`. The affine chain is then recomputed from scratch.
pub fn witness_down(
    gens: &GeneratorSet,
    sw: &ScalarExtensionWitness,
    base_point: &ComplexVector,
    norm_cap: f64,
) -> Result<(JSetWitness, f64)> {
    let target = normalize_chart(&sw.target)?;
    let mut starts = Vec::with_capacity(sw.starts.len());
    let mut distances = Vec::with_capacity(sw.starts.len());
    let mut chart_residual: f64 = 0.0;
    for (e, s) in sw.elements.iter().zip(&sw.starts) {
        let image = scalar_extension_apply(e, gens, s)?;
        let normalized = normalize_chart(&image)?;
        let start = normalize_chart(s)?;
        let affine = match apply_word_capped(gens, &e.word, &start, norm_cap)? {
            WordImage::Point(p) => p,
            WordImage::Escaped => {
                return Err(Error::InvalidArgument("down-converted witness escapes the norm cap".into()))
            }
        };
        chart_residual = chart_residual.max(affine.distance(&normalized) / normalized.max_norm().max(1.0));
        distances.push(affine.distance(&target));
        starts.push(start);
    }
    let witness = JSetWitness {
        base_point: base_point.clone(),
        target,
        perturbed_starts: starts,
        words: sw.elements.iter().map(|e| e.word.clone()).collect(),
        final_distance: distances.last().copied().unwrap_or(f64::INFINITY),
        distances,
    };
    Ok((witness, chart_residual))
}

/// `(c, z) ↦ z / c`.
fn normalize_chart(v: &ComplexVector) -> Result<ComplexVector> {
    let c = v[0];
    if c == ComplexScalar::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("point lies at infinity of the chart".into()));
    }
    let z = second_projection(v)?;
    Ok(if c == ComplexScalar::new(1.0, 0.0) { z } else { z.scale(ComplexScalar::new(1.0, 0.0) / c) })
}

/// Scalar-extension witness with scales `λ_m = 1 + 1/m` on the lifted starts.
pub fn synthetic_scaled_witness(gens: &GeneratorSet, w: &JSetWitness) -> Result<ScalarExtensionWitness> {
    let mut sw = witness_up(gens, w)?;
    for (m, e) in sw.elements.iter_mut().enumerate() {
        e.scale = ComplexScalar::new(1.0 + 1.0 / (m + 1) as f64, 0.0);
    }
    sw.distances = sw.images(gens)?.iter().map(|im| im.distance(&sw.target)).collect();
    Ok(sw)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferCheck {
    pub target: ComplexVector,
    pub words: usize,
    /// `max |stored − recomputed|` on the lifted witness.
    pub up_revalidation: f64,
    /// Worst relative gap between lifted images and `(1, affine image)`.
    pub up_chart_residual: f64,
    pub up_final_distance: f64,
    /// Down-conversion of the lifted witness returned the same starts and words.
    pub involution: bool,
    /// Down-conversion of the `λ_m = 1 + 1/m` witness recovered a valid affine witness.
    pub scaled_down_valid: bool,
    pub scaled_down_chart_residual: f64,
    pub pass: bool,
}

pub fn transfer_check(gens: &GeneratorSet, w: &JSetWitness, params: &AnalysisParams) -> Result<TransferCheck> {
    let up = witness_up(gens, w)?;
    let up_revalidation = up.revalidate(gens)?;
    let up_chart_residual = up
        .images(gens)?
        .iter()
        .zip(w.words.iter().zip(&w.perturbed_starts))
        .map(|(im, (word, s))| -> Result<f64> {
            let affine = apply_word_capped(gens, word, s, params.norm_cap)?.point().map(|p| lift(&p));
            Ok(affine.map_or(f64::INFINITY, |a| a.distance(im) / a.max_norm().max(1.0)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let (back, _) = witness_down(gens, &up, &w.base_point, params.norm_cap)?;
    let involution = back.perturbed_starts == w.perturbed_starts && back.words == w.words;

    let scaled = synthetic_scaled_witness(gens, w)?;
    let (recovered, scaled_down_chart_residual) = witness_down(gens, &scaled, &w.base_point, params.norm_cap)?;
    let scaled_down_valid = recovered.words == w.words
        && recovered.degrees_strictly_increase()
        && recovered.final_distance <= params.witness_tolerance
        && recovered.perturbed_starts.iter().all(|s| s.distance(&w.base_point) <= params.delta)
        && scaled_down_chart_residual <= CORRESPONDENCE_TOLERANCE;

    let pass = up_revalidation <= CORRESPONDENCE_TOLERANCE
        && up_chart_residual <= CORRESPONDENCE_TOLERANCE
        && up.final_distance() <= params.witness_tolerance
        && involution
        && scaled_down_valid;
    Ok(TransferCheck {
        target: w.target.clone(),
        words: w.words.len(),
        up_revalidation,
        up_chart_residual,
        up_final_distance: up.final_distance(),
        involution,
        scaled_down_valid,
        scaled_down_chart_residual,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitCorrespondence {
    pub words: usize,
    pub escaped: usize,
    /// Worst `‖(1, f_w(x)) − M_w(1, x)‖ / max(1, ‖M_w(1, x)‖)`.
    pub worst_residual: f64,
    pub pass: bool,
}

/// Every word of degree `≤ max_degree`: the affine image, lifted, against the
/// homogenized word matrix applied to `(1, x)`.
pub fn orbit_correspondence(
    gens: &GeneratorSet,
    x: &ComplexVector,
    max_degree: u32,
    norm_cap: f64,
) -> Result<OrbitCorrespondence> {
    let lifted = lift(x);
    let mut words = 0;
    let mut escaped = 0;
    let mut worst: f64 = 0.0;
    for w in word_order_enumerate(gens.len(), max_degree) {
        words += 1;
        match apply_word_capped(gens, &w, x, norm_cap)? {
            WordImage::Point(p) => {
                let h = homogenized_word_matrix(gens, &w)?.mul_vec(&lifted);
                worst = worst.max(lift(&p).distance(&h) / h.max_norm().max(1.0));
            }
            WordImage::Escaped => escaped += 1,
        }
    }
    Ok(OrbitCorrespondence { words, escaped, worst_residual: worst, pass: worst <= CORRESPONDENCE_TOLERANCE })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrespondenceReport {
    pub point: ComplexVector,
    pub orbit: OrbitCorrespondence,
    pub transfers: Vec<TransferCheck>,
    pub outcome: CheckOutcome,
}

/// Orbit correspondence at `x`, plus up/down witness transfer for every
/// affine witness in `witnesses`.
pub fn lemma_correspondence_check(
    gens: &GeneratorSet,
    x: &ComplexVector,
    max_degree: u32,
    witnesses: &[JSetWitness],
    params: &AnalysisParams,
) -> Result<CorrespondenceReport> {
    let orbit = orbit_correspondence(gens, x, max_degree, params.norm_cap)?;
    let transfers = witnesses.iter().map(|w| transfer_check(gens, w, params)).collect::<Result<Vec<_>>>()?;
    let pass = orbit.pass && transfers.iter().all(|t| t.pass);
    Ok(CorrespondenceReport {
        point: x.clone(),
        orbit,
        transfers,
        outcome: if pass { CheckOutcome::Pass } else { CheckOutcome::Fail },
    })
}

/// Maximum number of witnesses from the `w₀` scan pushed through the transfer check.
pub const MAX_TRANSFER_WITNESSES: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationBundle {
    pub hypercyclicity: HypercyclicityReport,
    pub theorem1: Vec<Theorem1Check>,
    pub correspondence: CorrespondenceReport,
    pub locus: Option<LocusCheck>,
    pub outcome: CheckOutcome,
}

/// All checks at `w₀` and at the extra points. The outcome is `Fail` iff some
/// sub-check fails.
pub fn verify(
    gens: &GeneratorSet,
    extra_points: &[ComplexVector],
    params: &AnalysisParams,
) -> Result<VerificationBundle> {
    let nf = compute_normal_form(gens)?;
    let (report, scan) = report_from_scan(&nf, params)?;
    let mut theorem1 = vec![theorem1_check(&nf, &nf.w0, params)?];
    for v in extra_points {
        theorem1.push(theorem1_check(&nf, v, params)?);
    }
    let witnesses: Vec<JSetWitness> =
        scan.iter().filter_map(|(_, r)| r.witness().cloned()).take(MAX_TRANSFER_WITNESSES).collect();
    let correspondence = lemma_correspondence_check(gens, &nf.w0, params.max_degree.min(6), &witnesses, params)?;
    let locus = if report.verdict == Verdict::EvidenceNotHypercyclic {
        let mut samples = default_sample_points(&nf, params);
        samples.extend(extra_points.iter().cloned());
        Some(locus_containment_check(&nf, report.verdict, &samples, params)?)
    } else {
        None
    };
    let failed = theorem1.iter().any(|t| t.outcome == CheckOutcome::Fail)
        || correspondence.outcome == CheckOutcome::Fail
        || locus.as_ref().is_some_and(|l| l.outcome == CheckOutcome::Fail);
    Ok(VerificationBundle {
        hypercyclicity: report,
        theorem1,
        correspondence,
        locus,
        outcome: if failed { CheckOutcome::Fail } else { CheckOutcome::Pass },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::jset_witness;
    use crate::systems;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn pt(re: f64) -> ComplexVector {
        ComplexVector::from_real(&[re])
    }

    #[test]
    fn verdict_thresholds() {
        let t = Thresholds::default();
        assert_eq!(verdict(0.95, 0.95, &t), Verdict::EvidenceHypercyclic);
        assert_eq!(verdict(0.95, 0.5, &t), Verdict::Inconclusive);
        assert_eq!(verdict(0.1, 0.95, &t), Verdict::EvidenceNotHypercyclic);
        assert_eq!(verdict(0.5, 0.5, &t), Verdict::Inconclusive);
    }

    #[test]
    fn translation_pair_is_not_hypercyclic() {
        let r = hypercyclicity_report(&systems::translation_pair(), &AnalysisParams::default()).unwrap();
        assert_eq!(r.w0, pt(0.0));
        assert!(r.density.score <= 0.2);
        assert_eq!(r.verdict, Verdict::EvidenceNotHypercyclic);
    }

    #[test]
    fn identity_is_not_hypercyclic() {
        let r = hypercyclicity_report(&systems::identity_only(), &AnalysisParams::default()).unwrap();
        assert_eq!(r.density.covered_cells, 1);
        assert_eq!(r.verdict, Verdict::EvidenceNotHypercyclic);
    }

    #[test]
    fn theorem1_outside_u_is_vacuous() {
        let nf = compute_normal_form(&systems::dilation_pair()).unwrap();
        let t = theorem1_check(&nf, &pt(0.0), &AnalysisParams::default()).unwrap();
        assert_eq!(t.outcome, CheckOutcome::Vacuous);
        assert!(!t.membership.inside);
        assert_eq!(t.jset_score, None);
    }

    #[test]
    fn theorem1_translation_is_vacuous() {
        let nf = compute_normal_form(&systems::translation_line()).unwrap();
        let t = theorem1_check(&nf, &pt(0.0), &AnalysisParams::default()).unwrap();
        assert_eq!(t.outcome, CheckOutcome::Vacuous);
        assert!(t.jset_score.unwrap() < 0.9);
    }

    #[test]
    fn theorem1_passes_when_thresholds_are_met() {
        let nf = compute_normal_form(&systems::rotation_dilation()).unwrap();
        let params = AnalysisParams {
            max_degree: 40,
            thresholds: Thresholds { tau_hyp: 0.01, tau_conc: 0.05, tau_neg: 0.0 },
            ..AnalysisParams::default()
        };
        let t = theorem1_check(&nf, &nf.w0, &params).unwrap();
        assert_eq!(t.outcome, CheckOutcome::Pass);
        let strict = AnalysisParams { thresholds: Thresholds { tau_conc: 0.5, ..params.thresholds.clone() }, ..params };
        assert_eq!(theorem1_check(&nf, &nf.w0, &strict).unwrap().outcome, CheckOutcome::Fail);
    }

    #[test]
    fn scalar_extension_examples() {
        let g = systems::dilation();
        let x = ComplexVector::from_real(&[1.0, 1.0]);
        let plain = ScalarExtensionElement::new(c(1.0, 0.0), Word::new(vec![3])).unwrap();
        assert_eq!(scalar_extension_apply(&plain, &g, &x).unwrap(), ComplexVector::from_real(&[1.0, 8.0]));
        let scaled = ScalarExtensionElement::new(c(2.0, 0.0), Word::new(vec![0])).unwrap();
        assert_eq!(scalar_extension_apply(&scaled, &g, &x).unwrap(), ComplexVector::from_real(&[2.0, 2.0]));
        for m in [1u32, 5, 20] {
            let e = ScalarExtensionElement::new(c(0.5f64.powi(m as i32), 0.0), Word::new(vec![m])).unwrap();
            let y = scalar_extension_apply(&e, &g, &x).unwrap();
            assert_eq!(y, ComplexVector::from_real(&[0.5f64.powi(m as i32), 1.0]));
        }
        assert!(ScalarExtensionElement::new(c(0.0, 0.0), Word::new(vec![1])).is_err());
    }

    #[test]
    fn contraction_witness_transfers() {
        let g = systems::contraction();
        let params = AnalysisParams::default();
        let w = jset_witness(&g, &pt(1.0), &pt(0.0), &params.jset_params()).unwrap();
        let w = w.witness().unwrap();
        let up = witness_up(&g, w).unwrap();
        assert_eq!(up.target, ComplexVector::from_real(&[1.0, 0.0]));
        assert!(up.starts.iter().all(|s| s[0] == c(1.0, 0.0)));
        let t = transfer_check(&g, w, &params).unwrap();
        assert!(t.pass, "{t:?}");
        assert!(t.involution);
    }

    #[test]
    fn scaled_witness_down_conversion() {
        let g = systems::contraction();
        let params = AnalysisParams::default();
        let w = jset_witness(&g, &pt(1.0), &pt(0.0), &params.jset_params()).unwrap().witness().unwrap().clone();
        let sw = synthetic_scaled_witness(&g, &w).unwrap();
        assert_eq!(sw.elements[0].scale(), c(2.0, 0.0));
        assert_eq!(sw.elements[1].scale(), c(1.5, 0.0));
        let (back, residual) = witness_down(&g, &sw, &w.base_point, params.norm_cap).unwrap();
        assert_eq!(back.words, w.words);
        assert!(residual <= 1e-12);
        assert!((back.final_distance - w.final_distance).abs() <= 1e-12);
    }

    #[test]
    fn translation_orbit_correspondence() {
        let r = orbit_correspondence(&systems::translation_line(), &pt(0.0), 5, DEFAULT_NORM_CAP).unwrap();
        assert_eq!(r.words, 6);
        assert_eq!(r.worst_residual, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn locus_for_single_block_system() {
        let g = systems::translation_pair();
        let nf = compute_normal_form(&g).unwrap();
        let params = AnalysisParams { max_degree: 10, random_samples: 2, ..AnalysisParams::default() };
        let samples = default_sample_points(&nf, &params);
        assert_eq!(samples.len(), 1 + 4 + 2);
        let l = locus_containment_check(&nf, Verdict::EvidenceNotHypercyclic, &samples, &params).unwrap();
        assert_eq!(l.hyperplane_count, 0);
        assert_eq!(l.outcome, CheckOutcome::Vacuous);
        assert!(l.samples.iter().all(|s| !s.high));
    }

    #[test]
    fn locus_for_dilation() {
        let g = systems::dilation();
        let nf = compute_normal_form(&g).unwrap();
        let params = AnalysisParams { max_degree: 20, ..AnalysisParams::default() };
        let samples = vec![pt(0.0), pt(1.0), pt(-0.5)];
        let l = locus_containment_check(&nf, Verdict::EvidenceNotHypercyclic, &samples, &params).unwrap();
        assert_eq!(l.hyperplane_count, 1);
        assert!(l.invariance_residual <= 1e-9);
        // any high-score sample must sit on H = {0}
        for s in l.samples.iter().filter(|s| s.high) {
            assert_eq!(s.distance, Some(0.0));
        }
        assert_ne!(l.outcome, CheckOutcome::Fail);
    }

    #[test]
    fn locus_not_applicable_without_negative_verdict() {
        let nf = compute_normal_form(&systems::dilation()).unwrap();
        let l = locus_containment_check(&nf, Verdict::Inconclusive, &[pt(1.0)], &AnalysisParams::default()).unwrap();
        assert!(!l.applicable);
        assert!(l.samples.is_empty());
        assert_eq!(l.outcome, CheckOutcome::Vacuous);
    }
}
