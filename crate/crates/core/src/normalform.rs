//! Simultaneous block-triangular normal form of a commuting family of
//! homogenized affine maps.
//!
//! For generators `f₁,…,f_p` with homogenizations `M_i`, we look for
//! `P = [[1, 0], [d, Q]]` such that every `P⁻¹ M_i P` is block diagonal with
//! respect to a partition `η = (n₁,…,n_r)` of `n+1`, each block lower
//! triangular with a constant diagonal. The blocks are the joint generalized
//! eigenspaces of the family; inside each block a flag is built from the
//! nilpotent parts. The block that meets the chart `{x₀ = 1}` always carries
//! the eigenvalue tuple `(1,…,1)` and is placed first, with only its leading
//! basis vector leaving the hyperplane `{x₀ = 0}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homogenize::{dehomogenize, homogenize, invert, lift, second_projection, HomogenizedMatrix};
use crate::linalg;
use crate::model::{AffineMap, ComplexMatrix, ComplexScalar, ComplexVector, GeneratorSet};

/// Eigenvalue clustering threshold, relative to `max(1, spectral radius)`.
pub const DEFAULT_CLUSTER_TOLERANCE: f64 = 1e-7;
/// Clustering is escalated by factors of ten up to this relative threshold
/// when cluster sizes disagree with generalized-kernel dimensions.
pub const MAX_CLUSTER_TOLERANCE: f64 = 1e-3;
/// Relative singular-value threshold for numerical rank decisions.
pub const RANK_TOLERANCE: f64 = 1e-9;
/// Below this smallest singular value a matrix is shifted before decomposition.
pub const INVERTIBILITY_THRESHOLD: f64 = 1e-8;
pub const STRUCTURE_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MEMBERSHIP_TOLERANCE: f64 = 1e-9;
/// Largest first coordinate tolerated on a basis vector that must lie in `{x₀ = 0}`.
const CHART_LEAK_TOLERANCE: f64 = 1e-8;

const ONE: ComplexScalar = ComplexScalar::new(1.0, 0.0);
const ZERO: ComplexScalar = ComplexScalar::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct Shift {
    pub shifted: ComplexMatrix,
    pub lambda: ComplexScalar,
}

/// Returns `M − λI` with `λ` outside the spectrum of `M`; `λ = 0` when `M` is
/// already comfortably invertible, otherwise `λ = 1 + max|eigenvalue|`.
pub fn shift_to_invertible(m: &ComplexMatrix) -> Result<Shift> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
            context: "shift of non-square matrix",
        });
    }
    if linalg::smallest_singular_value(m) >= INVERTIBILITY_THRESHOLD {
        return Ok(Shift { shifted: m.clone(), lambda: ZERO });
    }
    let radius = linalg::eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lambda = ComplexScalar::new(1.0 + radius, 0.0);
    Ok(Shift { shifted: m.shift(lambda), lambda })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum SpectralWarning {
    /// Two eigenvalues sit just outside the merge threshold.
    IllConditionedSpectrum { matrix: usize, gap: f64, threshold: f64 },
    /// The clustering threshold had to be raised to make cluster sizes agree
    /// with generalized-kernel dimensions.
    ClusterEscalated { matrix: usize, threshold: f64 },
}

/// One joint generalized eigenspace: an orthonormal basis and the eigenvalue
/// of each input matrix on it.
#[derive(Clone, Debug, PartialEq)]
pub struct JointEigenspace {
    pub basis: Vec<ComplexVector>,
    pub eigenvalues: Vec<ComplexScalar>,
}

impl JointEigenspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub spaces: Vec<JointEigenspace>,
    pub warnings: Vec<SpectralWarning>,
}

impl Decomposition {
    /// Spectral projectors onto each space along the direct sum of the others.
    pub fn projectors(&self) -> Result<Vec<ComplexMatrix>> {
        let columns: Vec<ComplexVector> = self.spaces.iter().flat_map(|s| s.basis.iter().cloned()).collect();
        let t = ComplexMatrix::from_columns(&columns)?;
        let t_inv = linalg::inverse(&t)?;
        let n = t.rows();
        let mut offset = 0;
        let mut out = Vec::with_capacity(self.spaces.len());
        for s in &self.spaces {
            let mut e = ComplexMatrix::zeros(n, n);
            for k in offset..offset + s.dim() {
                e[(k, k)] = ONE;
            }
            offset += s.dim();
            out.push(t.mul(&e).mul(&t_inv));
        }
        Ok(out)
    }
}

/// Joint generalized eigenspaces of a commuting family of square matrices.
pub fn common_generalized_eigenspaces(mats: &[ComplexMatrix], tol: f64) -> Result<Decomposition> {
    common_generalized_eigenspaces_with(mats, tol, DEFAULT_CLUSTER_TOLERANCE)
}

pub fn common_generalized_eigenspaces_with(
    mats: &[ComplexMatrix],
    tol: f64,
    cluster_tol: f64,
) -> Result<Decomposition> {
    let first = mats.first().ok_or_else(|| Error::InvalidArgument("empty matrix family".into()))?;
    let n = first.rows();
    for m in mats {
        if !m.is_square() || m.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.rows(), context: "matrix family" });
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let c = mats[i].commutator_norm(&mats[j]);
            if c > tol {
                return Err(Error::NotAbelian { worst: c, tolerance: tol, pair: (i, j) });
            }
        }
    }

    let mut warnings = Vec::new();
    let identity = ComplexMatrix::identity(n);
    let mut spaces = vec![JointEigenspace { basis: (0..n).map(|j| identity.column(j)).collect(), eigenvalues: vec![] }];
    for (idx, m) in mats.iter().enumerate() {
        let Shift { shifted, lambda } = shift_to_invertible(m)?;
        let mut refined = Vec::new();
        for space in spaces {
            let b = ComplexMatrix::from_columns(&space.basis)?;
            let restricted = conjugate_transpose(&b).mul(&shifted).mul(&b);
            for (mu, coords) in generalized_eigenspaces(&restricted, cluster_tol, idx, &mut warnings)? {
                let basis = coords.iter().map(|c| b.mul_vec(c)).collect();
                let mut eigenvalues = space.eigenvalues.clone();
                eigenvalues.push(mu + lambda);
                refined.push(JointEigenspace { basis, eigenvalues });
            }
        }
        spaces = refined;
    }
    Ok(Decomposition { spaces, warnings })
}

/// Generalized eigenspaces of one matrix: `(mean eigenvalue, orthonormal basis)`
/// per cluster, clusters in lexicographic order of their means.
fn generalized_eigenspaces(
    m: &ComplexMatrix,
    cluster_tol: f64,
    matrix_index: usize,
    warnings: &mut Vec<SpectralWarning>,
) -> Result<Vec<(ComplexScalar, Vec<ComplexVector>)>> {
    let d = m.rows();
    let ev = linalg::eigenvalues(m)?;
    let scale = ev.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut threshold = cluster_tol * scale;
    let mut escalated = false;
    loop {
        let clusters = single_linkage(&ev, threshold);
        let mut spaces = Vec::with_capacity(clusters.len());
        let mut consistent = true;
        for cluster in &clusters {
            let k = cluster.len();
            let mu = cluster.iter().map(|&i| ev[i]).sum::<ComplexScalar>() / k as f64;
            let kernel = linalg::null_space(&m.shift(mu).pow(k as u32), RANK_TOLERANCE);
            if kernel.len() != k {
                consistent = false;
                break;
            }
            spaces.push((mu, kernel));
        }
        if consistent && spaces.iter().map(|s| s.1.len()).sum::<usize>() == d {
            if escalated {
                warnings.push(SpectralWarning::ClusterEscalated { matrix: matrix_index, threshold });
            }
            for i in 0..ev.len() {
                for j in i + 1..ev.len() {
                    let gap = (ev[i] - ev[j]).norm();
                    if gap > threshold && gap <= 10.0 * threshold {
                        warnings.push(SpectralWarning::IllConditionedSpectrum { matrix: matrix_index, gap, threshold });
                    }
                }
            }
            spaces.sort_by(|a, b| lex_cmp(a.0, b.0));
            return Ok(spaces);
        }
        threshold *= 10.0;
        escalated = true;
        if threshold > MAX_CLUSTER_TOLERANCE * scale * (1.0 + 1e-12) {
            return Err(Error::NormalFormFailure {
                reason: format!(
                    "eigenvalue clusters of matrix {matrix_index} disagree with generalized kernel dimensions"
                ),
                residual: threshold,
            });
        }
    }
}

/// Connected components of the graph joining eigenvalues closer than `threshold`.
fn single_linkage(ev: &[ComplexScalar], threshold: f64) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..ev.len()).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..ev.len() {
        for j in i + 1..ev.len() {
            if (ev[i] - ev[j]).norm() <= threshold {
                let (a, b) = (root(&mut label, i), root(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..ev.len() {
        let r = root(&mut label, i);
        match roots.iter().position(|&x| x == r) {
            Some(g) => groups[g].push(i),
            None => {
                roots.push(r);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

fn lex_cmp(a: ComplexScalar, b: ComplexScalar) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn lex_cmp_tuple(a: &[ComplexScalar], b: &[ComplexScalar]) -> std::cmp::Ordering {
    a.iter().zip(b).map(|(x, y)| lex_cmp(*x, *y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

fn conjugate_transpose(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(j, i)] = m[(i, j)].conj();
        }
    }
    out
}

/// Basis `b_1,…,b_m` of the invariant subspace spanned by the orthonormal
/// `basis` such that every nilpotent `N_i` maps `b_j` into `span(b_{j+1},…,b_m)`.
///
/// Vectors are picked bottom-up: each pick is annihilated by every `N_i`
/// modulo the span of earlier picks. Among candidates, the projection of the
/// first unit vector `e_j` with a substantial component is taken and scaled
/// so that its `j`-th coordinate is 1.
fn build_flag(basis: &[ComplexVector], nilpotents: &[ComplexMatrix]) -> Result<Vec<ComplexVector>> {
    let m = basis.len();
    if m == 0 {
        return Ok(vec![]);
    }
    let ambient = basis[0].dim();
    let b = ComplexMatrix::from_columns(basis)?;
    let mut picks: Vec<ComplexVector> = Vec::with_capacity(m);
    let mut span: Vec<ComplexVector> = Vec::with_capacity(m);
    while picks.len() < m {
        // rows: (I − Π_F)·N_i·B for every i, stacked
        let mut system = ComplexMatrix::zeros(nilpotents.len() * ambient, m);
        for (k, n) in nilpotents.iter().enumerate() {
            let nb = n.mul(&b);
            for j in 0..m {
                let col = nb.column(j);
                let residual = col.sub(&linalg::project(&span, &col));
                for i in 0..ambient {
                    system[(k * ambient + i, j)] = residual[i];
                }
            }
        }
        let kernel: Vec<ComplexVector> =
            linalg::null_space(&system, RANK_TOLERANCE).iter().map(|c| b.mul_vec(c)).collect();
        let mut with_span = span.clone();
        with_span.extend(kernel);
        let candidates: Vec<ComplexVector> = linalg::orthonormalize(&with_span, 1e-6).split_off(span.len());
        if candidates.is_empty() {
            return Err(Error::NormalFormFailure {
                reason: "no common kernel vector for the nilpotent parts".into(),
                residual: f64::NAN,
            });
        }
        let weights: Vec<f64> = (0..ambient).map(|j| candidates.iter().map(|q| q[j].norm_sqr()).sum::<f64>()).collect();
        let best = weights.iter().copied().fold(0.0, f64::max);
        let j = weights.iter().position(|&w| w >= 0.5 * best).expect("nonempty candidate space");
        let unit = ComplexVector::from_vec((0..ambient).map(|i| if i == j { ONE } else { ZERO }).collect());
        let v = linalg::project(&candidates, &unit);
        let v = v.scale(ONE / v[j]);
        span = linalg::orthonormalize(&[span.clone(), vec![v.clone()]].concat(), 0.0);
        picks.push(v);
    }
    picks.reverse();
    Ok(picks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Index of the first coordinate of each block.
    pub fn leading_indices(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                let start = *acc;
                *acc += p;
                Some(start)
            })
            .collect()
    }

    fn block_of(&self) -> Vec<usize> {
        self.parts.iter().enumerate().flat_map(|(k, &p)| std::iter::repeat_n(k, p)).collect()
    }
}

/// Largest deviation of `m` from `𝕋_{n₁}⊕⋯⊕𝕋_{n_r}`: entries outside the
/// diagonal blocks, entries above the diagonal, and spread of each block's
/// diagonal.
pub fn block_triangular_residual(m: &ComplexMatrix, partition: &Partition) -> f64 {
    assert_eq!(m.rows(), partition.total());
    let block = partition.block_of();
    let leading = partition.leading_indices();
    let mut worst: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            if block[i] != block[j] || j > i {
                worst = worst.max(z.norm());
            } else if i == j {
                let lead = leading[block[i]];
                worst = worst.max((z - m[(lead, lead)]).norm());
            }
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockTriangularForm {
    pub matrices: Vec<ComplexMatrix>,
    pub partition: Partition,
}

impl BlockTriangularForm {
    pub fn residual(&self) -> f64 {
        self.matrices.iter().map(|m| block_triangular_residual(m, &self.partition)).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalFormResiduals {
    /// `max_i ‖P·conj_i·P⁻¹ − Φ(f_i)‖`.
    pub reconstruction: f64,
    /// `‖P·P⁻¹ − I‖`.
    pub inverse: f64,
    /// Worst deviation from the block-triangular shape.
    pub structure: f64,
    /// Largest first coordinate zeroed on non-leading basis vectors.
    pub chart_leak: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormData {
    pub generators: GeneratorSet,
    pub conjugator: HomogenizedMatrix,
    pub conjugator_inverse: ComplexMatrix,
    pub partition: Partition,
    pub conjugated: BlockTriangularForm,
    /// Eigenvalue of each generator on each block, block-major.
    pub block_eigenvalues: Vec<Vec<ComplexScalar>>,
    pub u0: ComplexVector,
    pub v0: ComplexVector,
    pub w0: ComplexVector,
    pub phi_map: AffineMap,
    pub residuals: NormalFormResiduals,
    pub warnings: Vec<SpectralWarning>,
}

pub fn compute_normal_form(gens: &GeneratorSet) -> Result<NormalFormData> {
    gens.ensure_abelian()?;
    let mats = gens.homogenized();
    let big_n = gens.dimension() + 1;
    let decomposition = common_generalized_eigenspaces(&mats, gens.commutation_tolerance())?;

    // the chart block is the only joint eigenspace leaving {x₀ = 0}
    let first_coord_weight = |s: &JointEigenspace| s.basis.iter().map(|v| v[0].norm_sqr()).sum::<f64>().sqrt();
    let (chart_idx, _) = decomposition
        .spaces
        .iter()
        .enumerate()
        .map(|(i, s)| (i, first_coord_weight(s)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty decomposition");
    let mut chart_leak: f64 = 0.0;
    for (i, s) in decomposition.spaces.iter().enumerate() {
        if i != chart_idx {
            chart_leak = chart_leak.max(first_coord_weight(s));
        }
    }
    let chart = &decomposition.spaces[chart_idx];
    let off_one = chart.eigenvalues.iter().map(|&z| (z - ONE).norm()).fold(0.0, f64::max);
    if off_one > 1e-6 || chart_leak > CHART_LEAK_TOLERANCE {
        return Err(Error::NormalFormFailure {
            reason: "joint eigenspace structure does not isolate the eigenvalue-1 chart block".into(),
            residual: off_one.max(chart_leak),
        });
    }

    let mut others: Vec<&JointEigenspace> =
        decomposition.spaces.iter().enumerate().filter(|(i, _)| *i != chart_idx).map(|(_, s)| s).collect();
    others.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| lex_cmp_tuple(&a.eigenvalues, &b.eigenvalues)));

    let nilpotents = |s: &JointEigenspace| -> Vec<ComplexMatrix> {
        mats.iter().zip(&s.eigenvalues).map(|(m, &mu)| m.shift(mu)).collect()
    };

    let mut columns: Vec<ComplexVector> = Vec::with_capacity(big_n);
    let mut parts = Vec::new();
    let mut block_eigenvalues = Vec::new();

    // chart block: leading vector has x₀ = 1, the rest of the flag lives in S ∩ {x₀ = 0}
    let b = ComplexMatrix::from_columns(&chart.basis)?;
    let first_row = b.submatrix(0, 0, 1, b.cols());
    let inside: Vec<ComplexVector> =
        linalg::null_space(&first_row, RANK_TOLERANCE).iter().map(|c| b.mul_vec(c)).collect();
    if inside.len() + 1 != chart.dim() {
        return Err(Error::NormalFormFailure {
            reason: "chart block does not meet {x0 = 0} in codimension one".into(),
            residual: first_coord_weight(chart),
        });
    }
    let e0 = ComplexVector::from_vec((0..big_n).map(|i| if i == 0 { ONE } else { ZERO }).collect());
    let lead = linalg::project(&chart.basis, &e0);
    let mut lead = lead.scale(ONE / lead[0]);
    lead = with_coordinate(lead, 0, ONE);
    columns.push(lead);
    for v in build_flag(&inside, &nilpotents(chart))? {
        chart_leak = chart_leak.max(v[0].norm());
        columns.push(with_coordinate(v, 0, ZERO));
    }
    parts.push(chart.dim());
    block_eigenvalues.push(chart.eigenvalues.clone());

    for s in others {
        for v in build_flag(&s.basis, &nilpotents(s))? {
            chart_leak = chart_leak.max(v[0].norm());
            columns.push(with_coordinate(v, 0, ZERO));
        }
        parts.push(s.dim());
        block_eigenvalues.push(s.eigenvalues.clone());
    }
    if chart_leak > CHART_LEAK_TOLERANCE {
        return Err(Error::NormalFormFailure {
            reason: "flag vectors leave the hyperplane {x0 = 0}".into(),
            residual: chart_leak,
        });
    }

    let p = ComplexMatrix::from_columns(&columns)?;
    let conjugator = HomogenizedMatrix::new(p.clone())?;
    let phi_map = dehomogenize(&p)?;
    let conjugator_inverse = homogenize(&invert(&phi_map)?).into_matrix();
    let partition = Partition::new(parts)?;

    let conjugated: Vec<ComplexMatrix> = mats.iter().map(|m| conjugator_inverse.mul(m).mul(&p)).collect();
    let reconstruction =
        conjugated.iter().zip(&mats).map(|(c, m)| p.mul(c).mul(&conjugator_inverse).distance(m)).fold(0.0, f64::max);
    let inverse = p.mul(&conjugator_inverse).distance(&ComplexMatrix::identity(big_n));
    let conjugated = BlockTriangularForm { matrices: conjugated, partition: partition.clone() };
    let structure = conjugated.residual();
    let residuals = NormalFormResiduals { reconstruction, inverse, structure, chart_leak };
    if structure > STRUCTURE_TOLERANCE {
        return Err(Error::NormalFormFailure {
            reason: "conjugated generators are not block lower-triangular with constant diagonals".into(),
            residual: structure,
        });
    }

    let mut u0 = vec![ZERO; big_n];
    for i in partition.leading_indices() {
        u0[i] = ONE;
    }
    let u0 = ComplexVector::from_vec(u0);
    let v0 = p.mul_vec(&u0);
    let w0 = second_projection(&v0)?;

    Ok(NormalFormData {
        generators: gens.clone(),
        conjugator,
        conjugator_inverse,
        partition,
        conjugated,
        block_eigenvalues,
        u0,
        v0,
        w0,
        phi_map,
        residuals,
        warnings: decomposition.warnings,
    })
}

fn with_coordinate(v: ComplexVector, i: usize, value: ComplexScalar) -> ComplexVector {
    let mut e = v.into_entries();
    e[i] = value;
    ComplexVector::from_vec(e)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub inside: bool,
    /// Smallest modulus among the leading coordinates of blocks `2..=r`;
    /// `None` when `r = 1`.
    pub margin: Option<f64>,
    /// 1-based index of the block attaining the margin.
    pub blocking_block: Option<usize>,
}

impl NormalFormData {
    pub fn dimension(&self) -> usize {
        self.generators.dimension()
    }

    /// Chart coordinates `(1, φ⁻¹(x))` of a point of ℂⁿ.
    pub fn model_coordinates(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if x.dim() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), found: x.dim(), context: "point" });
        }
        Ok(self.conjugator_inverse.mul_vec(&lift(x)))
    }

    /// Whether `x` lies in `U = φ(U')`, i.e. every non-chart block-leading
    /// coordinate of `φ⁻¹(x)` is nonzero.
    pub fn membership_u(&self, x: &ComplexVector, tolerance: f64) -> Result<Membership> {
        let y = self.model_coordinates(x)?;
        let leading = self.partition.leading_indices();
        let mut margin: Option<(f64, usize)> = None;
        for (k, &l) in leading.iter().enumerate().skip(1) {
            let m = y[l].norm();
            if margin.is_none_or(|(best, _)| m < best) {
                margin = Some((m, k + 1));
            }
        }
        Ok(match margin {
            None => Membership { inside: true, margin: None, blocking_block: None },
            Some((m, k)) => Membership { inside: m > tolerance, margin: Some(m), blocking_block: Some(k) },
        })
    }

    pub fn critical_hyperplanes(&self) -> CriticalLocus {
        critical_hyperplanes(self)
    }
}

pub fn membership_u(nf: &NormalFormData, x: &ComplexVector, tolerance: f64) -> Result<Membership> {
    nf.membership_u(x, tolerance)
}

/// Affine hyperplane `{x : ⟨normal, x⟩ + offset = 0}` of ℂⁿ (bilinear pairing,
/// no conjugation), also given by a base point and `n−1` directions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hyperplane {
    /// 1-based block index `k ≥ 2`.
    pub block: usize,
    pub base_point: ComplexVector,
    pub directions: Vec<ComplexVector>,
    pub normal: ComplexVector,
    pub offset: ComplexScalar,
    /// Worst Euclidean distance from the hyperplane of a generator image of the affine frame.
    pub invariance_residual: f64,
}

impl Hyperplane {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn evaluate(&self, x: &ComplexVector) -> ComplexScalar {
        self.normal.entries().iter().zip(x.entries()).map(|(a, b)| a * b).sum::<ComplexScalar>() + self.offset
    }

    /// Euclidean distance from `x`.
    pub fn distance(&self, x: &ComplexVector) -> f64 {
        self.evaluate(x).norm() / self.normal.euclidean_norm()
    }

    /// Base point followed by base point + each direction.
    pub fn frame(&self) -> Vec<ComplexVector> {
        std::iter::once(self.base_point.clone()).chain(self.directions.iter().map(|d| self.base_point.add(d))).collect()
    }

    pub fn invariance_residual(&self, gens: &GeneratorSet) -> f64 {
        let frame = self.frame();
        gens.generators().iter().flat_map(|f| frame.iter().map(move |s| self.distance(&f.apply(s)))).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalLocus {
    pub hyperplanes: Vec<Hyperplane>,
}

impl CriticalLocus {
    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Euclidean distance to the union, `None` for the empty locus.
    pub fn distance(&self, x: &ComplexVector) -> Option<f64> {
        self.hyperplanes.iter().map(|h| h.distance(x)).reduce(f64::min)
    }

    pub fn invariance_residual(&self, gens: &GeneratorSet) -> f64 {
        self.hyperplanes.iter().map(|h| h.invariance_residual(gens)).fold(0.0, f64::max)
    }
}

/// `H_k = φ(L_k)` for `k = 2,…,r`, where `L_k` is the hyperplane on which the
/// leading coordinate of block `k` vanishes.
pub fn critical_hyperplanes(nf: &NormalFormData) -> CriticalLocus {
    let n = nf.dimension();
    let p = nf.conjugator.matrix();
    let base = nf.phi_map.translation().clone();
    let hyperplanes = nf
        .partition
        .leading_indices()
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, l)| {
            let row = nf.conjugator_inverse.row(l);
            let offset = row[0];
            let normal = ComplexVector::from_vec(row[1..].to_vec());
            let directions =
                (1..=n).filter(|&j| j != l).map(|j| second_projection(&p.column(j)).expect("order >= 2")).collect();
            let mut h = Hyperplane {
                block: k + 1,
                base_point: base.clone(),
                directions,
                normal,
                offset,
                invariance_residual: 0.0,
            };
            h.invariance_residual = h.invariance_residual(&nf.generators);
            h
        })
        .collect();
    CriticalLocus { hyperplanes }
}
