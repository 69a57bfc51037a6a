//! Statistical checkers for Gaussian correlation inequalities.
//!
//! Every checker estimates both sides of one inequality `lhs ≤ rhs`, carries
//! a confidence interval for each side, and reports a three-valued verdict:
//! `confirmed` when the intervals separate in the claimed direction,
//! `violated` when they separate the other way, `inconclusive` otherwise.
//! All measures inside one report share the budget's seed.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::body::{Shape, SymmetricConvexBody, TranslatedBody};
use crate::error::{Error, Result};
use crate::gaussian::{
    measure, measure_minkowski_image, measure_region, measure_region_with_design, Budget, MeasureEstimate,
    SignDesign,
};
use crate::linalg::{self, Matrix};
use crate::matrix_lab::{check_hypotheses, correlation_block, symmetric_psd_sqrt, MatrixQuintuple};
use crate::minkowski::{minkowski_member, MinkowskiImage, MinkowskiVerdict, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::region::{FnRegion, Meet};

/// Radius factor for the small-body correlation inequality: bodies inside
/// `0.374 √n 𝔹` are covered.
pub const SMALL_RADIUS_FACTOR: f64 = 0.374;
/// Probes used by the containment certificate when no closed-form radius
/// bound is available.
pub const CONTAINMENT_PROBES: usize = 100_000;
const HYPOTHESIS_TOL: f64 = 1e-8;

/// A value with a (conservative) two-sided interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub value: f64,
    pub low: f64,
    pub high: f64,
}

impl Bounds {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            low: value,
            high: value,
        }
    }

    /// Interval product of non-negative quantities; the result covers the
    /// true product whenever both factors are covered (union bound).
    pub fn times(self, other: Bounds) -> Bounds {
        Bounds {
            value: self.value * other.value,
            low: self.low * other.low,
            high: self.high * other.high,
        }
    }

    pub fn scale(self, c: f64) -> Bounds {
        debug_assert!(c >= 0.0);
        Bounds {
            value: self.value * c,
            low: self.low * c,
            high: self.high * c,
        }
    }
}

impl From<MeasureEstimate> for Bounds {
    fn from(e: MeasureEstimate) -> Self {
        Bounds {
            value: e.value,
            low: e.ci_low,
            high: e.ci_high,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Violated,
    Inconclusive,
}

impl Verdict {
    /// Verdict for the claim `lhs ≤ rhs`.
    pub fn compare(lhs: &Bounds, rhs: &Bounds) -> Verdict {
        if lhs.high <= rhs.low {
            Verdict::Confirmed
        } else if lhs.low > rhs.high {
            Verdict::Violated
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub n: usize,
    pub lhs: Bounds,
    pub rhs: Bounds,
    /// `rhs.value − lhs.value`
    pub margin: f64,
    pub verdict: Verdict,
    pub samples: usize,
    pub seed: u64,
    pub params: String,
}

impl InequalityReport {
    pub fn from_parts(name: &str, n: usize, lhs: Bounds, rhs: Bounds, budget: &Budget, params: String) -> Self {
        Self {
            name: name.to_string(),
            n,
            lhs,
            rhs,
            margin: rhs.value - lhs.value,
            verdict: Verdict::compare(&lhs, &rhs),
            samples: budget.samples(),
            seed: budget.seed(),
            params,
        }
    }
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ")
}

/// Short human-readable description of a body for report parameters.
pub fn describe(body: &SymmetricConvexBody) -> String {
    match body.shape() {
        Shape::Ball { radius } => format!("ball({radius:.6})"),
        Shape::Box { halfwidths } => format!("box({})", fmt_list(halfwidths)),
        Shape::Ellipsoid(e) => format!("ellipsoid(eig {})", fmt_list(e.eigenvalues())),
        Shape::Polytope { halfspaces } => format!("polytope({} pairs)", halfspaces.len()),
        Shape::LinearImage(li) => format!("image({})", describe(li.base())),
        Shape::Intersection(a, b) => format!("meet({}, {})", describe(a), describe(b)),
    }
}

fn check_dims(a: &SymmetricConvexBody, b: &SymmetricConvexBody) -> Result<usize> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(a.dim())
}

/// `A ∩ B`, collapsed to a primitive when both are balls or both are boxes.
pub fn meet(a: &SymmetricConvexBody, b: &SymmetricConvexBody) -> Result<SymmetricConvexBody> {
    check_dims(a, b)?;
    match (a.shape(), b.shape()) {
        (Shape::Ball { radius: r }, Shape::Ball { radius: s }) => SymmetricConvexBody::ball(a.dim(), r.min(*s)),
        (Shape::Box { halfwidths: w }, Shape::Box { halfwidths: v }) => {
            SymmetricConvexBody::cube(w.iter().zip(v).map(|(x, y)| x.min(*y)).collect())
        }
        _ => SymmetricConvexBody::intersect(a.clone(), b.clone()),
    }
}

fn gamma(body: &SymmetricConvexBody, budget: &Budget) -> Result<Bounds> {
    Ok(measure(body, budget)?.into())
}

/// `γ(A) γ(B) ≤ γ(A ∩ B)`.
pub fn check_gcc(a: &SymmetricConvexBody, b: &SymmetricConvexBody, budget: &Budget) -> Result<InequalityReport> {
    gcc_report("gcc", a, b, budget, String::new())
}

fn gcc_report(
    name: &str,
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    budget: &Budget,
    extra: String,
) -> Result<InequalityReport> {
    let n = check_dims(a, b)?;
    let lhs = gamma(a, budget)?.times(gamma(b, budget)?);
    let rhs = gamma(&meet(a, b)?, budget)?;
    let mut params = format!("A={};B={}", describe(a), describe(b));
    if !extra.is_empty() {
        params.push(';');
        params.push_str(&extra);
    }
    Ok(InequalityReport::from_parts(name, n, lhs, rhs, budget, params))
}

/// `det(I − MᵀM)^{1/2} γ(PA) γ(RB) ≤ γ((S+T)⁻¹(A+B)) γ(A ∩ B)` for a
/// quintuple satisfying the hypotheses (checked at 1e−8).
pub fn check_main_theorem(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    q: &MatrixQuintuple,
    budget: &Budget,
) -> Result<InequalityReport> {
    theorem_report("main_theorem", a, b, q, budget, String::new())
}

fn theorem_report(
    name: &str,
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    q: &MatrixQuintuple,
    budget: &Budget,
    extra: String,
) -> Result<InequalityReport> {
    let n = check_dims(a, b)?;
    if q.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: q.n() });
    }
    let hyp = check_hypotheses(q, HYPOTHESIS_TOL)?;
    if !hyp.validated {
        return Err(Error::InvalidQuintuple {
            residual: hyp.max_residual(),
            min_eigenvalue: hyp.min_eigenvalue,
        });
    }
    let st = &q.s + &q.t;
    let cond = linalg::condition_number(&st);
    if !(cond < linalg::MAX_CONDITION) {
        return Err(Error::Singular(cond));
    }
    let id = Matrix::identity(n, n);
    let det = (&id - q.m.transpose() * &q.m).determinant();
    let factor = det.max(0.0).sqrt();

    let singular = |m: &Matrix| !(linalg::condition_number(m) < linalg::MAX_CONDITION);
    let lhs = if singular(&q.p) || singular(&q.r) {
        // PA or RB is degenerate and has measure zero
        Bounds::exact(0.0)
    } else {
        let pa = SymmetricConvexBody::linear_image(q.p.clone(), a.clone())?;
        let rb = SymmetricConvexBody::linear_image(q.r.clone(), b.clone())?;
        gamma(&pa, budget)?.times(gamma(&rb, budget)?).scale(factor)
    };
    let sum = MinkowskiImage::new(a.clone(), b.clone(), st)?;
    let rhs = Bounds::from(measure_minkowski_image(&sum, budget)?).times(gamma(&meet(a, b)?, budget)?);

    let mut params = format!(
        "A={};B={};det_factor={factor:.6};residual={:.3e}",
        describe(a),
        describe(b),
        hyp.max_residual()
    );
    if !extra.is_empty() {
        params.push(';');
        params.push_str(&extra);
    }
    Ok(InequalityReport::from_parts(name, n, lhs, rhs, budget, params))
}

/// `γ(2^{−1/2}A) γ(2^{−1/2}B) ≤ γ(½(A+B)) γ(A ∩ B)`, evaluated as the main
/// inequality with `M = 0, P = R = 2^{−1/2} I, S = T = I`.
pub fn check_ssz(a: &SymmetricConvexBody, b: &SymmetricConvexBody, budget: &Budget) -> Result<InequalityReport> {
    let n = check_dims(a, b)?;
    theorem_report("ssz", a, b, &MatrixQuintuple::ssz(n), budget, String::new())
}

/// `γ(pA) γ(rB) ≤ γ(pr(A+B)) γ(A ∩ B)` for `p, r > 0`, `p² + r² = 1`,
/// evaluated as the main inequality with `M = 0, P = pI, R = rI,
/// S = (r/p) I, T = (p/r) I`.
pub fn check_li(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    p: f64,
    r: f64,
    budget: &Budget,
) -> Result<InequalityReport> {
    if !(p > 0.0 && r > 0.0) || (p * p + r * r - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "need p, r > 0 with p^2 + r^2 = 1 (got p={p}, r={r})"
        )));
    }
    let n = check_dims(a, b)?;
    theorem_report("li", a, b, &MatrixQuintuple::li(n, p, r), budget, format!("p={p};r={r}"))
}

/// `γ(A) γ(B) ≤ (4/3)^{n/2} γ(√3/2 (A+B)) γ(A ∩ B)`.
pub fn check_corollary1(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    budget: &Budget,
) -> Result<InequalityReport> {
    let n = check_dims(a, b)?;
    let lhs = gamma(a, budget)?.times(gamma(b, budget)?);
    let sum = MinkowskiImage::scaled_sum(3f64.sqrt() / 2.0, a.clone(), b.clone())?;
    let factor = (4.0f64 / 3.0).powf(0.5 * n as f64);
    let rhs = Bounds::from(measure_minkowski_image(&sum, budget)?)
        .times(gamma(&meet(a, b)?, budget)?)
        .scale(factor);
    let params = format!("A={};B={}", describe(a), describe(b));
    Ok(InequalityReport::from_parts("corollary1", n, lhs, rhs, budget, params))
}

/// Certificate that `body ⊆ radius·𝔹`: a closed-form circumradius bound when
/// available, otherwise `CONTAINMENT_PROBES` points placed just outside the
/// ball (random directions plus coordinate axes), none of which may be
/// members. Returns a description of the certificate.
pub fn containment_certificate(body: &SymmetricConvexBody, radius: f64, seed: u64) -> Result<String> {
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    if let Some(r) = body.circumradius() {
        if r <= radius {
            return Ok(format!("circumradius {r:.6} <= {radius:.6}"));
        }
    }
    let n = body.dim();
    let just_outside = radius * (1.0 + 1e-9);
    let mut probe = vec![0.0; n];
    let mut check = |dir: &[f64]| -> Result<()> {
        let len = linalg::norm(dir);
        for (p, d) in probe.iter_mut().zip(dir) {
            *p = d / len * just_outside;
        }
        if body.contains_unchecked(&probe) {
            return Err(Error::Containment(format!(
                "point {:?} at distance {just_outside:.6} lies in the body",
                probe
            )));
        }
        Ok(())
    };
    for i in 0..n {
        let mut axis = vec![0.0; n];
        axis[i] = 1.0;
        check(&axis)?;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut dir = vec![0.0; n];
    for _ in 0..CONTAINMENT_PROBES {
        for d in dir.iter_mut() {
            *d = StandardNormal.sample(&mut rng);
        }
        check(&dir)?;
    }
    Ok(format!("{CONTAINMENT_PROBES} probes outside {radius:.6}"))
}

/// Correlation inequality for bodies inside `0.374 √n 𝔹`; fails with
/// [`Error::Containment`] if either body is not certified to lie inside.
pub fn check_small_radius(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    budget: &Budget,
) -> Result<InequalityReport> {
    let n = check_dims(a, b)?;
    let radius = SMALL_RADIUS_FACTOR * (n as f64).sqrt();
    let ca = containment_certificate(a, radius, budget.seed())?;
    let cb = containment_certificate(b, radius, budget.seed().wrapping_add(1))?;
    gcc_report("small_radius", a, b, budget, format!("A:{ca};B:{cb}"))
}

fn require_contraction(m: &Matrix) -> Result<f64> {
    let c = m.ncols();
    let gram = Matrix::identity(c, c) - m.transpose() * m;
    let min = linalg::min_eigenvalue(&gram);
    if !(min > 0.0) {
        return Err(Error::NotPositiveDefinite(min));
    }
    Ok(gram.determinant())
}

fn check_block_dims(a: &SymmetricConvexBody, b: &SymmetricConvexBody, m: &Matrix) -> Result<()> {
    if m.nrows() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: m.nrows(),
        });
    }
    if m.ncols() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: m.ncols(),
        });
    }
    Ok(())
}

/// `det(I − MᵀM)^{1/2} γ_m(A) γ_n(B) ≤ γ_{m+n}([[I, M], [Mᵀ, I]]^{1/2} (A × B))`
/// for an `m × n` matrix `M` with `I − MᵀM ≻ 0`.
pub fn check_lemma1(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    mmat: &Matrix,
    budget: &Budget,
) -> Result<InequalityReport> {
    check_block_dims(a, b, mmat)?;
    let det = require_contraction(mmat)?;
    let (m, n) = (a.dim(), b.dim());
    let product = gamma(a, budget)?.times(gamma(b, budget)?);
    let lhs = product.scale(det.sqrt());
    let rhs = if linalg::is_zero(mmat) {
        // the block root is the identity and the image is A × B itself
        product
    } else {
        let root = symmetric_psd_sqrt(&correlation_block(mmat))?;
        let inv = linalg::checked_inverse(&root)?;
        let image = FnRegion::new(m + n, |w: &[f64]| {
            let u = linalg::mul_vec(&inv, w);
            a.contains_unchecked(&u[..m]) && b.contains_unchecked(&u[m..])
        });
        measure_region(&image, budget)?.into()
    };
    let params = format!(
        "A={};B={};M={}",
        describe(a),
        describe(b),
        fmt_list(&linalg::to_row_major(mmat))
    );
    Ok(InequalityReport::from_parts("lemma1", m + n, lhs, rhs, budget, params))
}

/// `P(X ∈ A) P(Y ∈ B) ≤ det(I − MᵀM)^{−1/2} P(X ∈ A, Y ∈ B)` for jointly
/// Gaussian `X, Y` with identity covariances and cross-covariance `M`.
///
/// The joint probability is the measure of `{(x, z) : x ∈ A, Mᵀx + (I −
/// MᵀM)^{1/2} z ∈ B}` under a block sign-flip design, so replacing `M` by
/// `−M` leaves the estimate unchanged bit for bit.
pub fn check_shao(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    mmat: &Matrix,
    budget: &Budget,
) -> Result<InequalityReport> {
    check_block_dims(a, b, mmat)?;
    let det = require_contraction(mmat)?;
    let (m, n) = (a.dim(), b.dim());
    let lhs = gamma(a, budget)?.times(gamma(b, budget)?);
    let root = symmetric_psd_sqrt(&(Matrix::identity(n, n) - mmat.transpose() * mmat))?;
    let mt = mmat.transpose();
    let joint = FnRegion::new(m + n, |w: &[f64]| {
        let (x, z) = w.split_at(m);
        if !a.contains_unchecked(x) {
            return false;
        }
        let mut y = linalg::mul_vec(&mt, x);
        let lz = linalg::mul_vec(&root, z);
        for (yi, li) in y.iter_mut().zip(&lz) {
            *yi += li;
        }
        b.contains_unchecked(&y)
    });
    let design = SignDesign::BlockFlips { split: m };
    let rhs = Bounds::from(measure_region_with_design(&joint, budget, design)?).scale(1.0 / det.sqrt());
    let params = format!(
        "A={};B={};M={}",
        describe(a),
        describe(b),
        fmt_list(&linalg::to_row_major(mmat))
    );
    Ok(InequalityReport::from_parts("shao", m + n, lhs, rhs, budget, params))
}

/// `γ(C) ≤ γ((I + K) C)` for symmetric positive-semidefinite `K`.
pub fn check_anderson(c: &SymmetricConvexBody, k: &Matrix, budget: &Budget) -> Result<InequalityReport> {
    let n = c.dim();
    if k.shape() != (n, n) {
        return Err(Error::DimensionMismatch { expected: n, got: k.nrows() });
    }
    let asym = linalg::asymmetry(k);
    if asym > 1e-10 * k.amax().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    let min = linalg::min_eigenvalue(&linalg::symmetrize(k));
    if min < -1e-12 {
        return Err(Error::NotPositiveDefinite(min));
    }
    let lhs = gamma(c, budget)?;
    let rhs = if linalg::is_zero(k) {
        lhs
    } else {
        gamma(
            &SymmetricConvexBody::linear_image(Matrix::identity(n, n) + k, c.clone())?,
            budget,
        )?
    };
    let params = format!("C={};K={}", describe(c), fmt_list(&linalg::to_row_major(k)));
    Ok(InequalityReport::from_parts("anderson", n, lhs, rhs, budget, params))
}

/// `h(y) = γ((A − Sy) ∩ (B + Ty))` sampled at a list of points.
#[derive(Debug, Clone)]
pub struct HProfile {
    pub a: Arc<SymmetricConvexBody>,
    pub b: Arc<SymmetricConvexBody>,
    pub s: Matrix,
    pub t: Matrix,
    pub ys: Vec<Vec<f64>>,
    pub values: Vec<MeasureEstimate>,
}

/// Estimates `h` at every `y` with the same budget (common random numbers).
pub fn h_profile(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    s: &Matrix,
    t: &Matrix,
    ys: &[Vec<f64>],
    budget: &Budget,
) -> Result<HProfile> {
    let n = check_dims(a, b)?;
    for m in [s, t] {
        if m.shape() != (n, n) {
            return Err(Error::DimensionMismatch { expected: n, got: m.nrows() });
        }
    }
    let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
    let mut values = Vec::with_capacity(ys.len());
    for y in ys {
        if y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: y.len() });
        }
        let sy = linalg::mul_vec(s, y);
        let ty = linalg::mul_vec(t, y);
        let region = Meet {
            left: TranslatedBody::new(a.clone(), sy.iter().map(|v| -v).collect())?,
            right: TranslatedBody::new(b.clone(), ty)?,
        };
        values.push(measure_region(&region, budget)?);
    }
    Ok(HProfile {
        a,
        b,
        s: s.clone(),
        t: t.clone(),
        ys: ys.to_vec(),
        values,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub checked: usize,
    pub violations: usize,
}

impl PropertyCheck {
    fn record(&mut self, violated: bool) {
        self.checked += 1;
        if violated {
            self.violations += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPropertyReport {
    /// `h(y) ≤ h(0)`
    pub max_at_zero: PropertyCheck,
    /// `h((y₁ + y₂)/2) ≥ √(h(y₁) h(y₂))`
    pub log_concavity: PropertyCheck,
    /// `h(y) > 0 ⟹ (S + T) y ∈ A + B`
    pub support: PropertyCheck,
    /// Support probes where Minkowski membership stayed undecided.
    pub support_undecided: usize,
}

impl HPropertyReport {
    pub fn holds(&self) -> bool {
        self.max_at_zero.violations == 0 && self.log_concavity.violations == 0 && self.support.violations == 0
    }
}

fn same_point(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| (a - b).abs() <= 1e-12)
}

/// Checks maximality at zero, midpoint log-concavity on every midpoint
/// triple present in the profile, and the support condition. A property is
/// violated only when the confidence intervals exclude it.
pub fn h_property_suite(profile: &HProfile) -> Result<HPropertyReport> {
    let zero = profile
        .ys
        .iter()
        .position(|y| y.iter().all(|v| *v == 0.0))
        .ok_or_else(|| Error::InvalidParameter("profile must include y = 0".into()))?;
    let h = &profile.values;
    let mut report = HPropertyReport::default();

    for e in h {
        report.max_at_zero.record(e.ci_low > h[zero].ci_high);
    }

    let n = profile.ys.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let mid: Vec<f64> = profile.ys[i]
                .iter()
                .zip(&profile.ys[j])
                .map(|(a, b)| 0.5 * (a + b))
                .collect();
            if let Some(k) = profile.ys.iter().position(|y| same_point(y, &mid)) {
                if k == i || k == j {
                    continue;
                }
                let geo = (h[i].ci_low * h[j].ci_low).sqrt();
                report.log_concavity.record(h[k].ci_high < geo);
            }
        }
    }

    let st = &profile.s + &profile.t;
    for (y, e) in profile.ys.iter().zip(h) {
        if e.value > 0.0 {
            let x = linalg::mul_vec(&st, y);
            match minkowski_member(&profile.a, &profile.b, &x, DEFAULT_TOL, DEFAULT_MAX_ITER)? {
                MinkowskiVerdict::NonMember => report.support.record(true),
                MinkowskiVerdict::Member => report.support.record(false),
                MinkowskiVerdict::Undecided => {
                    report.support.record(false);
                    report.support_undecided += 1;
                }
            }
        }
    }
    Ok(report)
}

/// The profile's properties as report rows: `h_max_at_zero` compares `h(y)`
/// with `h(0)`, `h_log_concave` compares `√(h(y₁) h(y₂))` with the midpoint
/// value, and `h_support` compares `h(y)` with the indicator of
/// `(S + T) y ∈ A + B` (undecided counts as inside).
pub fn h_reports(profile: &HProfile, budget: &Budget) -> Result<Vec<InequalityReport>> {
    let zero = profile
        .ys
        .iter()
        .position(|y| y.iter().all(|v| *v == 0.0))
        .ok_or_else(|| Error::InvalidParameter("profile must include y = 0".into()))?;
    let n = profile.a.dim();
    let h: Vec<Bounds> = profile.values.iter().map(|e| Bounds::from(*e)).collect();
    let mut out = Vec::new();
    for (y, hy) in profile.ys.iter().zip(&h) {
        let params = format!("y={}", fmt_list(y));
        out.push(InequalityReport::from_parts("h_max_at_zero", n, *hy, h[zero], budget, params));
    }
    let m = profile.ys.len();
    for i in 0..m {
        for j in (i + 1)..m {
            let mid: Vec<f64> = profile.ys[i]
                .iter()
                .zip(&profile.ys[j])
                .map(|(a, b)| 0.5 * (a + b))
                .collect();
            if let Some(k) = profile.ys.iter().position(|y| same_point(y, &mid)) {
                if k == i || k == j {
                    continue;
                }
                let geo = Bounds {
                    value: (h[i].value * h[j].value).sqrt(),
                    low: (h[i].low * h[j].low).sqrt(),
                    high: (h[i].high * h[j].high).sqrt(),
                };
                let params = format!("y1={};y2={}", fmt_list(&profile.ys[i]), fmt_list(&profile.ys[j]));
                out.push(InequalityReport::from_parts("h_log_concave", n, geo, h[k], budget, params));
            }
        }
    }
    let st = &profile.s + &profile.t;
    for (y, hy) in profile.ys.iter().zip(&h) {
        let x = linalg::mul_vec(&st, y);
        let verdict = minkowski_member(&profile.a, &profile.b, &x, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        let indicator = if verdict == MinkowskiVerdict::NonMember { 0.0 } else { 1.0 };
        let params = format!("y={};sum_membership={verdict:?}", fmt_list(y));
        out.push(InequalityReport::from_parts("h_support", n, *hy, Bounds::exact(indicator), budget, params));
    }
    Ok(out)
}
