//! Symmetric convex bodies.
//!
//! Every body is centrally symmetric and contains the origin. The shape
//! grammar is deliberately small: each primitive admits either a closed-form
//! Gaussian measure or a cheap Euclidean projection, and the two composite
//! nodes (linear images and intersections) cover the sets that appear in the
//! correlation inequalities.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

const NEWTON_MAX_ITER: usize = 200;
const NEWTON_TOL: f64 = 1e-12;
const DYKSTRA_TOL: f64 = 1e-10;
const DYKSTRA_MAX_SWEEPS: usize = 200_000;

/// A centred ellipsoid `{x : <x, Qx> <= 1}` with its eigendecomposition cached.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    q: Matrix,
    eigenvectors: Matrix,
    eigenvalues: Vec<f64>,
}

impl Ellipsoid {
    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// One symmetric pair of half-spaces, `{x : |<normal, x>| <= offset}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone)]
pub struct LinearImage {
    transform: Matrix,
    inverse: Matrix,
    base: Arc<SymmetricConvexBody>,
}

impl LinearImage {
    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    pub fn base(&self) -> &SymmetricConvexBody {
        &self.base
    }
}

#[derive(Debug, Clone)]
pub enum Shape {
    Ball { radius: f64 },
    Box { halfwidths: Vec<f64> },
    Ellipsoid(Ellipsoid),
    /// Stored as symmetric pairs, so symmetry holds by construction.
    Polytope { halfspaces: Vec<Halfspace> },
    LinearImage(LinearImage),
    Intersection(Arc<SymmetricConvexBody>, Arc<SymmetricConvexBody>),
}

impl Shape {
    pub fn tag(&self) -> &'static str {
        match self {
            Shape::Ball { .. } => "ball",
            Shape::Box { .. } => "box",
            Shape::Ellipsoid(_) => "ellipsoid",
            Shape::Polytope { .. } => "polytope",
            Shape::LinearImage(_) => "linear_image",
            Shape::Intersection(..) => "intersection",
        }
    }
}

/// Shape selector for [`random_body`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    Ball,
    Box,
    Ellipsoid,
    Polytope,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "crate::format::BodyRecord", into = "crate::format::BodyRecord")]
pub struct SymmetricConvexBody {
    dim: usize,
    shape: Shape,
}

/// `<x, Qx>`, summed in a fixed order so that it is even in `x` bit for bit.
fn quadratic_form(q: &Matrix, x: &[f64]) -> f64 {
    let mut quad = 0.0;
    for (i, xi) in x.iter().enumerate() {
        let mut row = 0.0;
        for (j, xj) in x.iter().enumerate() {
            row += q[(i, j)] * xj;
        }
        quad += xi * row;
    }
    quad
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

impl SymmetricConvexBody {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidBody("dimension must be positive".into()));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidBody(format!("ball radius {radius} must be positive")));
        }
        Ok(Self { dim, shape: Shape::Ball { radius } })
    }

    pub fn cube(halfwidths: Vec<f64>) -> Result<Self> {
        if halfwidths.is_empty() {
            return Err(Error::InvalidBody("dimension must be positive".into()));
        }
        if let Some(w) = halfwidths.iter().find(|w| !(**w > 0.0)) {
            return Err(Error::InvalidBody(format!("box halfwidth {w} must be positive")));
        }
        Ok(Self {
            dim: halfwidths.len(),
            shape: Shape::Box { halfwidths },
        })
    }

    /// Ellipsoid `{x : <x, Qx> <= 1}` for symmetric positive-semidefinite `q`.
    pub fn ellipsoid(q: Matrix) -> Result<Self> {
        let dim = q.nrows();
        if dim == 0 || !q.is_square() {
            return Err(Error::InvalidBody("ellipsoid matrix must be square and non-empty".into()));
        }
        let scale = q.amax().max(1.0);
        let asym = linalg::asymmetry(&q);
        if asym > 1e-10 * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let q = linalg::symmetrize(&q);
        let eig = q.clone().symmetric_eigen();
        let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
        let min = eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -1e-12 * scale {
            return Err(Error::NotPositiveDefinite(min));
        }
        for v in &mut eigenvalues {
            *v = v.max(0.0);
        }
        Ok(Self {
            dim,
            shape: Shape::Ellipsoid(Ellipsoid {
                q,
                eigenvectors: eig.eigenvectors,
                eigenvalues,
            }),
        })
    }

    /// Symmetric polytope from half-space pairs. Normals are rescaled to unit
    /// length (offsets rescaled with them).
    pub fn polytope(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidBody("dimension must be positive".into()));
        }
        let mut out = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            check_dim(dim, h.normal.len())?;
            let len = linalg::norm(&h.normal);
            if !(len > 0.0) {
                return Err(Error::InvalidBody("half-space normal must be non-zero".into()));
            }
            if !(h.offset >= 0.0) {
                return Err(Error::InvalidBody(format!("half-space offset {} must be >= 0", h.offset)));
            }
            out.push(Halfspace {
                normal: h.normal.iter().map(|v| v / len).collect(),
                offset: h.offset / len,
            });
        }
        Ok(Self {
            dim,
            shape: Shape::Polytope { halfspaces: out },
        })
    }

    /// The image `t(body)`; membership of `y` tests `t^{-1} y` against the base.
    pub fn linear_image(t: Matrix, body: impl Into<Arc<SymmetricConvexBody>>) -> Result<Self> {
        let base = body.into();
        if !t.is_square() {
            return Err(Error::DimensionMismatch {
                expected: t.nrows(),
                got: t.ncols(),
            });
        }
        check_dim(base.dim, t.nrows())?;
        let inverse = linalg::checked_inverse(&t)?;
        Ok(Self {
            dim: base.dim,
            shape: Shape::LinearImage(LinearImage {
                transform: t,
                inverse,
                base,
            }),
        })
    }

    pub fn scaled(c: f64, body: impl Into<Arc<SymmetricConvexBody>>) -> Result<Self> {
        let base = body.into();
        Self::linear_image(Matrix::identity(base.dim, base.dim) * c, base)
    }

    pub fn intersect(
        a: impl Into<Arc<SymmetricConvexBody>>,
        b: impl Into<Arc<SymmetricConvexBody>>,
    ) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        check_dim(a.dim, b.dim)?;
        Ok(Self {
            dim: a.dim,
            shape: Shape::Intersection(a, b),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.contains_unchecked(x))
    }

    /// Membership without the dimension check. Every branch is an even
    /// function of `x` evaluated with sign-symmetric arithmetic, so
    /// `contains_unchecked(x) == contains_unchecked(-x)` holds bit for bit.
    pub fn contains_unchecked(&self, x: &[f64]) -> bool {
        match &self.shape {
            Shape::Ball { radius } => x.iter().map(|v| v * v).sum::<f64>() <= radius * radius,
            Shape::Box { halfwidths } => x.iter().zip(halfwidths).all(|(v, w)| v.abs() <= *w),
            Shape::Ellipsoid(e) => quadratic_form(&e.q, x) <= 1.0,
            Shape::Polytope { halfspaces } => halfspaces
                .iter()
                .all(|h| linalg::dot(&h.normal, x).abs() <= h.offset),
            Shape::LinearImage(li) => {
                let pre = linalg::mul_vec(&li.inverse, x);
                li.base.contains_unchecked(&pre)
            }
            Shape::Intersection(a, b) => a.contains_unchecked(x) && b.contains_unchecked(x),
        }
    }

    /// Euclidean projection onto the body.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim, x.len())?;
        match &self.shape {
            Shape::Ball { radius } => {
                let len = linalg::norm(x);
                if len <= *radius {
                    Ok(x.to_vec())
                } else {
                    Ok(x.iter().map(|v| v * radius / len).collect())
                }
            }
            Shape::Box { halfwidths } => Ok(x
                .iter()
                .zip(halfwidths)
                .map(|(v, w)| v.clamp(-w, *w))
                .collect()),
            Shape::Ellipsoid(e) => project_ellipsoid(e, x),
            Shape::Polytope { halfspaces } => project_polytope(halfspaces, x),
            other => Err(Error::UnsupportedShape(other.tag())),
        }
    }

    /// In-place projection; avoids allocation for balls and boxes, which
    /// dominate the inner loop of Minkowski-sum membership.
    pub(crate) fn project_in_place(&self, x: &mut [f64]) -> Result<()> {
        match &self.shape {
            Shape::Ball { radius } => {
                let len = linalg::norm(x);
                if len > *radius {
                    x.iter_mut().for_each(|v| *v = *v * radius / len);
                }
                Ok(())
            }
            Shape::Box { halfwidths } => {
                x.iter_mut().zip(halfwidths).for_each(|(v, w)| *v = v.clamp(-w, *w));
                Ok(())
            }
            _ => {
                let p = self.project(x)?;
                x.copy_from_slice(&p);
                Ok(())
            }
        }
    }

    /// Whether [`project`](Self::project) is available for this body.
    pub fn is_projectable(&self) -> bool {
        matches!(
            self.shape,
            Shape::Ball { .. } | Shape::Box { .. } | Shape::Ellipsoid(_) | Shape::Polytope { .. }
        )
    }

    /// Closed-form support function `h(u) = max_{x in body} <u, x>` where one
    /// exists (ball, box, positive-definite ellipsoid).
    pub fn support(&self, u: &[f64]) -> Option<f64> {
        match &self.shape {
            Shape::Ball { radius } => Some(radius * linalg::norm(u)),
            Shape::Box { halfwidths } => Some(u.iter().zip(halfwidths).map(|(v, w)| v.abs() * w).sum()),
            Shape::Ellipsoid(e) => {
                let mut acc = 0.0;
                for (k, lambda) in e.eigenvalues.iter().enumerate() {
                    let c: f64 = (0..self.dim).map(|i| e.eigenvectors[(i, k)] * u[i]).sum();
                    if *lambda <= 0.0 {
                        if c != 0.0 {
                            return None;
                        }
                    } else {
                        acc += c * c / lambda;
                    }
                }
                Some(acc.sqrt())
            }
            _ => None,
        }
    }

    /// `(L, L⁻¹)` with `L·body` the unit ball, for balls and positive-definite
    /// ellipsoids (`L = Q^{1/2}`).
    pub(crate) fn whitening(&self) -> Option<(Matrix, Matrix)> {
        let n = self.dim;
        match &self.shape {
            Shape::Ball { radius } => Some((Matrix::identity(n, n) / *radius, Matrix::identity(n, n) * *radius)),
            Shape::Ellipsoid(e) => {
                let max = e.eigenvalues.iter().cloned().fold(0.0, f64::max);
                let min = e.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
                if !(min > 1e-12 * max) {
                    return None;
                }
                let v = &e.eigenvectors;
                let root = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                    n,
                    e.eigenvalues.iter().map(|l| l.sqrt()),
                ));
                let inv_root = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                    n,
                    e.eigenvalues.iter().map(|l| 1.0 / l.sqrt()),
                ));
                Some((
                    linalg::symmetrize(&(v * root * v.transpose())),
                    linalg::symmetrize(&(v * inv_root * v.transpose())),
                ))
            }
            _ => None,
        }
    }

    /// `t(body)` as a primitive shape: balls and ellipsoids map to ellipsoids,
    /// boxes and polytopes to polytopes, and a positive multiple of the
    /// identity keeps the shape. `t_inv` must be `t⁻¹`.
    pub(crate) fn primitive_image(&self, t: &Matrix, t_inv: &Matrix) -> Option<SymmetricConvexBody> {
        let n = self.dim;
        let scalar = linalg::diagonal_entries(t)
            .filter(|d| d[0] > 0.0 && d.iter().all(|v| *v == d[0]))
            .map(|d| d[0]);
        let out = match (&self.shape, scalar) {
            (Shape::Ball { radius }, Some(c)) => Self::ball(n, c * radius),
            (Shape::Box { halfwidths }, Some(c)) => Self::cube(halfwidths.iter().map(|w| c * w).collect()),
            (Shape::Ellipsoid(e), Some(c)) => Self::ellipsoid(&e.q / (c * c)),
            (Shape::Polytope { halfspaces }, Some(c)) => Self::polytope(
                n,
                halfspaces
                    .iter()
                    .map(|h| Halfspace {
                        normal: h.normal.clone(),
                        offset: c * h.offset,
                    })
                    .collect(),
            ),
            (Shape::Ball { radius }, None) => Self::ellipsoid(t_inv.transpose() * t_inv / (radius * radius)),
            (Shape::Ellipsoid(e), None) => Self::ellipsoid(t_inv.transpose() * &e.q * t_inv),
            (Shape::Box { halfwidths }, None) => Self::polytope(
                n,
                halfwidths
                    .iter()
                    .enumerate()
                    .map(|(i, w)| Halfspace {
                        normal: t_inv.row(i).iter().cloned().collect(),
                        offset: *w,
                    })
                    .collect(),
            ),
            (Shape::Polytope { halfspaces }, None) => {
                let tt = t_inv.transpose();
                Self::polytope(
                    n,
                    halfspaces
                        .iter()
                        .map(|h| Halfspace {
                            normal: linalg::mul_vec(&tt, &h.normal),
                            offset: h.offset,
                        })
                        .collect(),
                )
            }
            _ => return None,
        };
        out.ok()
    }

    /// Gauge `inf {t >= 0 : x ∈ t·body}` for the primitive shapes; zero along
    /// directions in which a degenerate ellipsoid is unbounded.
    pub fn gauge(&self, x: &[f64]) -> Option<f64> {
        match &self.shape {
            Shape::Ball { radius } => Some(linalg::norm(x) / radius),
            Shape::Box { halfwidths } => Some(
                x.iter()
                    .zip(halfwidths)
                    .map(|(v, w)| v.abs() / w)
                    .fold(0.0, f64::max),
            ),
            Shape::Ellipsoid(e) => Some(quadratic_form(&e.q, x).max(0.0).sqrt()),
            Shape::Polytope { halfspaces } => Some(
                halfspaces
                    .iter()
                    .map(|h| linalg::dot(&h.normal, x).abs() / h.offset)
                    .fold(0.0, f64::max),
            ),
            _ => None,
        }
    }

    /// An outward normal of the body at the boundary point on the ray through
    /// `x` (unnormalized; odd in `x`).
    pub fn boundary_normal(&self, x: &[f64]) -> Option<Vec<f64>> {
        let signed = |v: f64| if v < 0.0 { -1.0 } else { 1.0 };
        match &self.shape {
            Shape::Ball { .. } => Some(x.to_vec()),
            Shape::Box { halfwidths } => {
                let (k, _) = x
                    .iter()
                    .zip(halfwidths)
                    .map(|(v, w)| v.abs() / w)
                    .enumerate()
                    .fold((0, -1.0), |best, (i, g)| if g > best.1 { (i, g) } else { best });
                let mut u = vec![0.0; self.dim];
                u[k] = signed(x[k]);
                Some(u)
            }
            Shape::Ellipsoid(e) => Some(linalg::mul_vec(&e.q, x)),
            Shape::Polytope { halfspaces } => {
                let (k, _) = halfspaces
                    .iter()
                    .map(|h| linalg::dot(&h.normal, x).abs() / h.offset)
                    .enumerate()
                    .fold((0, -1.0), |best, (i, g)| if g > best.1 { (i, g) } else { best });
                let s = signed(linalg::dot(&halfspaces[k].normal, x));
                Some(halfspaces[k].normal.iter().map(|v| s * v).collect())
            }
            _ => None,
        }
    }

    /// An upper bound on `max ||x||` over the body, when one is available in
    /// closed form. `None` means unknown (or unbounded).
    pub fn circumradius(&self) -> Option<f64> {
        match &self.shape {
            Shape::Ball { radius } => Some(*radius),
            Shape::Box { halfwidths } => Some(linalg::norm(halfwidths)),
            Shape::Ellipsoid(e) => {
                let min = e.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
                (min > 0.0).then(|| 1.0 / min.sqrt())
            }
            Shape::Polytope { .. } => None,
            Shape::LinearImage(li) => li
                .base
                .circumradius()
                .map(|r| r * linalg::spectral_norm(&li.transform)),
            Shape::Intersection(a, b) => match (a.circumradius(), b.circumradius()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            },
        }
    }

    pub fn translate(&self, offset: Vec<f64>) -> Result<TranslatedBody> {
        check_dim(self.dim, offset.len())?;
        Ok(TranslatedBody {
            base: Arc::new(self.clone()),
            offset,
        })
    }
}

/// `base + offset`. Not symmetric in general.
#[derive(Debug, Clone)]
pub struct TranslatedBody {
    base: Arc<SymmetricConvexBody>,
    offset: Vec<f64>,
}

impl TranslatedBody {
    pub fn new(base: impl Into<Arc<SymmetricConvexBody>>, offset: Vec<f64>) -> Result<Self> {
        let base = base.into();
        check_dim(base.dim, offset.len())?;
        Ok(Self { base, offset })
    }

    pub fn dim(&self) -> usize {
        self.base.dim
    }

    pub fn base(&self) -> &SymmetricConvexBody {
        &self.base
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        check_dim(self.dim(), x.len())?;
        Ok(self.contains_unchecked(x))
    }

    pub fn contains_unchecked(&self, x: &[f64]) -> bool {
        let shifted: Vec<f64> = x.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        self.base.contains_unchecked(&shifted)
    }

    /// Composes offsets: `translate(translate(B, v), w) = translate(B, v + w)`.
    pub fn translate(&self, v: &[f64]) -> Result<TranslatedBody> {
        check_dim(self.dim(), v.len())?;
        Ok(TranslatedBody {
            base: self.base.clone(),
            offset: self.offset.iter().zip(v).map(|(a, b)| a + b).collect(),
        })
    }
}

fn project_ellipsoid(e: &Ellipsoid, x: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    let v = &e.eigenvectors;
    // coordinates in the eigenbasis
    let y: Vec<f64> = (0..n)
        .map(|k| (0..n).map(|i| v[(i, k)] * x[i]).sum())
        .collect();
    let lam = &e.eigenvalues;
    let level: f64 = y.iter().zip(lam).map(|(yi, l)| l * yi * yi).sum();
    if level <= 1.0 {
        return Ok(x.to_vec());
    }
    // f(mu) = sum l y^2 / (1 + mu l)^2 - 1 is convex and decreasing on mu >= 0,
    // so Newton from the left is monotone; bisection guards the bracket.
    let f = |mu: f64| -> (f64, f64) {
        let mut val = -1.0;
        let mut der = 0.0;
        for (yi, l) in y.iter().zip(lam) {
            let d = 1.0 + mu * l;
            let t = l * yi * yi / (d * d);
            val += t;
            der -= 2.0 * t * l / d;
        }
        (val, der)
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi).0 > 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NewtonNonConvergence(0));
        }
    }
    let mut mu = 0.0;
    let mut converged = false;
    for _ in 0..NEWTON_MAX_ITER {
        let (val, der) = f(mu);
        if val.abs() <= NEWTON_TOL {
            converged = true;
            break;
        }
        if val > 0.0 {
            lo = mu;
        } else {
            hi = mu;
        }
        let mut next = mu - val / der;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - mu).abs() <= 1e-16 * mu.max(1.0) {
            mu = next;
            converged = f(mu).0.abs() <= 1e-9;
            break;
        }
        mu = next;
    }
    if !converged {
        return Err(Error::NewtonNonConvergence(NEWTON_MAX_ITER));
    }
    let z: Vec<f64> = y.iter().zip(lam).map(|(yi, l)| yi / (1.0 + mu * l)).collect();
    Ok((0..n)
        .map(|i| (0..n).map(|k| v[(i, k)] * z[k]).sum())
        .collect())
}

#[inline]
fn project_slab(h: &Halfspace, x: &mut [f64]) {
    let s = linalg::dot(&h.normal, x);
    let excess = s - s.clamp(-h.offset, h.offset);
    if excess != 0.0 {
        for (xi, ni) in x.iter_mut().zip(&h.normal) {
            *xi -= excess * ni;
        }
    }
}

/// Dykstra's algorithm over the slabs `|<n_j, x>| <= c_j`.
fn project_polytope(halfspaces: &[Halfspace], x0: &[f64]) -> Result<Vec<f64>> {
    let n = x0.len();
    let feasible = |x: &[f64]| halfspaces.iter().all(|h| linalg::dot(&h.normal, x).abs() <= h.offset);
    if feasible(x0) {
        return Ok(x0.to_vec());
    }
    let mut x = x0.to_vec();
    let mut increments = vec![vec![0.0; n]; halfspaces.len()];
    let mut y = vec![0.0; n];
    for _ in 0..DYKSTRA_MAX_SWEEPS {
        let before = x.clone();
        for (h, p) in halfspaces.iter().zip(increments.iter_mut()) {
            for i in 0..n {
                y[i] = x[i] + p[i];
            }
            x.copy_from_slice(&y);
            project_slab(h, &mut x);
            for i in 0..n {
                p[i] = y[i] - x[i];
            }
        }
        let change = x.iter().zip(&before).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let violation = halfspaces
            .iter()
            .map(|h| (linalg::dot(&h.normal, &x).abs() - h.offset).max(0.0))
            .fold(0.0, f64::max);
        if change <= DYKSTRA_TOL && violation <= DYKSTRA_TOL {
            return Ok(x);
        }
    }
    Err(Error::DykstraNonConvergence(DYKSTRA_MAX_SWEEPS))
}

/// Deterministic random body of the given kind.
///
/// Box halfwidths and ball radii are uniform in `(0.2, 1) * scale`; ellipsoids
/// use `Q = G^T G / scale^2` for a standard Gaussian `G`; polytopes get `2n`
/// random unit-normal slab pairs (`4n` half-spaces) at offsets uniform in
/// `(0.5, 1.5) * scale`.
pub fn random_body(kind: ShapeKind, n: usize, scale: f64, seed: u64) -> Result<SymmetricConvexBody> {
    if n == 0 || !(scale > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "random_body needs n >= 1 and scale > 0 (got n={n}, scale={scale})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        ShapeKind::Ball => SymmetricConvexBody::ball(n, rng.random_range(0.2..1.0) * scale),
        ShapeKind::Box => {
            SymmetricConvexBody::cube((0..n).map(|_| rng.random_range(0.2..1.0) * scale).collect())
        }
        ShapeKind::Ellipsoid => {
            let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
            SymmetricConvexBody::ellipsoid(g.transpose() * &g / (scale * scale))
        }
        ShapeKind::Polytope => {
            let halfspaces = (0..2 * n)
                .map(|_| {
                    let mut normal: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
                    let len = linalg::norm(&normal);
                    normal.iter_mut().for_each(|v| *v /= len);
                    Halfspace {
                        normal,
                        offset: rng.random_range(0.5..1.5) * scale,
                    }
                })
                .collect();
            SymmetricConvexBody::polytope(n, halfspaces)
        }
    }
}

/// A random body with a closed-form certificate of lying inside
/// `radius · Ball`: balls of radius uniform in `(0.2, 1)·radius`, boxes with
/// halfwidths uniform in `(0.2, 1)·radius/√n`, ellipsoids with semi-axes
/// uniform in `(0.2, 1)·radius` along a random orthonormal basis, and random polytopes
/// intersected with `radius · Ball`.
pub fn random_body_within(kind: ShapeKind, n: usize, radius: f64, seed: u64) -> Result<SymmetricConvexBody> {
    if n == 0 || !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "random_body_within needs n >= 1 and radius > 0 (got n={n}, radius={radius})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    match kind {
        ShapeKind::Ball => random_body(kind, n, radius, seed),
        ShapeKind::Box => random_body(kind, n, radius / (n as f64).sqrt(), seed),
        ShapeKind::Ellipsoid => {
            let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
            let basis = g.qr().q();
            let inv_sq: Vec<f64> = (0..n)
                .map(|_| {
                    let axis = rng.random_range(0.2..1.0) * radius;
                    1.0 / (axis * axis)
                })
                .collect();
            let q = &basis * DMatrix::from_diagonal(&DVector::from_vec(inv_sq)) * basis.transpose();
            SymmetricConvexBody::ellipsoid(linalg::symmetrize(&q))
        }
        ShapeKind::Polytope => SymmetricConvexBody::intersect(
            random_body(kind, n, radius, seed)?,
            SymmetricConvexBody::ball(n, radius)?,
        ),
    }
}

impl From<&SymmetricConvexBody> for Arc<SymmetricConvexBody> {
    fn from(b: &SymmetricConvexBody) -> Self {
        Arc::new(b.clone())
    }
}
