//! Minkowski-sum membership by alternating projections.
//!
//! `x ∈ A + B` is decided by alternating between the product set `A × B` and
//! the affine set `{(a, b) : a + b = x}`. The residual `‖x − a − b‖` converges
//! to the distance between the two sets, which is zero exactly when `x` is in
//! the sum.
//!
//! Exact shortcuts run first. Boxes add coordinatewise. An ellipsoid
//! `{v : vᵀQv <= 1}` plus a box reduces to a box-constrained quadratic
//! program. Otherwise, when one summand is a ball or a positive-definite
//! ellipsoid `E`, a linear map `L` with `L E` the unit ball reduces
//! membership to one projection: `x ∈ E + K` iff `dist(Lx, L K) <= 1`.

use std::sync::Arc;

use crate::body::{Shape, SymmetricConvexBody};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::region::{Membership, Region};

pub const DEFAULT_TOL: f64 = 1e-7;
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Window (in iterations) over which residual stagnation is measured.
const STALL_WINDOW: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MinkowskiVerdict {
    Member,
    NonMember,
    Undecided,
}

impl From<MinkowskiVerdict> for Membership {
    fn from(v: MinkowskiVerdict) -> Self {
        match v {
            MinkowskiVerdict::Member => Membership::Inside,
            MinkowskiVerdict::NonMember => Membership::Outside,
            MinkowskiVerdict::Undecided => Membership::Undecided,
        }
    }
}

impl From<bool> for MinkowskiVerdict {
    fn from(member: bool) -> Self {
        if member {
            MinkowskiVerdict::Member
        } else {
            MinkowskiVerdict::NonMember
        }
    }
}

/// Decides whether `x ∈ a + b`.
///
/// Returns `Member` once the residual drops below `tol`, `NonMember` when the
/// residual is certified (by a separating support-function gap, where closed
/// forms exist) or observed (by stagnation over 50 iterations) to stay above
/// `10 * tol`, and `Undecided` if `max_iter` runs out first.
pub fn minkowski_member(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    x: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<MinkowskiVerdict> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: x.len(),
        });
    }
    for body in [a, b] {
        if !body.is_projectable() {
            return Err(Error::UnsupportedShape(body.shape().tag()));
        }
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    member_unchecked(a, b, x, tol, max_iter, Reduction::new(a, b).as_ref())
}

/// Exact reductions of `x ∈ A + B` to a single convex problem.
#[derive(Debug, Clone)]
enum Reduction {
    /// `dist(map·x, other) <= 1`.
    Whitened { map: Matrix, other: SymmetricConvexBody },
    /// `min_{|b_i| <= w_i} (x − b)ᵀ Q (x − b) <= 1` for an ellipsoid plus a box.
    BoxQuadratic { q: Matrix, halfwidths: Vec<f64> },
}

impl Reduction {
    fn new(a: &SymmetricConvexBody, b: &SymmetricConvexBody) -> Option<Self> {
        for (round, other) in [(a, b), (b, a)] {
            if let (Shape::Ellipsoid(e), Shape::Box { halfwidths }) = (round.shape(), other.shape()) {
                return Some(Reduction::BoxQuadratic {
                    q: e.q().clone(),
                    halfwidths: halfwidths.clone(),
                });
            }
        }
        for (round, other) in [(a, b), (b, a)] {
            if let Some((l, l_inv)) = round.whitening() {
                if let Some(other) = other.primitive_image(&l, &l_inv) {
                    return Some(Reduction::Whitened { map: l, other });
                }
            }
        }
        None
    }

    /// `None` inside the band `1 < dist <= 1 + tol`, or when the solver gives up.
    fn decide(&self, x: &[f64], tol: f64) -> Result<Option<MinkowskiVerdict>> {
        let d = match self {
            Reduction::Whitened { map, other } => {
                let z = linalg::mul_vec(map, x);
                let p = other.project(&z)?;
                z.iter().zip(&p).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt()
            }
            Reduction::BoxQuadratic { q, halfwidths } => match box_quadratic_min(q, halfwidths, x) {
                Some(f) => f.max(0.0).sqrt(),
                None => return Ok(None),
            },
        };
        Ok(if d <= 1.0 {
            Some(MinkowskiVerdict::Member)
        } else if d > 1.0 + tol {
            Some(MinkowskiVerdict::NonMember)
        } else {
            None
        })
    }
}

/// `min_{|b_i| <= w_i} (x − b)ᵀ Q (x − b)` for positive-definite `Q` by a
/// primal active-set method. Every step is odd in `x`, so the result is
/// exactly even. `None` if a reduced system is not positive definite or the
/// iteration cap is hit.
fn box_quadratic_min(q: &Matrix, w: &[f64], x: &[f64]) -> Option<f64> {
    let n = x.len();
    // −1 / +1: held at the lower / upper bound, 0: free
    let mut side: Vec<i8> = Vec::with_capacity(n);
    let mut z: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        if x[i] > w[i] {
            side.push(1);
            z.push(w[i]);
        } else if x[i] < -w[i] {
            side.push(-1);
            z.push(-w[i]);
        } else {
            side.push(0);
            z.push(x[i]);
        }
    }
    let mut target = z.clone();
    for _ in 0..(50 * n + 50) {
        let free: Vec<usize> = (0..n).filter(|&i| side[i] == 0).collect();
        // minimiser over the free coordinates with the others held
        if !free.is_empty() {
            let qff = Matrix::from_fn(free.len(), free.len(), |r, c| q[(free[r], free[c])]);
            let rhs: Vec<f64> = free
                .iter()
                .map(|&i| -(0..n).filter(|&j| side[j] != 0).map(|j| q[(i, j)] * (z[j] - x[j])).sum::<f64>())
                .collect();
            let chol = qff.cholesky()?;
            let d = chol.solve(&nalgebra::DVector::from_vec(rhs));
            for (k, &i) in free.iter().enumerate() {
                target[i] = x[i] + d[k];
            }
        }
        let mut step = 1.0;
        let mut blocking = None;
        for &i in &free {
            let t = target[i];
            if t.abs() > w[i] {
                let bound = w[i].copysign(t);
                let alpha = (bound - z[i]) / (t - z[i]);
                if alpha < step {
                    step = alpha;
                    blocking = Some(i);
                }
            }
        }
        match blocking {
            Some(j) => {
                for &i in &free {
                    z[i] += step * (target[i] - z[i]);
                }
                side[j] = if target[j] > 0.0 { 1 } else { -1 };
                z[j] = w[j].copysign(target[j]);
            }
            None => {
                for &i in &free {
                    z[i] = target[i];
                }
                let r: Vec<f64> = (0..n).map(|i| z[i] - x[i]).collect();
                let g = linalg::mul_vec(q, &r);
                let scale = g.iter().fold(1.0f64, |m, v| m.max(v.abs()));
                let mut release = None;
                let mut worst = 1e-12 * scale;
                for i in 0..n {
                    // a held coordinate whose gradient points into the box
                    let pull = f64::from(side[i]) * g[i];
                    if pull > worst {
                        worst = pull;
                        release = Some(i);
                    }
                }
                match release {
                    Some(i) => side[i] = 0,
                    None => return Some(linalg::dot(&r, &g)),
                }
            }
        }
    }
    None
}

fn member_unchecked(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    x: &[f64],
    tol: f64,
    max_iter: usize,
    reduction: Option<&Reduction>,
) -> Result<MinkowskiVerdict> {
    // both bodies contain the origin
    if a.contains_unchecked(x) || b.contains_unchecked(x) {
        return Ok(MinkowskiVerdict::Member);
    }
    if let (Shape::Box { halfwidths: w }, Shape::Box { halfwidths: v }) = (a.shape(), b.shape()) {
        return Ok(x.iter().zip(w.iter().zip(v)).all(|(t, (p, q))| t.abs() <= p + q).into());
    }
    let far = 10.0 * tol;
    if let (Some(ga), Some(gb)) = (a.gauge(x), b.gauge(x)) {
        // x = λx + (1 − λ)x with λx ∈ A, (1 − λ)x ∈ B iff 1/ga + 1/gb >= 1
        if ga * gb <= ga + gb {
            return Ok(MinkowskiVerdict::Member);
        }
    }
    if let Some(red) = reduction {
        if let Some(v) = red.decide(x, tol)? {
            return Ok(v);
        }
    }
    let candidates = [Some(x.to_vec()), a.boundary_normal(x), b.boundary_normal(x)];
    for u in candidates.iter().flatten() {
        if separates(a, b, x, u, far) {
            return Ok(MinkowskiVerdict::NonMember);
        }
    }
    let n = x.len();
    let mut pa: Vec<f64> = x.iter().map(|v| 0.5 * v).collect();
    let mut pb = pa.clone();
    a.project_in_place(&mut pa)?;
    b.project_in_place(&mut pb)?;
    let mut r = vec![0.0; n];
    let mut history: Vec<f64> = Vec::with_capacity(max_iter.min(1024));
    for k in 0..max_iter {
        for i in 0..n {
            r[i] = x[i] - pa[i] - pb[i];
        }
        let res = linalg::norm(&r);
        if res < tol {
            return Ok(MinkowskiVerdict::Member);
        }
        if res > far {
            if separates(a, b, x, &r, far) {
                return Ok(MinkowskiVerdict::NonMember);
            }
            if k >= STALL_WINDOW {
                let before = history[k - STALL_WINDOW];
                if (before - res).abs() < 0.1 * tol * res {
                    return Ok(MinkowskiVerdict::NonMember);
                }
            }
        }
        history.push(res);
        for i in 0..n {
            let half = 0.5 * r[i];
            pa[i] += half;
            pb[i] += half;
        }
        a.project_in_place(&mut pa)?;
        b.project_in_place(&mut pb)?;
    }
    Ok(MinkowskiVerdict::Undecided)
}

/// Whether `<u, x> − h_A(u) − h_B(u) > margin·‖u‖`, a certificate that `x`
/// lies at distance more than `margin` from `A + B`.
fn separates(a: &SymmetricConvexBody, b: &SymmetricConvexBody, x: &[f64], u: &[f64], margin: f64) -> bool {
    match (a.support(u), b.support(u)) {
        (Some(ha), Some(hb)) => linalg::dot(u, x) - ha - hb > margin * linalg::norm(u),
        _ => false,
    }
}

/// The set `map^{-1}(A + B) = {x : map·x ∈ A + B}`, e.g. `(S + T)^{-1}(A + B)`.
#[derive(Debug, Clone)]
pub struct MinkowskiImage {
    a: Arc<SymmetricConvexBody>,
    b: Arc<SymmetricConvexBody>,
    map: Matrix,
    tol: f64,
    max_iter: usize,
    reduction: Option<Reduction>,
}

impl MinkowskiImage {
    pub fn new(
        a: impl Into<Arc<SymmetricConvexBody>>,
        b: impl Into<Arc<SymmetricConvexBody>>,
        map: Matrix,
    ) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: b.dim(),
            });
        }
        if !map.is_square() || map.nrows() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: map.nrows(),
            });
        }
        let cond = linalg::condition_number(&map);
        if !(cond < linalg::MAX_CONDITION) {
            return Err(Error::Singular(cond));
        }
        let out = Self {
            a,
            b,
            map,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            reduction: None,
        };
        if out.closed_form().is_none() {
            for body in [&out.a, &out.b] {
                if !body.is_projectable() {
                    return Err(Error::UnsupportedShape(body.shape().tag()));
                }
            }
        }
        let reduction = Reduction::new(&out.a, &out.b);
        Ok(Self { reduction, ..out })
    }

    /// `c (A + B)` for a scalar `c > 0`.
    pub fn scaled_sum(
        c: f64,
        a: impl Into<Arc<SymmetricConvexBody>>,
        b: impl Into<Arc<SymmetricConvexBody>>,
    ) -> Result<Self> {
        let a = a.into();
        let n = a.dim();
        Self::new(a, b, Matrix::identity(n, n) / c)
    }

    pub fn with_tolerance(mut self, tol: f64, max_iter: usize) -> Self {
        self.tol = tol;
        self.max_iter = max_iter;
        self
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    /// Analytic description when both summands are balls or both are boxes:
    /// `Ball(r) + Ball(s) = Ball(r + s)` and boxes add halfwidths.
    pub fn closed_form(&self) -> Option<SymmetricConvexBody> {
        let sum = match (self.a.shape(), self.b.shape()) {
            (Shape::Ball { radius: r }, Shape::Ball { radius: s }) => {
                SymmetricConvexBody::ball(self.a.dim(), r + s).ok()?
            }
            (Shape::Box { halfwidths: w }, Shape::Box { halfwidths: v }) => {
                SymmetricConvexBody::cube(w.iter().zip(v).map(|(x, y)| x + y).collect()).ok()?
            }
            _ => return None,
        };
        let n = self.a.dim();
        if self.map == Matrix::identity(n, n) {
            return Some(sum);
        }
        let inv = linalg::checked_inverse(&self.map).ok()?;
        SymmetricConvexBody::linear_image(inv, sum).ok()
    }

    pub fn verdict(&self, x: &[f64]) -> Result<MinkowskiVerdict> {
        let y = linalg::mul_vec(&self.map, x);
        minkowski_member(&self.a, &self.b, &y, self.tol, self.max_iter)
    }
}

impl Region for MinkowskiImage {
    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn membership(&self, x: &[f64]) -> Membership {
        let y = linalg::mul_vec(&self.map, x);
        match member_unchecked(&self.a, &self.b, &y, self.tol, self.max_iter, self.reduction.as_ref()) {
            Ok(v) => v.into(),
            Err(_) => Membership::Undecided,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{random_body, ShapeKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn member(a: &SymmetricConvexBody, b: &SymmetricConvexBody, x: &[f64]) -> MinkowskiVerdict {
        minkowski_member(a, b, x, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap()
    }

    #[test]
    fn sum_of_unit_balls() {
        let ball = SymmetricConvexBody::ball(3, 1.0).unwrap();
        assert_eq!(member(&ball, &ball, &[1.5, 0.0, 0.0]), MinkowskiVerdict::Member);
        assert_eq!(member(&ball, &ball, &[0.0, 1.2, 0.9]), MinkowskiVerdict::Member);
        assert_eq!(member(&ball, &ball, &[2.5, 0.0, 0.0]), MinkowskiVerdict::NonMember);
    }

    #[test]
    fn sum_of_boxes() {
        let a = SymmetricConvexBody::cube(vec![1.0, 1.0]).unwrap();
        let b = SymmetricConvexBody::cube(vec![0.5, 0.5]).unwrap();
        assert_eq!(member(&a, &b, &[1.4, -1.2]), MinkowskiVerdict::Member);
        assert_eq!(member(&a, &b, &[1.6, 0.0]), MinkowskiVerdict::NonMember);
    }

    #[test]
    fn unsupported_and_invalid_inputs() {
        let ball = SymmetricConvexBody::ball(2, 1.0).unwrap();
        let img = SymmetricConvexBody::scaled(2.0, ball.clone()).unwrap();
        assert_eq!(
            minkowski_member(&ball, &img, &[0.0, 0.0], 1e-7, 10),
            Err(Error::UnsupportedShape("linear_image"))
        );
        assert!(minkowski_member(&ball, &ball, &[0.0, 0.0], 0.0, 10).is_err());
        assert!(minkowski_member(&ball, &ball, &[0.0], 1e-7, 10).is_err());
    }

    #[test]
    fn exhausted_budget_is_undecided_not_an_error() {
        let e = random_body(ShapeKind::Box, 3, 1.0, 3).unwrap();
        let p = random_body(ShapeKind::Polytope, 3, 1.0, 4).unwrap();
        let v = minkowski_member(&e, &p, &[40.0, 0.0, 0.0], 1e-7, 1).unwrap();
        assert_eq!(v, MinkowskiVerdict::Undecided);
    }

    fn probe_agreement(a: &SymmetricConvexBody, b: &SymmetricConvexBody, dist: impl Fn(&[f64]) -> f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let sum = MinkowskiImage::new(a.clone(), b.clone(), Matrix::identity(a.dim(), a.dim()))
            .unwrap()
            .closed_form()
            .unwrap();
        let mut checked = 0;
        for _ in 0..3000 {
            let x: Vec<f64> = (0..a.dim()).map(|_| rng.random_range(-3.0..3.0)).collect();
            if dist(&x) < 2.0 * DEFAULT_TOL {
                continue;
            }
            let expect = if sum.contains(&x).unwrap() {
                MinkowskiVerdict::Member
            } else {
                MinkowskiVerdict::NonMember
            };
            assert_eq!(member(a, b, &x), expect, "probe {x:?}");
            checked += 1;
        }
        assert!(checked > 2500);
    }

    #[test]
    fn agrees_with_closed_form_for_balls() {
        let a = SymmetricConvexBody::ball(3, 0.7).unwrap();
        let b = SymmetricConvexBody::ball(3, 1.1).unwrap();
        probe_agreement(&a, &b, |x| (linalg::norm(x) - 1.8).abs());
    }

    #[test]
    fn agrees_with_closed_form_for_boxes() {
        let a = SymmetricConvexBody::cube(vec![1.0, 0.3, 0.8]).unwrap();
        let b = SymmetricConvexBody::cube(vec![0.5, 0.9, 0.2]).unwrap();
        let w = [1.5, 1.2, 1.0];
        probe_agreement(&a, &b, |x| {
            let outside: f64 = x
                .iter()
                .zip(&w)
                .map(|(v, w)| (v.abs() - w).max(0.0).powi(2))
                .sum::<f64>()
                .sqrt();
            if outside > 0.0 {
                outside
            } else {
                x.iter().zip(&w).map(|(v, w)| w - v.abs()).fold(f64::INFINITY, f64::min)
            }
        });
    }

    #[test]
    fn ball_plus_box_along_an_axis() {
        // Ball(1) + Box(1, 1): along the x axis the sum reaches 2, along the
        // diagonal it reaches sqrt(2) + 1.
        let a = SymmetricConvexBody::ball(2, 1.0).unwrap();
        let b = SymmetricConvexBody::cube(vec![1.0, 1.0]).unwrap();
        assert_eq!(member(&a, &b, &[1.99, 0.0]), MinkowskiVerdict::Member);
        assert_eq!(member(&a, &b, &[2.01, 0.0]), MinkowskiVerdict::NonMember);
        let d = (2.0f64.sqrt() + 1.0) / 2.0f64.sqrt();
        assert_eq!(member(&a, &b, &[d - 0.01, d - 0.01]), MinkowskiVerdict::Member);
        assert_eq!(member(&a, &b, &[d + 0.01, d + 0.01]), MinkowskiVerdict::NonMember);
    }

    #[test]
    fn ellipsoid_plus_box_matches_alternating_projections() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut decided = 0;
        for seed in 0..6 {
            let n = 2 + seed as usize % 3;
            let e = random_body(ShapeKind::Ellipsoid, n, 1.0, seed).unwrap();
            let b = random_body(ShapeKind::Box, n, 1.0, seed + 100).unwrap();
            let red = Reduction::new(&e, &b).unwrap();
            assert!(matches!(red, Reduction::BoxQuadratic { .. }));
            for _ in 0..200 {
                let x: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
                let fast = member_unchecked(&e, &b, &x, DEFAULT_TOL, DEFAULT_MAX_ITER, Some(&red)).unwrap();
                let slow = member_unchecked(&e, &b, &x, DEFAULT_TOL, 200_000, None).unwrap();
                if slow != MinkowskiVerdict::Undecided {
                    assert_eq!(fast, slow, "{x:?}");
                    decided += 1;
                }
                let minus: Vec<f64> = x.iter().map(|v| -v).collect();
                assert_eq!(fast, member_unchecked(&e, &b, &minus, DEFAULT_TOL, DEFAULT_MAX_ITER, Some(&red)).unwrap());
            }
        }
        assert!(decided > 1000);
    }

    #[test]
    fn box_quadratic_minimum_in_closed_form() {
        // Q = I: squared distance to the box
        let q = Matrix::identity(2, 2);
        let f = box_quadratic_min(&q, &[1.0, 0.5], &[3.0, -0.2]).unwrap();
        assert!((f - 4.0).abs() < 1e-14);
        let f = box_quadratic_min(&q, &[1.0, 0.5], &[2.0, 1.5]).unwrap();
        assert!((f - 2.0).abs() < 1e-14);
        assert_eq!(box_quadratic_min(&q, &[1.0, 0.5], &[0.3, 0.1]).unwrap(), 0.0);
    }

    #[test]
    fn membership_is_even() {
        let a = random_body(ShapeKind::Ellipsoid, 3, 1.0, 1).unwrap();
        let b = random_body(ShapeKind::Box, 3, 1.0, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let x: Vec<f64> = (0..3).map(|_| rng.random_range(-3.0..3.0)).collect();
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            assert_eq!(member(&a, &b, &x), member(&a, &b, &neg));
        }
    }

    #[test]
    fn image_region_uses_the_map() {
        let ball = SymmetricConvexBody::ball(2, 1.0).unwrap();
        // (2I)^{-1}(B + B) = B
        let img = MinkowskiImage::new(ball.clone(), ball, Matrix::identity(2, 2) * 2.0).unwrap();
        assert_eq!(img.membership(&[0.99, 0.0]), Membership::Inside);
        assert_eq!(img.membership(&[1.01, 0.0]), Membership::Outside);
        assert!(img.closed_form().unwrap().contains(&[0.99, 0.0]).unwrap());
        let singular = Matrix::zeros(2, 2);
        let ball = SymmetricConvexBody::ball(2, 1.0).unwrap();
        assert!(MinkowskiImage::new(ball.clone(), ball, singular).is_err());
    }
}
