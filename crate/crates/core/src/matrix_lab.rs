//! Matrix quintuples `(M, P, R, S, T)` and the block-matrix identities behind
//! the correlation inequality.
//!
//! The quintuple hypotheses are
//!
//! ```text
//! P (I + S Sᵀ) Pᵀ = (I − M Mᵀ)⁻¹
//! P (I − S Tᵀ) Rᵀ = M (I − Mᵀ M)⁻¹
//! R (I + T Tᵀ) Rᵀ = (I − Mᵀ M)⁻¹
//! ```
//!
//! which is the statement `F Fᵀ = [[I, −M], [−Mᵀ, I]]⁻¹` for
//! `F = [[P, P S], [R, −R T]]`. Gaussian measure of symmetric sets cannot tell
//! `M` from `−M`, so the sign of `M` in the block form carries no content.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Distance to a pole below which a matrix function is refused.
const POLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFn {
    Sin,
    Cos,
    Tan,
    Inverse,
    Sqrt,
}

impl MatrixFn {
    fn name(self) -> &'static str {
        match self {
            MatrixFn::Sin => "sin",
            MatrixFn::Cos => "cos",
            MatrixFn::Tan => "tan",
            MatrixFn::Inverse => "inverse",
            MatrixFn::Sqrt => "sqrt",
        }
    }

    fn apply(self, x: f64) -> Result<f64> {
        let pole = |distance: f64| Error::Pole {
            function: self.name(),
            eigenvalue: x,
            distance,
        };
        match self {
            MatrixFn::Sin => Ok(x.sin()),
            MatrixFn::Cos => Ok(x.cos()),
            MatrixFn::Tan => {
                let k = ((x - FRAC_PI_2) / PI).round();
                let distance = (x - (FRAC_PI_2 + k * PI)).abs();
                if distance < POLE_TOL {
                    Err(pole(distance))
                } else {
                    Ok(x.tan())
                }
            }
            MatrixFn::Inverse => {
                if x.abs() < POLE_TOL {
                    Err(pole(x.abs()))
                } else {
                    Ok(1.0 / x)
                }
            }
            MatrixFn::Sqrt => {
                if x < -1e-12 {
                    Err(Error::NotPositiveDefinite(x))
                } else {
                    Ok(x.max(0.0).sqrt())
                }
            }
        }
    }
}

fn check_symmetric(a: &Matrix, tol: f64) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: a.ncols(),
        });
    }
    let asym = linalg::asymmetry(a);
    if asym > tol * a.amax().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

/// `f(a) = U f(Λ) Uᵀ` for symmetric `a = U Λ Uᵀ`.
pub fn matrix_function(a: &Matrix, f: MatrixFn) -> Result<Matrix> {
    check_symmetric(a, 1e-10)?;
    let eig = linalg::symmetrize(a).symmetric_eigen();
    let values = eig
        .eigenvalues
        .iter()
        .map(|l| f.apply(*l))
        .collect::<Result<Vec<f64>>>()?;
    let u = &eig.eigenvectors;
    let scaled = DMatrix::from_fn(u.nrows(), u.ncols(), |i, j| u[(i, j)] * values[j]);
    Ok(linalg::symmetrize(&(scaled * u.transpose())))
}

/// The principal (symmetric positive-definite) square root.
pub fn symmetric_psd_sqrt(a: &Matrix) -> Result<Matrix> {
    check_symmetric(a, 1e-10)?;
    let min = linalg::min_eigenvalue(&linalg::symmetrize(a));
    if !(min > 1e-12) {
        return Err(Error::NotPositiveDefinite(min));
    }
    matrix_function(a, MatrixFn::Sqrt)
}

/// A pair of commuting symmetric matrices given in a shared eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AnglePairRecord", into = "AnglePairRecord")]
pub struct AnglePair {
    alpha: Matrix,
    beta: Matrix,
    shared_eigenbasis: Matrix,
}

impl AnglePair {
    /// `α = U diag(a) Uᵀ`, `β = U diag(b) Uᵀ` for orthogonal `U`.
    pub fn from_eigenvalues(basis: Matrix, alpha: &[f64], beta: &[f64]) -> Result<Self> {
        let n = basis.nrows();
        if !basis.is_square() || alpha.len() != n || beta.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: alpha.len().max(beta.len()),
            });
        }
        let dev = (basis.transpose() * &basis - Matrix::identity(n, n)).amax();
        if dev > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "eigenbasis is not orthogonal (deviation {dev:e})"
            )));
        }
        let build = |vals: &[f64]| {
            let scaled = DMatrix::from_fn(n, n, |i, j| basis[(i, j)] * vals[j]);
            linalg::symmetrize(&(scaled * basis.transpose()))
        };
        Ok(Self {
            alpha: build(alpha),
            beta: build(beta),
            shared_eigenbasis: basis,
        })
    }

    pub fn scalar(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        Self::from_eigenvalues(Matrix::identity(n, n), &vec![alpha; n], &vec![beta; n])
    }

    /// Validates symmetry (1e−12) and commutation (1e−10); the shared
    /// eigenbasis is recovered from a generic combination of the two.
    pub fn from_matrices(alpha: Matrix, beta: Matrix) -> Result<Self> {
        if alpha.shape() != beta.shape() {
            return Err(Error::DimensionMismatch {
                expected: alpha.nrows(),
                got: beta.nrows(),
            });
        }
        check_symmetric(&alpha, 1e-12)?;
        check_symmetric(&beta, 1e-12)?;
        let comm = (&alpha * &beta - &beta * &alpha).norm();
        if comm > 1e-10 {
            return Err(Error::NotCommuting(comm));
        }
        let mix = &alpha + &beta * std::f64::consts::FRAC_1_SQRT_2;
        let basis = linalg::symmetrize(&mix).symmetric_eigen().eigenvectors;
        Ok(Self {
            alpha,
            beta,
            shared_eigenbasis: basis,
        })
    }

    /// Random pair: Haar-random shared basis, eigenvalues uniform in `(lo, hi)`.
    pub fn random(n: usize, lo: f64, hi: f64, seed: u64) -> Result<Self> {
        if n == 0 || !(lo < hi) {
            return Err(Error::InvalidParameter(format!("bad random angle range ({lo}, {hi})")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = linalg::random_orthogonal(n, &mut rng);
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        Self::from_eigenvalues(basis, &a, &b)
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn shared_eigenbasis(&self) -> &Matrix {
        &self.shared_eigenbasis
    }

    pub fn n(&self) -> usize {
        self.alpha.nrows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixQuintuple {
    pub m: Matrix,
    pub p: Matrix,
    pub r: Matrix,
    pub s: Matrix,
    pub t: Matrix,
}

impl MatrixQuintuple {
    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    /// `M = 0`, `P = R = 2^{−1/2} I`, `S = T = I`.
    pub fn ssz(n: usize) -> Self {
        let id = Matrix::identity(n, n);
        Self {
            m: Matrix::zeros(n, n),
            p: &id * std::f64::consts::FRAC_1_SQRT_2,
            r: &id * std::f64::consts::FRAC_1_SQRT_2,
            s: id.clone(),
            t: id,
        }
    }

    /// `M = 0`, `P = pI`, `R = rI`, `S = (r/p) I`, `T = (p/r) I`.
    pub fn li(n: usize, p: f64, r: f64) -> Self {
        let id = Matrix::identity(n, n);
        Self {
            m: Matrix::zeros(n, n),
            p: &id * p,
            r: &id * r,
            s: &id * (r / p),
            t: &id * (p / r),
        }
    }

    /// `M = ½ I`, `P = R = I`, `S = T = 3^{−1/2} I`.
    pub fn corollary(n: usize) -> Self {
        let id = Matrix::identity(n, n);
        Self {
            m: &id * 0.5,
            p: id.clone(),
            r: id.clone(),
            s: &id / 3f64.sqrt(),
            t: &id / 3f64.sqrt(),
        }
    }
}

/// `(cos(α+β), cos α · sin(α+β)⁻¹, cos β · sin(α+β)⁻¹, tan α, tan β)`.
///
/// Requires the eigenvalues of `α` and `β` to lie in `(0, π/2)`, so the
/// tangents are finite and `cos(α+β)` has spectrum in `(−1, 1)`.
pub fn build_from_angles(angles: &AnglePair) -> Result<MatrixQuintuple> {
    let (alpha, beta) = (&angles.alpha, &angles.beta);
    check_symmetric(alpha, 1e-12)?;
    check_symmetric(beta, 1e-12)?;
    let comm = (alpha * beta - beta * alpha).norm();
    if comm > 1e-10 {
        return Err(Error::NotCommuting(comm));
    }
    for m in [alpha, beta] {
        for l in m.clone().symmetric_eigen().eigenvalues.iter() {
            if !(*l > 0.0 && *l < FRAC_PI_2) {
                return Err(Error::AngleRange(*l));
            }
        }
    }
    let sum = alpha + beta;
    let sin_inv = matrix_function(&matrix_function(&sum, MatrixFn::Sin)?, MatrixFn::Inverse)?;
    Ok(MatrixQuintuple {
        m: matrix_function(&sum, MatrixFn::Cos)?,
        p: matrix_function(alpha, MatrixFn::Cos)? * &sin_inv,
        r: matrix_function(beta, MatrixFn::Cos)? * &sin_inv,
        s: matrix_function(alpha, MatrixFn::Tan)?,
        t: matrix_function(beta, MatrixFn::Tan)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// `‖P(I + SSᵀ)Pᵀ − (I − MMᵀ)⁻¹‖_F`
    pub first: f64,
    /// `‖P(I − STᵀ)Rᵀ − M(I − MᵀM)⁻¹‖_F`
    pub second: f64,
    /// `‖R(I + TTᵀ)Rᵀ − (I − MᵀM)⁻¹‖_F`
    pub third: f64,
    /// `‖FFᵀ − [[I, −M], [−Mᵀ, I]]⁻¹‖_F`
    pub block: f64,
    /// Smallest eigenvalue of `I − MᵀM`.
    pub min_eigenvalue: f64,
    pub validated: bool,
}

impl HypothesisReport {
    pub fn max_residual(&self) -> f64 {
        self.first.max(self.second).max(self.third).max(self.block)
    }
}

fn block2(tl: &Matrix, tr: &Matrix, bl: &Matrix, br: &Matrix) -> Matrix {
    let (m, n) = (tl.nrows(), br.nrows());
    let mut out = Matrix::zeros(m + n, tl.ncols() + br.ncols());
    out.view_mut((0, 0), tl.shape()).copy_from(tl);
    out.view_mut((0, tl.ncols()), tr.shape()).copy_from(tr);
    out.view_mut((m, 0), bl.shape()).copy_from(bl);
    out.view_mut((m, tl.ncols()), br.shape()).copy_from(br);
    out
}

/// `[[I_m, M], [Mᵀ, I_n]]` for an `m × n` matrix `M`.
pub fn correlation_block(m: &Matrix) -> Matrix {
    let (r, c) = m.shape();
    block2(&Matrix::identity(r, r), m, &m.transpose(), &Matrix::identity(c, c))
}

/// Residuals of the three quintuple equations and of the block identity.
pub fn check_hypotheses(q: &MatrixQuintuple, tol: f64) -> Result<HypothesisReport> {
    let n = q.m.nrows();
    for x in [&q.m, &q.p, &q.r, &q.s, &q.t] {
        if x.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.nrows().max(x.ncols()),
            });
        }
    }
    let id = Matrix::identity(n, n);
    let neg = -&q.m;
    let corr = correlation_block(&neg);
    let block_min = linalg::min_eigenvalue(&corr);
    if block_min < 1e-12 {
        return Err(Error::Singular(f64::INFINITY));
    }
    let mmt = &id - &q.m * q.m.transpose();
    let mtm = &id - q.m.transpose() * &q.m;
    let mmt_inv = linalg::checked_inverse(&mmt)?;
    let mtm_inv = linalg::checked_inverse(&mtm)?;

    let first = (&q.p * (&id + &q.s * q.s.transpose()) * q.p.transpose() - &mmt_inv).norm();
    let second = (&q.p * (&id - &q.s * q.t.transpose()) * q.r.transpose() - &q.m * &mtm_inv).norm();
    let third = (&q.r * (&id + &q.t * q.t.transpose()) * q.r.transpose() - &mtm_inv).norm();

    let f = block2(&q.p, &(&q.p * &q.s), &q.r, &(-(&q.r * &q.t)));
    let block = (&f * f.transpose() - linalg::checked_inverse(&corr)?).norm();

    let min_eigenvalue = linalg::min_eigenvalue(&mtm);
    let validated = first <= tol && second <= tol && third <= tol && block <= tol && min_eigenvalue > 0.0;
    Ok(HypothesisReport {
        first,
        second,
        third,
        block,
        min_eigenvalue,
        validated,
    })
}

fn require_contraction(m: &Matrix) -> Result<f64> {
    let (_, c) = m.shape();
    let gram = Matrix::identity(c, c) - m.transpose() * m;
    let min = linalg::min_eigenvalue(&gram);
    if min > 0.0 {
        Ok(min)
    } else {
        Err(Error::NotPositiveDefinite(min))
    }
}

/// `|det [[I, M], [Mᵀ, I]] − det(I − MᵀM)| / det(I − MᵀM)`.
pub fn det_block_identity(m: &Matrix) -> Result<f64> {
    require_contraction(m)?;
    let (_, c) = m.shape();
    let block = correlation_block(m).determinant();
    let small = (Matrix::identity(c, c) - m.transpose() * m).determinant();
    Ok((block - small).abs() / small)
}

/// Frobenius distance between the assembled block matrix
/// `[[(I−MMᵀ)⁻¹, M(I−MᵀM)⁻¹], [Mᵀ(I−MMᵀ)⁻¹, (I−MᵀM)⁻¹]]` and the numerical
/// inverse of `[[I, −M], [−Mᵀ, I]]`.
pub fn shao_block_inverse(m: &Matrix) -> Result<f64> {
    require_contraction(m)?;
    let (r, c) = m.shape();
    let mmt_inv = linalg::checked_inverse(&(Matrix::identity(r, r) - m * m.transpose()))?;
    let mtm_inv = linalg::checked_inverse(&(Matrix::identity(c, c) - m.transpose() * m))?;
    let assembled = block2(&mmt_inv, &(m * &mtm_inv), &(m.transpose() * &mmt_inv), &mtm_inv);
    let direct = linalg::checked_inverse(&correlation_block(&-m))?;
    Ok((assembled - direct).norm())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AnglePairRecord {
    n: usize,
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl From<AnglePair> for AnglePairRecord {
    fn from(a: AnglePair) -> Self {
        Self {
            n: a.n(),
            alpha: linalg::to_row_major(&a.alpha),
            beta: linalg::to_row_major(&a.beta),
        }
    }
}

impl TryFrom<AnglePairRecord> for AnglePair {
    type Error = Error;

    fn try_from(r: AnglePairRecord) -> Result<Self> {
        AnglePair::from_matrices(
            linalg::from_row_major(r.n, r.n, &r.alpha)?,
            linalg::from_row_major(r.n, r.n, &r.beta)?,
        )
    }
}

/// Row-major text record of a quintuple: `n`, then `m`, `p`, `r`, `s`, `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuintupleRecord {
    pub n: usize,
    pub m: Vec<f64>,
    pub p: Vec<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub t: Vec<f64>,
}

impl From<&MatrixQuintuple> for QuintupleRecord {
    fn from(q: &MatrixQuintuple) -> Self {
        Self {
            n: q.n(),
            m: linalg::to_row_major(&q.m),
            p: linalg::to_row_major(&q.p),
            r: linalg::to_row_major(&q.r),
            s: linalg::to_row_major(&q.s),
            t: linalg::to_row_major(&q.t),
        }
    }
}

impl TryFrom<QuintupleRecord> for MatrixQuintuple {
    type Error = Error;

    fn try_from(r: QuintupleRecord) -> Result<Self> {
        let n = r.n;
        Ok(Self {
            m: linalg::from_row_major(n, n, &r.m)?,
            p: linalg::from_row_major(n, n, &r.p)?,
            r: linalg::from_row_major(n, n, &r.r)?,
            s: linalg::from_row_major(n, n, &r.s)?,
            t: linalg::from_row_major(n, n, &r.t)?,
        })
    }
}
