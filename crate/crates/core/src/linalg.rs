//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;

/// Condition estimates at or above this value are treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Builds an `rows x cols` matrix from row-major data.
pub fn from_row_major(rows: usize, cols: usize, data: &[f64]) -> Result<Matrix> {
    if data.len() != rows * cols {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            got: data.len(),
        });
    }
    Ok(DMatrix::from_row_slice(rows, cols, data))
}

pub fn to_row_major(m: &Matrix) -> Vec<f64> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push(m[(i, j)]);
        }
    }
    out
}

/// `out = m * x`, written without allocation. Linear in `x`, so negating the
/// input negates the output bit for bit.
#[inline]
pub fn mul_into(m: &Matrix, x: &[f64], out: &mut [f64]) {
    debug_assert_eq!(m.ncols(), x.len());
    debug_assert_eq!(m.nrows(), out.len());
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (j, xj) in x.iter().enumerate() {
            acc += m[(i, j)] * xj;
        }
        *o = acc;
    }
}

pub fn mul_vec(m: &Matrix, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; m.nrows()];
    mul_into(m, x, &mut out);
    out
}

/// Ratio of extreme singular values; infinite for an exactly singular matrix.
pub fn condition_number(m: &Matrix) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub fn spectral_norm(m: &Matrix) -> f64 {
    m.clone().singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Inverse of a square, well-conditioned matrix.
pub fn checked_inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    let cond = condition_number(m);
    if !(cond < MAX_CONDITION) {
        return Err(Error::Singular(cond));
    }
    m.clone().lu().try_inverse().ok_or(Error::Singular(cond))
}

pub fn asymmetry(m: &Matrix) -> f64 {
    (m - m.transpose()).norm()
}

pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

pub fn min_eigenvalue(sym: &Matrix) -> f64 {
    sym.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// If `t = c U` for an orthogonal `U` and `c > 0`, returns `c`.
pub fn orthogonal_scale(t: &Matrix) -> Option<f64> {
    if !t.is_square() {
        return None;
    }
    let gram = t.transpose() * t;
    let c2 = gram.diagonal().mean();
    if !(c2 > 0.0) {
        return None;
    }
    let dev = (&gram - Matrix::identity(t.nrows(), t.ncols()) * c2).amax();
    (dev <= 1e-12 * c2).then(|| c2.sqrt())
}

/// If `t` is diagonal, returns its diagonal entries.
pub fn diagonal_entries(t: &Matrix) -> Option<Vec<f64>> {
    if !t.is_square() {
        return None;
    }
    for i in 0..t.nrows() {
        for j in 0..t.ncols() {
            if i != j && t[(i, j)] != 0.0 {
                return None;
            }
        }
    }
    Some(t.diagonal().iter().cloned().collect())
}

pub fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|v| *v == 0.0)
}

/// Haar-distributed orthogonal matrix via QR of a Gaussian matrix with the
/// sign of R's diagonal folded into Q.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn to_dvector(x: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(x)
}
