//! Cramér-type tail bound for the Gaussian measure of small balls.
//!
//! For a standard Gaussian `X` in `R^n` and `0 < k ≤ 1`, Markov's inequality
//! applied to `exp(−t‖X‖²/2)` gives
//!
//! ```text
//! γ(k√n 𝔹) ≤ (e^{t k²} / (1 + t))^{n/2}   for every t > 0,
//! ```
//!
//! minimised at `t = (1 − k²)/k²`, where it equals `(k² e^{1−k²})^{n/2}`.

use crate::error::{Error, Result};
use crate::gaussian::measure_ball_exact;

const BISECTION_MAX_ITER: usize = 200;

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("k = {k} must lie in (0, 1]")))
    }
}

/// `ln(k² e^{1−k²}) / 2`, the per-dimension log of the bound.
pub fn log_rate(k: f64) -> f64 {
    0.5 * (2.0 * k.ln() + 1.0 - k * k)
}

/// `(k² e^{1−k²})^{n/2}`, evaluated in log space.
pub fn chernoff_bound(k: f64, n: usize) -> Result<f64> {
    check_k(k)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    Ok((n as f64 * log_rate(k)).exp())
}

/// The Markov bound `(e^{t k²} / (1 + t))^{n/2}` at an arbitrary `t > −1`.
pub fn markov_bound(k: f64, t: f64, n: usize) -> f64 {
    (0.5 * n as f64 * (t * k * k - t.ln_1p())).exp()
}

/// `(1 − k²)/k²`, checked for first-order optimality of
/// `t ↦ (e^{t k²}/(1 + t))^{1/2}` by a central difference.
pub fn optimal_t(k: f64) -> Result<f64> {
    check_k(k)?;
    let t = (1.0 - k * k) / (k * k);
    let h = 1e-5 * t.max(1.0);
    let f = |t: f64| markov_bound(k, t, 1);
    let slope = (f(t + h) - f(t - h)) / (2.0 * h);
    if slope.abs() > 1e-8 {
        return Err(Error::Internal(format!(
            "derivative {slope:e} does not vanish at t = {t}"
        )));
    }
    Ok(t)
}

/// `3c² e^{1−3c²} − 3/4`; increasing on `(0, 3^{−1/2})`.
fn small_radius_gap(c: f64) -> f64 {
    let u = 3.0 * c * c;
    u * (1.0 - u).exp() - 0.75
}

/// Smallest positive root of `3c² e^{1−3c²} = 3/4`, by bisection on the
/// validated bracket `(0, 3^{−1/2})`.
pub fn find_c1(tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    let (mut lo, mut hi) = (0.0, 1.0 / 3f64.sqrt());
    if !(small_radius_gap(lo) < 0.0 && small_radius_gap(hi) > 0.0) {
        return Err(Error::Internal("c1 bracket does not change sign".into()));
    }
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if small_radius_gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `½ e^{−1/2}`.
pub fn constant_c0() -> f64 {
    0.5 * (-0.5f64).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundComparison {
    pub exact: f64,
    pub bound: f64,
}

/// Exact `γ(k√n 𝔹)` against the optimised Chernoff bound.
pub fn bound_vs_exact(k: f64, n: usize) -> Result<BoundComparison> {
    let bound = chernoff_bound(k, n)?;
    let exact = measure_ball_exact(k * (n as f64).sqrt(), n)?.value;
    Ok(BoundComparison { exact, bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_saturates_at_one() {
        for n in [1, 7, 64] {
            assert_eq!(chernoff_bound(1.0, n).unwrap(), 1.0);
        }
        assert!(chernoff_bound(0.0, 2).is_err());
        assert!(chernoff_bound(1.1, 2).is_err());
        assert!(chernoff_bound(0.5, 0).is_err());
    }

    #[test]
    fn optimiser_values() {
        assert_eq!(optimal_t(1.0).unwrap(), 0.0);
        assert!((optimal_t(std::f64::consts::FRAC_1_SQRT_2).unwrap() - 1.0).abs() < 1e-15);
        assert!(optimal_t(0.0).is_err());
        let k = 0.374 * 3f64.sqrt();
        let t = optimal_t(k).unwrap();
        for n in [1, 4, 9] {
            let plug = markov_bound(k, t, n);
            assert!((plug - chernoff_bound(k, n).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn c1_and_c0() {
        let c1 = find_c1(5e-4).unwrap();
        assert!((c1 - 0.374).abs() < 5e-4);
        let fine = find_c1(1e-10).unwrap();
        assert!((fine - c1).abs() < 5e-4);
        assert!(find_c1(0.0).is_err());
        let c0 = constant_c0();
        assert!((2.0 * c0 * 0.5f64.exp() - 1.0).abs() < 1e-15);
        assert!(c0 < find_c1(1e-8).unwrap());
    }

    #[test]
    fn exact_stays_below_bound() {
        let cmp = bound_vs_exact(1.0, 10).unwrap();
        assert_eq!(cmp.bound, 1.0);
        assert!(cmp.exact < 1.0);
        for n in 1..=64 {
            let cmp = bound_vs_exact(0.5, n).unwrap();
            assert!(cmp.exact <= cmp.bound, "n = {n}");
        }
    }

    #[test]
    fn per_dimension_log_slope_is_constant() {
        let k = 0.3;
        for n in [1, 5, 40] {
            let slope = chernoff_bound(k, n).unwrap().ln() / n as f64;
            assert!((slope - log_rate(k)).abs() < 1e-14);
        }
    }
}
