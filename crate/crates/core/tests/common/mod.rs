//! Reference computations that share no code with the library: composite
//! Simpson integration of the normal density, the power series of the lower
//! incomplete gamma function with half-integer gamma values built by
//! recursion, and rectangle probabilities of correlated normal pairs.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Composite Simpson rule with `2m` panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let n = 2 * m;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

pub fn density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Φ(x) by integrating the density from 0.
pub fn cdf(x: f64) -> f64 {
    0.5 + simpson(density, 0.0, x, 20_000)
}

/// Γ(k/2) for positive integers k.
pub fn gamma_half(k: usize) -> f64 {
    let (mut g, mut a) = if k % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while 2.0 * a < k as f64 {
        g *= a;
        a += 1.0;
    }
    g
}

/// `P(χ²_n ≤ r²)` by the series `x^a e^{−x} Σ x^k / Γ(a + k + 1)`, `a = n/2`,
/// `x = r²/2`.
pub fn ball_mass(r: f64, n: usize) -> f64 {
    let a = 0.5 * n as f64;
    let x = 0.5 * r * r;
    let mut term = x.powf(a) * (-x).exp() / (a * gamma_half(n));
    let mut sum = term;
    let mut k = 1.0;
    while term > 1e-18 * sum {
        term *= x / (a + k);
        sum += term;
        k += 1.0;
    }
    sum
}

/// `P(|U| ≤ u_max, |V| ≤ v_max)` for centred normals with standard
/// deviations `su`, `sv` and correlation `rho`.
pub fn rectangle(su: f64, sv: f64, rho: f64, u_max: f64, v_max: f64) -> f64 {
    let s = sv * (1.0 - rho * rho).sqrt();
    simpson(
        |u| {
            let mu = rho * sv / su * u;
            density(u / su) / su * (cdf_fast((v_max - mu) / s) - cdf_fast((-v_max - mu) / s))
        },
        -u_max,
        u_max,
        2_000,
    )
}

/// Φ through a separate special-function implementation, for inner loops.
pub fn cdf_fast(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}
