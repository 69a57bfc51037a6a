//! Browser demo: Chernoff curves, planar sets with the main inequality, and
//! h-profile heatmaps. Shapes are short strings:
//!
//! ```text
//! ball 1.0
//! box 1.0 0.4
//! ellipse 1.2 0.5 30      semi-axes, then rotation in degrees
//! ```
//!
//! The `*_impl` functions are plain Rust so they can be tested natively.

use wasm_bindgen::prelude::*;

use gcorr::chernoff::{bound_vs_exact, find_c1};
use gcorr::gaussian::Budget;
use gcorr::inequality::{check_main_theorem, h_profile};
use gcorr::linalg::Matrix;
use gcorr::matrix_lab::{build_from_angles, AnglePair, MatrixQuintuple};
use gcorr::SymmetricConvexBody;

pub fn parse_shape(spec: &str) -> Result<SymmetricConvexBody, String> {
    let mut words = spec.split_whitespace();
    let kind = words.next().ok_or("empty shape")?;
    let nums: Vec<f64> = words
        .map(|w| w.parse::<f64>().map_err(|_| format!("not a number: {w}")))
        .collect::<Result<_, _>>()?;
    let arity = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(format!("`{kind}` takes {k} numbers, got {}", nums.len()))
        }
    };
    let body = match kind {
        "ball" => {
            arity(1)?;
            SymmetricConvexBody::ball(2, nums[0])
        }
        "box" => {
            arity(2)?;
            SymmetricConvexBody::cube(nums.clone())
        }
        "ellipse" => {
            arity(3)?;
            let (s, c) = nums[2].to_radians().sin_cos();
            let rot = Matrix::from_row_slice(2, 2, &[c, -s, s, c]);
            let diag = Matrix::from_row_slice(2, 2, &[1.0 / (nums[0] * nums[0]), 0.0, 0.0, 1.0 / (nums[1] * nums[1])]);
            SymmetricConvexBody::ellipsoid(&rot * diag * rot.transpose())
        }
        other => return Err(format!("unknown shape `{other}` (ball, box, ellipse)")),
    };
    body.map_err(|e| e.to_string())
}

fn quintuple(alpha: f64, beta: f64) -> Result<MatrixQuintuple, String> {
    let pair = AnglePair::scalar(2, alpha, beta).map_err(|e| e.to_string())?;
    build_from_angles(&pair).map_err(|e| e.to_string())
}

/// `(k, exact, bound)` triples for `k = 1/points, …, 1`.
pub fn chernoff_curve_impl(n: usize, points: usize) -> Result<Vec<f64>, String> {
    let mut out = Vec::with_capacity(3 * points);
    for i in 1..=points {
        let k = i as f64 / points as f64;
        let cmp = bound_vs_exact(k, n).map_err(|e| e.to_string())?;
        out.extend([k, cmp.exact, cmp.bound]);
    }
    Ok(out)
}

/// Row-major `size × size` grid over `[−extent, extent]²`, top row first;
/// bit 0 marks A, bit 1 marks B.
pub fn membership_grid_impl(a: &str, b: &str, size: usize, extent: f64) -> Result<Vec<u8>, String> {
    let (a, b) = (parse_shape(a)?, parse_shape(b)?);
    let mut out = Vec::with_capacity(size * size);
    for row in 0..size {
        let y = extent - 2.0 * extent * (row as f64 + 0.5) / size as f64;
        for col in 0..size {
            let x = -extent + 2.0 * extent * (col as f64 + 0.5) / size as f64;
            let p = [x, y];
            out.push(u8::from(a.contains_unchecked(&p)) | (u8::from(b.contains_unchecked(&p)) << 1));
        }
    }
    Ok(out)
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct CheckSummary {
    pub lhs: f64,
    pub lhs_low: f64,
    pub lhs_high: f64,
    pub rhs: f64,
    pub rhs_low: f64,
    pub rhs_high: f64,
    pub margin: f64,
    verdict: String,
}

#[wasm_bindgen]
impl CheckSummary {
    #[wasm_bindgen(getter)]
    pub fn verdict(&self) -> String {
        self.verdict.clone()
    }
}

/// The main inequality in the plane with the quintuple built from `α I, β I`.
pub fn main_theorem_impl(a: &str, b: &str, alpha: f64, beta: f64, samples: usize, seed: u64) -> Result<CheckSummary, String> {
    let (a, b) = (parse_shape(a)?, parse_shape(b)?);
    let q = quintuple(alpha, beta)?;
    let r = check_main_theorem(&a, &b, &q, &Budget::monte_carlo(samples, seed, 0.99)).map_err(|e| e.to_string())?;
    Ok(CheckSummary {
        lhs: r.lhs.value,
        lhs_low: r.lhs.low,
        lhs_high: r.lhs.high,
        rhs: r.rhs.value,
        rhs_low: r.rhs.low,
        rhs_high: r.rhs.high,
        margin: r.margin,
        verdict: r.verdict.to_string(),
    })
}

/// `h(y)` on the same grid layout as [`membership_grid_impl`], with `S` and
/// `T` from the quintuple of `α I, β I`.
pub fn h_heatmap_impl(
    a: &str,
    b: &str,
    alpha: f64,
    beta: f64,
    size: usize,
    extent: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>, String> {
    let (a, b) = (parse_shape(a)?, parse_shape(b)?);
    let q = quintuple(alpha, beta)?;
    let mut ys = Vec::with_capacity(size * size);
    for row in 0..size {
        let y = extent - 2.0 * extent * (row as f64 + 0.5) / size as f64;
        for col in 0..size {
            ys.push(vec![-extent + 2.0 * extent * (col as f64 + 0.5) / size as f64, y]);
        }
    }
    let profile = h_profile(&a, &b, &q.s, &q.t, &ys, &Budget::monte_carlo(samples, seed, 0.99)).map_err(|e| e.to_string())?;
    Ok(profile.values.iter().map(|e| e.value).collect())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn chernoff_curve(n: usize, points: usize) -> Result<Vec<f64>, JsError> {
    js(chernoff_curve_impl(n, points))
}

#[wasm_bindgen]
pub fn small_radius_constant() -> Result<f64, JsError> {
    js(find_c1(1e-10).map_err(|e| e.to_string()))
}

#[wasm_bindgen]
pub fn membership_grid(a: &str, b: &str, size: usize, extent: f64) -> Result<Vec<u8>, JsError> {
    js(membership_grid_impl(a, b, size, extent))
}

#[wasm_bindgen]
pub fn main_theorem(a: &str, b: &str, alpha: f64, beta: f64, samples: usize, seed: u64) -> Result<CheckSummary, JsError> {
    js(main_theorem_impl(a, b, alpha, beta, samples, seed))
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn h_heatmap(
    a: &str,
    b: &str,
    alpha: f64,
    beta: f64,
    size: usize,
    extent: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>, JsError> {
    js(h_heatmap_impl(a, b, alpha, beta, size, extent, samples, seed))
}
