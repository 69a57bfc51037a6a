//! Standard Gaussian measure of regions.
//!
//! Three routes: closed forms (balls, boxes and their simple linear images),
//! a midpoint tensor-grid quadrature usable as an oracle in dimension ≤ 3, and
//! seeded Monte Carlo with Wilson score intervals everywhere else.
//!
//! Monte Carlo draws are always symmetrised: every standard normal draw `x` is
//! evaluated together with `-x` (or, for product designs, with every sign
//! flip of its coordinate blocks). The random stream is split into chunks of
//! 4096 points, chunk `c` drawing from ChaCha8 stream `c` of the seed, so
//! estimates do not depend on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::gamma;

use crate::body::{Shape, SymmetricConvexBody};
use crate::error::{Error, Result};
use crate::linalg;
use crate::minkowski::MinkowskiImage;
use crate::region::{Membership, Region};

/// Points per random-stream chunk.
pub const CHUNK_POINTS: usize = 4096;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_CONFIDENCE: f64 = 0.99;
pub const DEFAULT_QUADRATURE_BOUNDS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Exact,
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureEstimate {
    pub value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub source: Source,
    /// Number of evaluated points; zero for exact and quadrature values.
    pub samples: usize,
    pub seed: Option<u64>,
}

impl MeasureEstimate {
    pub fn exact(value: f64) -> Self {
        let value = value.clamp(0.0, 1.0);
        Self {
            value,
            ci_low: value,
            ci_high: value,
            source: Source::Exact,
            samples: 0,
            seed: None,
        }
    }

    pub fn width(&self) -> f64 {
        self.ci_high - self.ci_low
    }
}

/// `Φ(x)`, via the complementary error function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// `2Φ(w) − 1`, the mass of `[−w, w]`, without cancellation.
pub fn interval_mass(w: f64) -> f64 {
    libm::erf(w / std::f64::consts::SQRT_2)
}

/// Standard normal quantile.
pub fn normal_quantile(p: f64) -> f64 {
    Normal::standard().inverse_cdf(p)
}

/// `γ_n(r · 𝔹_n) = P(χ²_n ≤ r²)`, the regularized lower incomplete gamma
/// function `P(n/2, r²/2)`.
pub fn measure_ball_exact(radius: f64, n: usize) -> Result<MeasureEstimate> {
    if n == 0 || !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "ball measure needs n >= 1 and radius > 0 (got n={n}, radius={radius})"
        )));
    }
    Ok(MeasureEstimate::exact(ball_mass(radius, n)))
}

fn ball_mass(radius: f64, n: usize) -> f64 {
    if radius.is_infinite() {
        return 1.0;
    }
    gamma::gamma_lr(0.5 * n as f64, 0.5 * radius * radius)
}

pub fn measure_box_exact(halfwidths: &[f64]) -> Result<MeasureEstimate> {
    if halfwidths.is_empty() || halfwidths.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::InvalidParameter("box halfwidths must be positive".into()));
    }
    Ok(MeasureEstimate::exact(halfwidths.iter().map(|w| interval_mass(*w)).product()))
}

/// Wilson score interval for a proportion `p_hat` observed over `n` trials.
pub fn wilson_interval(p_hat: f64, n: usize, z: f64) -> (f64, f64) {
    let n = n as f64;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// How each Gaussian draw is symmetrised into an orbit of evaluated points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignDesign {
    /// `{x, −x}`.
    Antithetic,
    /// For `x = (u, v)` split after `split` coordinates: `{(±u, ±v)}`.
    BlockFlips { split: usize },
}

impl SignDesign {
    fn orbit_size(&self) -> usize {
        match self {
            SignDesign::Antithetic => 2,
            SignDesign::BlockFlips { .. } => 4,
        }
    }
}

pub fn measure_mc(region: &dyn Region, samples: usize, seed: u64, confidence: f64) -> Result<MeasureEstimate> {
    measure_mc_with_design(region, samples, seed, confidence, SignDesign::Antithetic)
}

/// Monte Carlo estimate of `γ(region)`.
///
/// `samples` counts evaluated points and is rounded up to a whole number of
/// orbits. Points inside an orbit are dependent, so the Wilson interval is
/// formed over orbits: the orbit hit fraction lies in `[0, 1]` and has
/// variance at most `p(1 − p)`. Undecided points count as misses for the
/// value and the lower bound and as hits for the upper bound.
pub fn measure_mc_with_design(
    region: &dyn Region,
    samples: usize,
    seed: u64,
    confidence: f64,
    design: SignDesign,
) -> Result<MeasureEstimate> {
    if samples < 100 {
        return Err(Error::InvalidParameter(format!("samples {samples} must be >= 100")));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidParameter(format!("confidence {confidence} must lie in (0, 1)")));
    }
    let dim = region.dim();
    if let SignDesign::BlockFlips { split } = design {
        if split == 0 || split >= dim {
            return Err(Error::InvalidParameter(format!("block split {split} invalid for dimension {dim}")));
        }
    }
    let orbit = design.orbit_size();
    let orbits = samples.div_ceil(orbit);
    let per_chunk = CHUNK_POINTS / orbit;
    let chunks = orbits.div_ceil(per_chunk);

    let run_chunk = |c: usize| -> (u64, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64);
        let count = per_chunk.min(orbits - c * per_chunk);
        let mut x = vec![0.0; dim];
        let mut y = vec![0.0; dim];
        let (mut inside, mut undecided) = (0u64, 0u64);
        let mut tally = |m: Membership| match m {
            Membership::Inside => inside += 1,
            Membership::Undecided => undecided += 1,
            Membership::Outside => {}
        };
        for _ in 0..count {
            for v in x.iter_mut() {
                *v = StandardNormal.sample(&mut rng);
            }
            tally(region.membership(&x));
            match design {
                SignDesign::Antithetic => {
                    for (yi, xi) in y.iter_mut().zip(&x) {
                        *yi = -xi;
                    }
                    tally(region.membership(&y));
                }
                SignDesign::BlockFlips { split } => {
                    for flip in 1..4u8 {
                        for (i, (yi, xi)) in y.iter_mut().zip(&x).enumerate() {
                            let negate = if i < split { flip & 1 != 0 } else { flip & 2 != 0 };
                            *yi = if negate { -xi } else { *xi };
                        }
                        tally(region.membership(&y));
                    }
                }
            }
        }
        (inside, undecided)
    };

    #[cfg(feature = "parallel")]
    let counts: Vec<(u64, u64)> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run_chunk).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let counts: Vec<(u64, u64)> = (0..chunks).map(run_chunk).collect();

    let (inside, undecided) = counts
        .iter()
        .fold((0u64, 0u64), |acc, c| (acc.0 + c.0, acc.1 + c.1));
    let points = (orbits * orbit) as f64;
    let value = inside as f64 / points;
    let upper = (inside + undecided) as f64 / points;
    let z = normal_quantile(0.5 + 0.5 * confidence);
    let (lo, _) = wilson_interval(value, orbits, z);
    let (_, hi) = wilson_interval(upper, orbits, z);
    Ok(MeasureEstimate {
        value,
        ci_low: lo.min(value),
        ci_high: hi.max(upper),
        source: Source::MonteCarlo,
        samples: orbits * orbit,
        seed: Some(seed),
    })
}

/// Subdivisions per axis of a cell on the region's boundary.
const REFINE: [usize; 3] = [64, 16, 6];

/// Midpoint tensor-grid quadrature on `[−bounds, bounds]^n`, `n ≤ 3`.
///
/// Each cell carries its exact Gaussian mass (a product of one-dimensional
/// `Φ` differences) and contributes when its midpoint is a member. Cells
/// whose membership differs from an axis neighbour straddle the boundary and
/// are re-evaluated on a finer midpoint grid. The interval is `[value,
/// value + tail + undecided mass]`, `tail` being the truncation bound
/// `n·(1 − (2Φ(bounds) − 1))`.
pub fn measure_quadrature(region: &dyn Region, bounds: f64, cells_per_axis: usize) -> Result<MeasureEstimate> {
    let n = region.dim();
    if n == 0 || n > 3 {
        return Err(Error::InvalidParameter(format!("quadrature supports dimension 1..=3, got {n}")));
    }
    if !(bounds >= 8.0) {
        return Err(Error::InvalidParameter(format!("quadrature bounds {bounds} must be >= 8")));
    }
    if cells_per_axis < 64 {
        return Err(Error::InvalidParameter(format!("cells_per_axis {cells_per_axis} must be >= 64")));
    }
    let cells = cells_per_axis;
    let h = 2.0 * bounds / cells as f64;
    let edge = |i: usize| -bounds + i as f64 * h;
    let masses: Vec<f64> = (0..cells).map(|i| segment_mass(edge(i), edge(i + 1))).collect();
    let total = cells.pow(n as u32);
    let index = |flat: usize| -> [usize; 3] {
        let mut idx = [0; 3];
        let mut rest = flat;
        for k in idx.iter_mut().take(n) {
            *k = rest % cells;
            rest /= cells;
        }
        idx
    };

    let classify = |flat: usize| -> u8 {
        let idx = index(flat);
        let x: Vec<f64> = idx[..n].iter().map(|&i| edge(i) + 0.5 * h).collect();
        region.membership(&x) as u8
    };
    let states: Vec<u8> = map_indices(total, classify);

    let refine = REFINE[n - 1];
    let sub = h / refine as f64;
    let cell_sum = |flat: usize| -> (f64, f64) {
        let idx = index(flat);
        let state = states[flat];
        let mut stride = 1;
        let mut boundary = false;
        for &i in &idx[..n] {
            if (i > 0 && states[flat - stride] != state) || (i + 1 < cells && states[flat + stride] != state) {
                boundary = true;
            }
            stride *= cells;
        }
        if !boundary {
            let w: f64 = idx[..n].iter().map(|&i| masses[i]).product();
            return tally(state, w);
        }
        let sub_masses: Vec<Vec<f64>> = idx[..n]
            .iter()
            .map(|&i| (0..refine).map(|j| segment_mass(edge(i) + j as f64 * sub, edge(i) + (j + 1) as f64 * sub)).collect())
            .collect();
        let (mut inside, mut undecided) = (0.0, 0.0);
        let mut x = vec![0.0; n];
        for s in 0..refine.pow(n as u32) {
            let mut rest = s;
            let mut w = 1.0;
            for d in 0..n {
                let j = rest % refine;
                rest /= refine;
                x[d] = edge(idx[d]) + (j as f64 + 0.5) * sub;
                w *= sub_masses[d][j];
            }
            let (a, b) = tally(region.membership(&x) as u8, w);
            inside += a;
            undecided += b;
        }
        (inside, undecided)
    };
    let parts: Vec<(f64, f64)> = map_indices(total, cell_sum);
    let (inside, undecided) = parts.iter().fold((0.0, 0.0), |acc, r| (acc.0 + r.0, acc.1 + r.1));

    let tail = n as f64 * 2.0 * normal_cdf(-bounds);
    let value = inside.clamp(0.0, 1.0);
    Ok(MeasureEstimate {
        value,
        ci_low: value,
        ci_high: (value + undecided + tail).min(1.0),
        source: Source::Quadrature,
        samples: 0,
        seed: None,
    })
}

/// Gaussian mass of `[a, b]`, using upper tails on the right half for precision.
fn segment_mass(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        normal_cdf(-a) - normal_cdf(-b)
    } else {
        normal_cdf(b) - normal_cdf(a)
    }
}

fn tally(state: u8, w: f64) -> (f64, f64) {
    match state {
        s if s == Membership::Inside as u8 => (w, 0.0),
        s if s == Membership::Undecided as u8 => (0.0, w),
        _ => (0.0, 0.0),
    }
}

/// `(0..len).map(f)` collected in index order, in parallel when enabled.
fn map_indices<T: Send>(len: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// How to estimate measures that have no closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Budget {
    MonteCarlo { samples: usize, seed: u64, confidence: f64 },
    Quadrature { bounds: f64, cells_per_axis: usize },
}

impl Budget {
    pub fn monte_carlo(samples: usize, seed: u64, confidence: f64) -> Self {
        Budget::MonteCarlo { samples, seed, confidence }
    }

    /// Quadrature on `[−8, 8]^n`.
    pub fn quadrature(cells_per_axis: usize) -> Self {
        Budget::Quadrature {
            bounds: DEFAULT_QUADRATURE_BOUNDS,
            cells_per_axis,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Budget::MonteCarlo { seed, .. } => *seed,
            Budget::Quadrature { .. } => 0,
        }
    }

    pub fn samples(&self) -> usize {
        match self {
            Budget::MonteCarlo { samples, .. } => *samples,
            Budget::Quadrature { .. } => 0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::monte_carlo(DEFAULT_SAMPLES, 42, DEFAULT_CONFIDENCE)
    }
}

pub fn measure_region(region: &dyn Region, budget: &Budget) -> Result<MeasureEstimate> {
    measure_region_with_design(region, budget, SignDesign::Antithetic)
}

pub fn measure_region_with_design(
    region: &dyn Region,
    budget: &Budget,
    design: SignDesign,
) -> Result<MeasureEstimate> {
    match *budget {
        Budget::MonteCarlo {
            samples,
            seed,
            confidence,
        } => measure_mc_with_design(region, samples, seed, confidence, design),
        Budget::Quadrature { bounds, cells_per_axis } => measure_quadrature(region, bounds, cells_per_axis),
    }
}

/// Closed-form measure when one is known: balls, boxes, `c·U·Ball` for
/// orthogonal `U`, and diagonal images of boxes.
pub fn exact_measure(body: &SymmetricConvexBody) -> Option<f64> {
    match body.shape() {
        Shape::Ball { radius } => Some(ball_mass(*radius, body.dim())),
        Shape::Box { halfwidths } => Some(halfwidths.iter().map(|w| interval_mass(*w)).product()),
        Shape::LinearImage(li) => match li.base().shape() {
            Shape::Ball { radius } => {
                linalg::orthogonal_scale(li.transform()).map(|c| ball_mass(c * radius, body.dim()))
            }
            Shape::Box { halfwidths } => linalg::diagonal_entries(li.transform()).map(|d| {
                d.iter()
                    .zip(halfwidths)
                    .map(|(s, w)| interval_mass(s.abs() * w))
                    .product()
            }),
            _ => None,
        },
        _ => None,
    }
}

/// Dispatching estimator: exact where possible, otherwise per `budget`.
pub fn measure(body: &SymmetricConvexBody, budget: &Budget) -> Result<MeasureEstimate> {
    match exact_measure(body) {
        Some(v) => Ok(MeasureEstimate::exact(v)),
        None => measure_region(body, budget),
    }
}

/// Measure of `map^{-1}(A + B)`, through the closed-form sum when the
/// summands allow it.
pub fn measure_minkowski_image(image: &MinkowskiImage, budget: &Budget) -> Result<MeasureEstimate> {
    match image.closed_form() {
        Some(body) => measure(&body, budget),
        None => measure_region(image, budget),
    }
}
