//! Randomized experiment suites.
//!
//! A suite turns `(global seed, trial index)` into one random instance and the
//! reports of the checkers that apply to it. Trial seeds come from a counter:
//!
//! ```text
//! trial_seed = splitmix64(global + 0x9E3779B97F4A7C15 · (suite_index · 2³² + trial + 1))
//! ```
//!
//! (wrapping arithmetic), so any single trial can be rerun in isolation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::body::{random_body, random_body_within, ShapeKind, SymmetricConvexBody};
use crate::chernoff::{bound_vs_exact, constant_c0, find_c1};
use crate::error::{Error, Result};
use crate::gaussian::Budget;
use crate::inequality::{
    check_corollary1, check_gcc, check_lemma1, check_main_theorem, check_shao, check_small_radius, h_profile,
    h_reports, Bounds, InequalityReport, SMALL_RADIUS_FACTOR,
};
use crate::linalg::{self, Matrix};
use crate::matrix_lab::{build_from_angles, AnglePair};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
/// Tolerance used for the `c₁` rows of the chernoff suite.
pub const C1_TOL: f64 = 1e-10;
/// Largest dimension of the chernoff dominance grid.
pub const CHERNOFF_MAX_N: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Gcc2d,
    Ellipsoid,
    MainTheorem,
    Corollary1,
    SmallRadius,
    LemmaShao,
    HProfile,
    Chernoff,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Gcc2d,
        Suite::Ellipsoid,
        Suite::MainTheorem,
        Suite::Corollary1,
        Suite::SmallRadius,
        Suite::LemmaShao,
        Suite::HProfile,
        Suite::Chernoff,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Gcc2d => "gcc2d",
            Suite::Ellipsoid => "ellipsoid",
            Suite::MainTheorem => "main_theorem",
            Suite::Corollary1 => "corollary1",
            Suite::SmallRadius => "small_radius",
            Suite::LemmaShao => "lemma_shao",
            Suite::HProfile => "h_profile",
            Suite::Chernoff => "chernoff",
        }
    }

    fn index(&self) -> u64 {
        Suite::ALL.iter().position(|s| s == self).expect("listed") as u64
    }

    /// Suites selected by a name; `all` selects every suite in order.
    pub fn select(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![name.parse()?])
    }

    /// Number of trials actually run: the chernoff suite is a fixed grid.
    pub fn trial_count(&self, requested: usize) -> usize {
        match self {
            Suite::Chernoff => 1,
            _ => requested,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(global: u64, suite: Suite, trial: u64) -> u64 {
    let counter = (suite.index() << 32).wrapping_add(trial).wrapping_add(1);
    splitmix64(global.wrapping_add(GOLDEN.wrapping_mul(counter)))
}

/// Per-trial settings shared by every suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialConfig {
    pub n: usize,
    pub samples: usize,
    pub confidence: f64,
}

const ROUND: [ShapeKind; 3] = [ShapeKind::Ball, ShapeKind::Box, ShapeKind::Ellipsoid];
const ANY: [ShapeKind; 4] = [ShapeKind::Ball, ShapeKind::Box, ShapeKind::Ellipsoid, ShapeKind::Polytope];

struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    fn kind(&mut self, from: &[ShapeKind]) -> ShapeKind {
        from[self.rng.random_range(0..from.len())]
    }

    fn seed(&mut self) -> u64 {
        self.rng.random()
    }

    /// Scaled by `√n` so that measures stay away from zero as `n` grows.
    fn body(&mut self, from: &[ShapeKind], n: usize) -> Result<SymmetricConvexBody> {
        let kind = self.kind(from);
        let seed = self.seed();
        random_body(kind, n, (n as f64).sqrt(), seed)
    }

    fn contraction(&mut self, rows: usize, cols: usize, norm: f64) -> Matrix {
        let m = Matrix::from_fn(rows, cols, |_, _| self.rng.random_range(-1.0..1.0));
        let s = linalg::spectral_norm(&m);
        if s > 0.0 {
            m * (norm / s)
        } else {
            m
        }
    }

    fn vector(&mut self, n: usize, scale: f64) -> Vec<f64> {
        (0..n).map(|_| self.rng.random_range(-scale..scale)).collect()
    }
}

/// Reports of one trial of `suite`.
pub fn run_trial(suite: Suite, trial: u64, global_seed: u64, cfg: &TrialConfig) -> Result<Vec<InequalityReport>> {
    if cfg.n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let seed = trial_seed(global_seed, suite, trial);
    let budget = Budget::monte_carlo(cfg.samples, seed, cfg.confidence);
    let mut draw = Draw {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let n = cfg.n;
    match suite {
        Suite::Gcc2d => {
            let a = draw.body(&ANY, 2)?;
            let theta: f64 = draw.rng.random_range(0.0..std::f64::consts::PI);
            let (s, c) = theta.sin_cos();
            let rotation = Matrix::from_row_slice(2, 2, &[c, -s, s, c]);
            let b = SymmetricConvexBody::linear_image(rotation, draw.body(&ANY, 2)?)?;
            Ok(vec![check_gcc(&a, &b, &budget)?])
        }
        Suite::Ellipsoid => {
            let a = draw.body(&[ShapeKind::Polytope, ShapeKind::Box], n)?;
            let b = draw.body(&[ShapeKind::Ellipsoid], n)?;
            Ok(vec![check_gcc(&a, &b, &budget)?])
        }
        Suite::MainTheorem => {
            let angles = AnglePair::random(n, 0.1, 1.4, draw.seed())?;
            let q = build_from_angles(&angles)?;
            let a = draw.body(&ROUND, n)?;
            let b = draw.body(&ROUND, n)?;
            Ok(vec![check_main_theorem(&a, &b, &q, &budget)?])
        }
        Suite::Corollary1 => {
            let a = draw.body(&ROUND, n)?;
            let b = draw.body(&ROUND, n)?;
            Ok(vec![check_corollary1(&a, &b, &budget)?])
        }
        Suite::SmallRadius => {
            let radius = SMALL_RADIUS_FACTOR * (n as f64).sqrt();
            let (ka, kb) = (draw.kind(&ANY), draw.kind(&ANY));
            let a = random_body_within(ka, n, radius, draw.seed())?;
            let b = random_body_within(kb, n, radius, draw.seed())?;
            Ok(vec![check_small_radius(&a, &b, &budget)?])
        }
        Suite::LemmaShao => {
            let a = draw.body(&ANY, n)?;
            let b = draw.body(&ANY, n)?;
            let norm = draw.rng.random_range(0.1..0.95);
            let m = draw.contraction(n, n, norm);
            Ok(vec![check_lemma1(&a, &b, &m, &budget)?, check_shao(&a, &b, &m, &budget)?])
        }
        Suite::HProfile => {
            let angles = AnglePair::random(n, 0.1, 1.4, draw.seed())?;
            let q = build_from_angles(&angles)?;
            let a = draw.body(&ROUND, n)?;
            let b = draw.body(&ROUND, n)?;
            let base: Vec<Vec<f64>> = (0..4).map(|_| draw.vector(n, 0.6)).collect();
            let mut ys = vec![vec![0.0; n]];
            for y in &base {
                ys.push(y.clone());
                ys.push(y.iter().map(|v| -v).collect());
            }
            for i in 0..base.len() {
                for j in (i + 1)..base.len() {
                    ys.push(base[i].iter().zip(&base[j]).map(|(u, v)| 0.5 * (u + v)).collect());
                }
            }
            let profile = h_profile(&a, &b, &q.s, &q.t, &ys, &budget)?;
            h_reports(&profile, &budget)
        }
        Suite::Chernoff => chernoff_rows(),
    }
}

/// Dominance of the exact ball measure by the Chernoff bound on the full
/// grid, and the `c₁` / `c₀` constants.
fn chernoff_rows() -> Result<Vec<InequalityReport>> {
    let mut out = Vec::new();
    let exact_budget = Budget::monte_carlo(0, 0, 0.99);
    let c1 = find_c1(C1_TOL)?;
    let c1_bounds = Bounds {
        value: c1,
        low: c1 - C1_TOL,
        high: c1 + C1_TOL,
    };
    let row = |name: &str, n: usize, lhs: Bounds, rhs: Bounds, params: String| {
        InequalityReport::from_parts(name, n, lhs, rhs, &exact_budget, params)
    };
    out.push(row("c1_lower", 0, Bounds::exact(0.3735), c1_bounds, format!("c1={c1:.12}")));
    out.push(row("c1_upper", 0, c1_bounds, Bounds::exact(0.3745), format!("c1={c1:.12}")));
    out.push(row(
        "c0_below_c1",
        0,
        Bounds::exact(constant_c0()),
        c1_bounds,
        format!("c0={:.12}", constant_c0()),
    ));
    for step in 1..=20 {
        let k = step as f64 * 0.05;
        for n in 1..=CHERNOFF_MAX_N {
            let cmp = bound_vs_exact(k, n)?;
            out.push(row(
                "chernoff_dominance",
                n,
                Bounds::exact(cmp.exact),
                Bounds::exact(cmp.bound),
                format!("k={k:.2}"),
            ));
        }
    }
    Ok(out)
}
