//! Batch front end: configuration, experiment suites and CSV reports.

pub mod config;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use gcorr::gaussian::Budget;
use gcorr::inequality::{self, InequalityReport};
use gcorr::linalg::{self, Matrix};
use gcorr::matrix_lab::{build_from_angles, AnglePair, MatrixQuintuple, QuintupleRecord};
use gcorr::suite::{run_trial, Suite, TrialConfig};
use gcorr::SymmetricConvexBody;

pub use config::{parse_config, PartialConfig, SuiteConfig};
pub use report::{write_reports, Summary};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gcorr::Error),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed file {}: {message}", path.display())]
    Config { path: PathBuf, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

/// Reads and deserializes a TOML document.
pub fn load_toml<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| CliError::Config {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_body(path: &Path) -> Result<SymmetricConvexBody, CliError> {
    load_toml(path)
}

pub fn load_quintuple(path: &Path) -> Result<MatrixQuintuple, CliError> {
    let rec: QuintupleRecord = load_toml(path)?;
    Ok(MatrixQuintuple::try_from(rec)?)
}

/// A general matrix stored row-major: `rows`, `cols`, `values`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

pub fn load_matrix(path: &Path) -> Result<Matrix, CliError> {
    let rec: MatrixRecord = load_toml(path)?;
    Ok(linalg::from_row_major(rec.rows, rec.cols, &rec.values)?)
}

/// Monte Carlo budget from the run configuration, or a quadrature grid when
/// `cells` is given.
pub fn budget(cfg: &SuiteConfig, cells: Option<usize>) -> Budget {
    match cells {
        Some(c) => Budget::quadrature(c),
        None => Budget::monte_carlo(cfg.samples, cfg.seed, cfg.confidence),
    }
}

/// Every trial of every selected suite, in suite then trial order. The
/// `gcc2d` suite always runs in the plane.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<InequalityReport>, CliError> {
    cfg.validate()?;
    let mut out = Vec::new();
    for suite in cfg.suites()? {
        let trial_cfg = TrialConfig {
            n: if suite == Suite::Gcc2d { 2 } else { cfg.n },
            samples: cfg.samples,
            confidence: cfg.confidence,
        };
        for trial in 0..suite.trial_count(cfg.trials) {
            out.extend(run_trial(suite, trial as u64, cfg.seed, &trial_cfg)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Inequality {
    Gcc,
    MainTheorem,
    Ssz,
    Li,
    Corollary1,
    SmallRadius,
    Lemma1,
    Shao,
    Anderson,
}

/// Inputs of a single `check`; which ones are needed depends on the
/// inequality.
#[derive(Debug, Clone, Default)]
pub struct CheckInputs {
    pub a: Option<SymmetricConvexBody>,
    pub b: Option<SymmetricConvexBody>,
    pub quintuple: Option<MatrixQuintuple>,
    pub matrix: Option<Matrix>,
    pub p: Option<f64>,
    pub r: Option<f64>,
}

fn need<'a, T>(v: &'a Option<T>, what: &str, which: Inequality) -> Result<&'a T, CliError> {
    v.as_ref()
        .ok_or_else(|| CliError::Invalid(format!("{which:?} needs {what}")))
}

pub fn check(which: Inequality, inputs: &CheckInputs, budget: &Budget) -> Result<InequalityReport, CliError> {
    use Inequality::*;
    let a = || need(&inputs.a, "--a", which);
    let b = || need(&inputs.b, "--b", which);
    let report = match which {
        Gcc => inequality::check_gcc(a()?, b()?, budget)?,
        MainTheorem => {
            let q = need(&inputs.quintuple, "--quintuple", which)?;
            inequality::check_main_theorem(a()?, b()?, q, budget)?
        }
        Ssz => inequality::check_ssz(a()?, b()?, budget)?,
        Li => {
            let p = *need(&inputs.p, "--p", which)?;
            let r = inputs.r.unwrap_or_else(|| (1.0 - p * p).max(0.0).sqrt());
            inequality::check_li(a()?, b()?, p, r, budget)?
        }
        Corollary1 => inequality::check_corollary1(a()?, b()?, budget)?,
        SmallRadius => inequality::check_small_radius(a()?, b()?, budget)?,
        Lemma1 => inequality::check_lemma1(a()?, b()?, need(&inputs.matrix, "--matrix", which)?, budget)?,
        Shao => inequality::check_shao(a()?, b()?, need(&inputs.matrix, "--matrix", which)?, budget)?,
        Anderson => inequality::check_anderson(a()?, need(&inputs.matrix, "--matrix", which)?, budget)?,
    };
    Ok(report)
}

/// Quintuple built from scalar angles `α I, β I`, an angle-pair file, or a
/// random commuting pair.
pub fn quintuple_from_angles(
    n: usize,
    alpha: Option<f64>,
    beta: Option<f64>,
    angles: Option<&Path>,
    seed: u64,
) -> Result<MatrixQuintuple, CliError> {
    let pair = match (angles, alpha, beta) {
        (Some(path), _, _) => load_toml::<AnglePair>(path)?,
        (None, Some(a), Some(b)) => AnglePair::scalar(n, a, b)?,
        (None, None, None) => AnglePair::random(n, 0.05, 1.5, seed)?,
        _ => return Err(CliError::Invalid("give both --alpha and --beta, or neither".into())),
    };
    Ok(build_from_angles(&pair)?)
}

/// `0`, then `±(j/steps)·radius·eᵢ` for every axis; consecutive grid
/// points along an axis form midpoint triples.
pub fn axis_grid(n: usize, radius: f64, steps: usize) -> Vec<Vec<f64>> {
    let mut ys = vec![vec![0.0; n]];
    for axis in 0..n {
        for j in 1..=steps {
            for sign in [1.0, -1.0] {
                let mut y = vec![0.0; n];
                y[axis] = sign * radius * j as f64 / steps as f64;
                ys.push(y);
            }
        }
    }
    ys
}

pub fn h_profile_reports(
    a: &SymmetricConvexBody,
    b: &SymmetricConvexBody,
    quintuple: Option<&MatrixQuintuple>,
    ys: &[Vec<f64>],
    budget: &Budget,
) -> Result<Vec<InequalityReport>, CliError> {
    let n = a.dim();
    let (s, t) = match quintuple {
        Some(q) => (q.s.clone(), q.t.clone()),
        None => (Matrix::identity(n, n), Matrix::identity(n, n)),
    };
    let profile = inequality::h_profile(a, b, &s, &t, ys, budget)?;
    Ok(inequality::h_reports(&profile, budget)?)
}

pub fn chernoff_reports() -> Result<Vec<InequalityReport>, CliError> {
    Ok(run_trial(
        Suite::Chernoff,
        0,
        0,
        &TrialConfig {
            n: 1,
            samples: 0,
            confidence: 0.99,
        },
    )?)
}
