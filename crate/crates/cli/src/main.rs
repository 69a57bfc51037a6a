use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gcorr::matrix_lab::{check_hypotheses, QuintupleRecord};
use gcorr::InequalityReport;
use gcorr_cli::report::{with_output, write_measure};
use gcorr_cli::{
    budget, chernoff_reports, check, h_profile_reports, load_body, load_matrix, load_quintuple, parse_config,
    quintuple_from_angles, run_suite, write_reports, CheckInputs, CliError, Inequality, PartialConfig, Summary,
    SuiteConfig,
};

/// Numerical checks of Gaussian correlation inequalities.
#[derive(Parser)]
#[command(name = "gcorr", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Dimension.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Trials per suite.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Monte Carlo sample points per measure.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Global seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Confidence level of the reported intervals.
    #[arg(long, global = true)]
    confidence: Option<f64>,
    /// TOML file with any of: suite, n, trials, samples, seed, confidence, output.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian measure of a body.
    Measure {
        #[arg(long)]
        body: PathBuf,
        /// Use a quadrature grid with this many cells per axis (n <= 3).
        #[arg(long)]
        quadrature: Option<usize>,
    },
    /// Run one inequality checker.
    Check {
        #[arg(long, value_enum)]
        inequality: Inequality,
        #[arg(long)]
        a: Option<PathBuf>,
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long)]
        quintuple: Option<PathBuf>,
        /// Matrix file (rows, cols, values) for lemma1, shao and anderson.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        quadrature: Option<usize>,
    },
    /// Build a matrix quintuple from angles, or validate a quintuple file.
    Angles {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        /// Angle-pair file (n, alpha, beta).
        #[arg(long, conflicts_with_all = ["alpha", "beta"])]
        angles: Option<PathBuf>,
        /// Quintuple file to validate instead of building one.
        #[arg(long, conflicts_with_all = ["alpha", "beta", "angles"])]
        validate: Option<PathBuf>,
    },
    /// Sample h(y) = γ((A − Sy) ∩ (B + Ty)) on an axis grid and check its properties.
    HProfile {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Quintuple supplying S and T; identity when absent.
        #[arg(long)]
        quintuple: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long)]
        quadrature: Option<usize>,
    },
    /// Chernoff dominance grid and the small-radius constants.
    Chernoff,
    /// Randomized experiment suite.
    Suite {
        /// gcc2d, ellipsoid, main_theorem, corollary1, small_radius,
        /// lemma_shao, h_profile, chernoff or all.
        #[arg(long)]
        suite: Option<String>,
    },
}

impl Common {
    fn flags(&self, suite: Option<String>) -> PartialConfig {
        PartialConfig {
            suite,
            n: self.n,
            trials: self.trials,
            samples: self.samples,
            seed: self.seed,
            confidence: self.confidence,
            output: self.output.clone(),
        }
    }
}

fn emit_reports(cfg: &SuiteConfig, reports: &[InequalityReport]) -> Result<bool, CliError> {
    with_output(cfg.output.as_deref(), |w| write_reports(w, reports))?;
    let summary = Summary::of(reports);
    if cfg.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(summary.violated == 0)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let suite = match &cli.command {
        Command::Suite { suite } => suite.clone(),
        _ => None,
    };
    let cfg = parse_config(cli.common.config.as_deref(), cli.common.flags(suite))?;
    match cli.command {
        Command::Measure { body, quadrature } => {
            let body = load_body(&body)?;
            let est = gcorr::gaussian::measure(&body, &budget(&cfg, quadrature))?;
            with_output(cfg.output.as_deref(), |w| write_measure(w, &est))?;
            Ok(true)
        }
        Command::Check {
            inequality,
            a,
            b,
            quintuple,
            matrix,
            p,
            r,
            quadrature,
        } => {
            let inputs = CheckInputs {
                a: a.as_deref().map(load_body).transpose()?,
                b: b.as_deref().map(load_body).transpose()?,
                quintuple: quintuple.as_deref().map(load_quintuple).transpose()?,
                matrix: matrix.as_deref().map(load_matrix).transpose()?,
                p,
                r,
            };
            let report = check(inequality, &inputs, &budget(&cfg, quadrature))?;
            emit_reports(&cfg, &[report])
        }
        Command::Angles {
            alpha,
            beta,
            angles,
            validate,
        } => {
            let q = match validate {
                Some(path) => load_quintuple(&path)?,
                None => quintuple_from_angles(cfg.n, alpha, beta, angles.as_deref(), cfg.seed)?,
            };
            let rep = check_hypotheses(&q, 1e-8)?;
            let text = toml::to_string(&QuintupleRecord::from(&q)).map_err(|e| CliError::Invalid(e.to_string()))?;
            with_output(cfg.output.as_deref(), |w| {
                w.write_all(text.as_bytes()).map_err(|source| CliError::Write {
                    path: cfg.output.clone().unwrap_or_else(|| "<stdout>".into()),
                    source,
                })
            })?;
            eprintln!(
                "validated={} max_residual={:.3e} min_eigenvalue={:.6}",
                rep.validated,
                rep.max_residual(),
                rep.min_eigenvalue
            );
            Ok(rep.validated)
        }
        Command::HProfile {
            a,
            b,
            quintuple,
            radius,
            steps,
            quadrature,
        } => {
            let (a, b) = (load_body(&a)?, load_body(&b)?);
            let q = quintuple.as_deref().map(load_quintuple).transpose()?;
            let ys = gcorr_cli::axis_grid(a.dim(), radius, steps.max(1));
            let reports = h_profile_reports(&a, &b, q.as_ref(), &ys, &budget(&cfg, quadrature))?;
            emit_reports(&cfg, &reports)
        }
        Command::Chernoff => emit_reports(&cfg, &chernoff_reports()?),
        Command::Suite { .. } => emit_reports(&cfg, &run_suite(&cfg)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
