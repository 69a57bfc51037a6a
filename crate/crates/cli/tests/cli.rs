use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gcorr::matrix_lab::{check_hypotheses, MatrixQuintuple, QuintupleRecord};
use gcorr::Verdict;
use gcorr_cli::report::COLUMNS;
use gcorr_cli::Summary;

fn gcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gcorr-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> PathBuf {
    let p = scratch(name);
    fs::write(&p, text).unwrap();
    p
}

fn rows(path: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).unwrap();
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), COLUMNS);
    r.records().map(|x| x.unwrap()).collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn chernoff_suite_reports_c1() {
    let out = scratch("chernoff.csv");
    let res = gcorr(&["suite", "--suite", "chernoff", "--output", s(&out)]);
    assert!(res.status.success(), "{res:?}");
    let rows = rows(&out);
    let c1 = rows.iter().find(|r| &r[0] == "c1_upper").unwrap();
    let value: f64 = c1[2].parse().unwrap();
    assert!((value - 0.374).abs() < 5e-4, "{value}");
    assert!(rows.iter().all(|r| &r[9] == "confirmed"));
    assert!(String::from_utf8_lossy(&res.stdout).contains("0 violated"));
}

#[test]
fn gcc2d_suite_runs_in_the_plane_without_violations() {
    let out = scratch("gcc2d.csv");
    let res = gcorr(&[
        "suite", "--suite", "gcc2d", "--n", "5", "--trials", "100", "--samples", "4000", "--output", s(&out),
    ]);
    assert!(res.status.success(), "{res:?}");
    let rows = rows(&out);
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| &r[1] == "2" && &r[9] != "violated"));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let cfg = write("det.toml", "suite = \"lemma_shao\"\nn = 2\ntrials = 3\nsamples = 5000\nseed = 9\n");
    let (x, y) = (scratch("det1.csv"), scratch("det2.csv"));
    for out in [&x, &y] {
        let res = gcorr(&["suite", "--config", s(&cfg), "--output", s(out)]);
        assert!(res.status.success(), "{res:?}");
    }
    let (bx, by) = (fs::read(&x).unwrap(), fs::read(&y).unwrap());
    assert!(!bx.is_empty());
    assert_eq!(bx, by);
    assert_eq!(rows(&x).len(), 6);
}

#[test]
fn flags_override_the_config_file() {
    let cfg = write("prec.toml", "suite = \"corollary1\"\nn = 6\ntrials = 2\nsamples = 2000\n");
    let out = scratch("prec.csv");
    let res = gcorr(&["suite", "--config", s(&cfg), "--n", "2", "--output", s(&out)]);
    assert!(res.status.success(), "{res:?}");
    let rows = rows(&out);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| &r[1] == "2"));
}

#[test]
fn invalid_input_exits_with_an_error() {
    let out = scratch("never.csv");
    for args in [
        vec!["suite", "--confidence", "1.5"],
        vec!["suite", "--suite", "pitt"],
        vec!["suite", "--samples", "10"],
    ] {
        let res = gcorr(&args);
        assert_eq!(res.status.code(), Some(2), "{args:?}");
    }
    let bad = write("bad.toml", "n = \"four\"\n");
    assert_eq!(gcorr(&["suite", "--config", s(&bad)]).status.code(), Some(2));
    let unwritable = scratch("missing-dir").join("nested").join("x.csv");
    let res = gcorr(&["suite", "--suite", "chernoff", "--output", s(&unwritable)]);
    assert_eq!(res.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn summary_counts_verdicts() {
    let mk = |v: Verdict| gcorr::InequalityReport {
        name: "x".into(),
        n: 1,
        lhs: gcorr::inequality::Bounds::exact(0.0),
        rhs: gcorr::inequality::Bounds::exact(0.0),
        margin: 0.0,
        verdict: v,
        samples: 0,
        seed: 0,
        params: String::new(),
    };
    let s = Summary::of(&[mk(Verdict::Confirmed), mk(Verdict::Violated), mk(Verdict::Inconclusive)]);
    assert_eq!((s.confirmed, s.inconclusive, s.violated), (1, 1, 1));
    assert_eq!(s.to_string(), "3 reports: 1 confirmed, 1 inconclusive, 1 violated");
}

#[test]
fn measure_reports_exact_ball_mass() {
    let body = write("ball.toml", "dimension = 3\nshape = \"ball\"\nradius = 1.0\n");
    let res = gcorr(&["measure", "--body", s(&body)]);
    assert!(res.status.success(), "{res:?}");
    let text = String::from_utf8(res.stdout).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rec = r.records().next().unwrap().unwrap();
    let v: f64 = rec[0].parse().unwrap();
    assert!((v - 0.198748043098799).abs() < 1e-13);
    assert_eq!(&rec[3], "exact");
}

#[test]
fn angles_build_and_validate() {
    let out = scratch("q.toml");
    let a = std::f64::consts::FRAC_PI_6.to_string();
    let res = gcorr(&["angles", "--n", "2", "--alpha", &a, "--beta", &a, "--output", s(&out)]);
    assert!(res.status.success(), "{res:?}");
    let rec: QuintupleRecord = toml::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let q = MatrixQuintuple::try_from(rec).unwrap();
    assert!(check_hypotheses(&q, 1e-8).unwrap().validated);
    let res = gcorr(&["angles", "--validate", s(&out)]);
    assert!(res.status.success(), "{res:?}");

    let broken = write(
        "broken.toml",
        "n = 1\nm = [0.5]\np = [1.0]\nr = [1.0]\ns = [1.0]\nt = [1.0]\n",
    );
    assert_eq!(gcorr(&["angles", "--validate", s(&broken)]).status.code(), Some(1));
}

#[test]
fn check_subcommand_runs_single_checkers() {
    let a = write("a.toml", "dimension = 1\nshape = \"box\"\nhalfwidths = [1.0]\n");
    let b = write("b.toml", "dimension = 1\nshape = \"box\"\nhalfwidths = [0.6]\n");
    let m = write("m.toml", "rows = 1\ncols = 1\nvalues = [0.5]\n");
    let out = scratch("lemma.csv");
    let res = gcorr(&[
        "check", "--inequality", "lemma1", "--a", s(&a), "--b", s(&b), "--matrix", s(&m), "--quadrature", "256",
        "--output", s(&out),
    ]);
    assert!(res.status.success(), "{res:?}");
    let rows = rows(&out);
    assert_eq!(&rows[0][0], "lemma1");
    assert_eq!(&rows[0][9], "confirmed");

    let res = gcorr(&["check", "--inequality", "shao", "--a", s(&a), "--b", s(&b)]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn h_profile_on_discs() {
    let disc = write("disc.toml", "dimension = 2\nshape = \"ball\"\nradius = 1.0\n");
    let out = scratch("h.csv");
    let res = gcorr(&[
        "h-profile", "--a", s(&disc), "--b", s(&disc), "--radius", "1.2", "--steps", "3", "--quadrature", "128",
        "--output", s(&out),
    ]);
    assert!(res.status.success(), "{res:?}");
    let rows = rows(&out);
    assert!(rows.iter().any(|r| &r[0] == "h_log_concave"));
    assert!(rows.iter().all(|r| &r[9] != "violated"));
}
