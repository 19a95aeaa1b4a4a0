use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn forfeit_lab(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forfeit-lab"))
        .args(&args[..1])
        .arg("--config")
        .arg(config)
        .args(&args[1..])
        .env_remove("FORFEIT_LAB_GRID_NODES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#') && !l.starts_with("revenue"))
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn small_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("model.cfg");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn solve_fractional_on_uniform() {
    let o = forfeit_lab(
        &["solve", "--scheme", "fractional:0.5"],
        &config("uniform_ipv.cfg"),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with("x,alpha\n"));
    assert!(!csv.contains('\r'));
    let table = rows(&csv);
    assert_eq!(table.len(), 2049);
    let mid = table.iter().find(|r| r[0] == 0.5).unwrap();
    assert!((mid[1] - 0.166667).abs() < 1e-5, "{mid:?}");
}

#[test]
fn fee_kept_columns_match_classic_bytes() {
    let cfg = config("affiliated_pair.cfg");
    let a = forfeit_lab(&["solve", "--scheme", "classic"], &cfg);
    let b = forfeit_lab(&["solve", "--scheme", "fee-kept:2.0"], &cfg);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn beta_out_of_range_is_a_usage_error() {
    let o = forfeit_lab(
        &["solve", "--scheme", "fractional:1.5"],
        &config("uniform_ipv.cfg"),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("beta out of range"), "{}", stderr(&o));
}

#[test]
fn compare_fractional_below_classic_on_pair() {
    let o = forfeit_lab(
        &["compare", "--schemes", "classic,fractional:0.5"],
        &config("affiliated_pair.cfg"),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    assert_eq!(csv.lines().next().unwrap(), "x,e_classic,e_fractional:0.5");
    for r in rows(&csv) {
        assert!(r[2] <= r[1] + 1e-8, "{r:?}");
    }
    let revenue = csv.lines().find(|l| l.starts_with("revenue,")).unwrap();
    let r: Vec<f64> = revenue
        .split(',')
        .skip(1)
        .map(|c| c.parse().unwrap())
        .collect();
    assert!(r[1] < r[0]);
}

#[test]
fn compare_full_forfeit_matches_classic() {
    let o = forfeit_lab(
        &["compare", "--schemes", "classic,fractional:1.0"],
        &config("affiliated_pair.cfg"),
    );
    assert!(o.status.success());
    for r in rows(&stdout(&o)) {
        assert!((r[1] - r[2]).abs() < 1e-6);
    }
}

#[test]
fn compare_needs_two_schemes() {
    let o = forfeit_lab(
        &["compare", "--schemes", "classic"],
        &config("uniform_ipv.cfg"),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("need at least two schemes"));
}

#[test]
fn compare_flags_simulated_revenue() {
    let o = forfeit_lab(
        &[
            "compare",
            "--schemes",
            "classic,exponential",
            "--trials",
            "2000",
        ],
        &config("uniform_ipv.cfg"),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    let flag = csv.lines().find(|l| l.starts_with('#')).unwrap();
    assert!(
        flag.contains("e_exponential") && flag.contains("simulated"),
        "{flag}"
    );
}

#[test]
fn simulate_classic_uniform_revenue() {
    let o = forfeit_lab(
        &["simulate", "--scheme", "classic", "--seed", "42"],
        &config("uniform_ipv.cfg"),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let values: Vec<&str> = lines.next().unwrap().split(',').collect();
    let field = |name: &str| -> f64 {
        values[header.iter().position(|h| *h == name).unwrap()]
            .parse()
            .unwrap()
    };
    assert_eq!(field("trials"), 100_000.0);
    let (mean, se) = (field("revenue_mean"), field("revenue_stderr"));
    assert!((mean - 1.0 / 3.0).abs() <= 3.0 * se, "{mean} ± {se}");
    assert!(stderr(&o).contains("±"));
}

#[test]
fn simulate_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}.csv"));
        let o = forfeit_lab(
            &[
                "simulate",
                "--scheme",
                "fee-returned:0.1",
                "--trials",
                "5000",
                "--out",
                out.to_str().unwrap(),
            ],
            &config("affiliated_pair.cfg"),
        );
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
        outputs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn zero_trials_fails() {
    let o = forfeit_lab(
        &["simulate", "--scheme", "classic", "--trials", "0"],
        &config("uniform_ipv.cfg"),
    );
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("trials must be positive"));
}

#[test]
fn check_exit_codes() {
    let pass = forfeit_lab(&["check"], &config("affiliated_pair.cfg"));
    assert_eq!(pass.status.code(), Some(0), "{}", stdout(&pass));
    let uniform = forfeit_lab(&["check"], &config("uniform_ipv.cfg"));
    assert_eq!(uniform.status.code(), Some(0), "{}", stdout(&uniform));
    let fail = forfeit_lab(&["check"], &config("anti_affiliated.cfg"));
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("FAIL"));
}

#[test]
fn best_response_reports_scan() {
    let o = forfeit_lab(
        &[
            "best-response",
            "--scheme",
            "exponential",
            "--signal",
            "0.7",
        ],
        &config("affiliated_pair.cfg"),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with("bid,payoff\n"));
    assert_eq!(rows(&csv).len(), 4097);
    assert!(stderr(&o).contains("PASS"));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = small_config(dir.path(), "model.family = frob\n");
    let o = forfeit_lab(&["check"], &bad);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
    let o = forfeit_lab(&["check"], &dir.path().join("missing.cfg"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn grid_size_from_environment_unless_configured() {
    let run = |cfg: &Path| {
        Command::new(env!("CARGO_BIN_EXE_forfeit-lab"))
            .args(["solve", "--scheme", "classic", "--config"])
            .arg(cfg)
            .env("FORFEIT_LAB_GRID_NODES", "257")
            .output()
            .unwrap()
    };
    let o = run(&config("uniform_ipv.cfg"));
    assert_eq!(rows(&stdout(&o)).len(), 257);
    // the pair config pins grid_nodes = 2049
    let o = run(&config("affiliated_pair.cfg"));
    assert_eq!(rows(&stdout(&o)).len(), 2049);
}

#[test]
fn asymptotic_solve_stops_short_of_the_top() {
    let o = forfeit_lab(
        &["solve", "--scheme", "exponential-asymptotic"],
        &config("affiliated_pair.cfg"),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let table = rows(&stdout(&o));
    let last = table.last().unwrap();
    assert!((last[0] - 0.999).abs() < 1e-12);
    assert!(last[1] > 5.0);
}
