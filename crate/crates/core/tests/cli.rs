use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn starind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starind"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("starind-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_star21(path: &Path) {
    // center 0, out-leaves 1 and 2, in-leaf 3
    std::fs::write(path, "dg 4\n0 1\n0 2\n3 0\n").unwrap();
}

#[test]
fn opt_reports_s21_value() {
    let out = starind(&["opt", "--k", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "opt");
    assert!((v["inducibility"].as_f64().unwrap() - 0.2025).abs() < 1e-9);
    assert!((v["alpha"].as_f64().unwrap() - 0.3).abs() < 1e-6);
    assert_eq!(v["conjectural"], true);
}

#[test]
fn density_of_a_single_star() {
    let path = scratch("star21.dg");
    write_star21(&path);
    let p = path.to_str().unwrap();
    let out = starind(&["density", "--in", p, "--k", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], "1");
    assert_eq!(v["i"]["fraction"], "1");
    assert_eq!(v["s"]["fraction"], "1/128");
    assert_eq!(v["method"], "exact");

    let mc = starind(&[
        "mc",
        "--in",
        p,
        "--k",
        "2",
        "--l",
        "1",
        "--samples",
        "20000",
        "--seed",
        "3",
    ]);
    let e = json(&mc);
    let (s, se) = (e["s"].as_f64().unwrap(), e["std_error"].as_f64().unwrap());
    assert!((s - 1.0 / 128.0).abs() <= 5.0 * se);
}

#[test]
fn output_is_reproducible() {
    let args = [
        "search",
        "--k",
        "2",
        "--l",
        "1",
        "--n",
        "7",
        "--local",
        "--moves",
        "50",
        "--restarts",
        "2",
        "--seed",
        "9",
    ];
    let a = starind(&args);
    let b = starind(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let with_workers = starind(&[&args[..], &["--workers", "1"]].concat());
    assert_eq!(a.stdout, with_workers.stdout);
}

#[test]
fn usage_and_domain_errors_exit_one() {
    assert_eq!(
        starind(&["opt", "--k", "1", "--l", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(starind(&["opt", "--k", "2"]).status.code(), Some(1));
    assert_eq!(starind(&["bogus"]).status.code(), Some(1));
    let missing = starind(&[
        "density",
        "--in",
        "/nonexistent/g.dg",
        "--k",
        "2",
        "--l",
        "1",
    ]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());
    assert_eq!(
        starind(&["search", "--k", "1", "--l", "1", "--n", "7", "--exhaustive"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_small_suite_passes() {
    let out = starind(&[
        "verify",
        "--graphs",
        "20",
        "--samples",
        "2000",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["degree_bound"]["violations"], 0);
    assert_eq!(v["arithmetic"]["failures"], 0);
}

#[test]
fn inducibility_table_is_csv() {
    let out = starind(&["inducibility-table", "--m-min", "6", "--m-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("k,l,m,alpha,d,opt,inducibility,conjectural")
    );
    // (5,1) (4,2) (3,3) (6,1) (5,2) (4,3) (7,1) (6,2) (5,3) (4,4)
    assert_eq!(lines.count(), 10);
}

#[test]
fn construct_then_analyse() {
    let path = scratch("construction.dg");
    let p = path.to_str().unwrap();
    let out = starind(&[
        "construct",
        "--k",
        "2",
        "--l",
        "1",
        "--n",
        "40",
        "--balanced",
        "--out",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["x"], 12);
    assert!(path.exists());

    let stats = starind(&["stats", "--in", p, "--k", "2", "--l", "1"]);
    assert_eq!(stats.status.code(), Some(0));
    assert_eq!(json(&stats)["n"], 40);

    let st = starind(&[
        "stability",
        "--in",
        p,
        "--k",
        "2",
        "--l",
        "1",
        "--eps",
        "0.1",
    ]);
    assert_eq!(st.status.code(), Some(0));
    assert_eq!(json(&st)["x"].as_array().unwrap().len(), 12);

    let csv = starind(&[
        "density", "--in", p, "--k", "2", "--l", "1", "--format", "csv",
    ]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("count"));
}

#[test]
fn exhaustive_search_writes_witness() {
    let path = scratch("c4.dg");
    let p = path.to_str().unwrap();
    let out = starind(&[
        "search",
        "--k",
        "1",
        "--l",
        "1",
        "--n",
        "4",
        "--exhaustive",
        "--out",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["best_count"], "4");
    assert_eq!(v["explored"], 729);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("dg 4"));
}
