use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn selfsim(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfsim"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("SELFSIM_LOG", "error")
        .output()
        .expect("binary runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("{v} is not a number"))
}

#[test]
fn case4_preset_reproduces_closed_form_and_rate() {
    let dir = tempfile::tempdir().unwrap();
    let o = selfsim(&["solve-ibvp", "--preset", "case4"], dir.path());
    assert!(o.status.success());
    let r = report(&o);
    let p = f(&r["fit"]["result"]["exponent"]);
    assert!((p + 1.5).abs() < 0.02, "p = {p}");
    assert_eq!(r["fit"]["result"]["kind"], "algebraic");
    assert!(f(&r["closed_form"]["max_abs_error"]) < 5e-5);
    assert_eq!(r["probes"][0]["x"], 1.0);

    let field = fs::read_to_string(dir.path().join("case4_field.csv")).unwrap();
    assert!(field.starts_with("t,x,u\n"));
    assert!(!field.contains('\r'));
    assert_eq!(field.lines().count(), 1 + 101 * 401);
    let probe = fs::read_to_string(dir.path().join("case4_probe0.csv")).unwrap();
    assert!(probe.starts_with("t,u\n"));
    let on_disk: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("case4_report.json")).unwrap())
            .unwrap();
    assert_eq!(on_disk, r);
}

#[test]
fn large_domain_flags_underflow() {
    let dir = tempfile::tempdir().unwrap();
    let o = selfsim(
        &["solve-ibvp", "--preset", "case4", "--D", "200"],
        dir.path(),
    );
    assert!(o.status.success());
    let r = report(&o);
    assert_eq!(r["underflow"]["flagged"], true);
    assert!(r["flags"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v == "boundary_underflow"));
    assert_eq!(r["config"]["problem"]["d"], 200.0);
}

#[test]
fn csv_output_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let o = selfsim(
        &[
            "solve-ibvp",
            "--preset",
            "kaz3",
            "--t-end",
            "2",
            "--n",
            "41",
        ],
        a.path(),
    );
    // the preset's fit window lies beyond t_end, so the fit is dropped
    assert!(report(&o)["fit"].is_null());

    let args = [
        "solve-ibvp",
        "--preset",
        "fig22",
        "--n",
        "41",
        "--probe",
        "x=0.25",
    ];
    assert!(selfsim(&args, a.path()).status.success());
    assert!(selfsim(&args, b.path()).status.success());
    for name in ["fig22_field.csv", "fig22_probe0.csv"] {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between runs");
    }
}

#[test]
fn numbers_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = selfsim(
        &["solve-series", "--preset", "eigenmode", "--n", "21"],
        dir.path(),
    );
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("eigenmode_field.csv")).unwrap();
    for line in text.lines().skip(1) {
        for cell in line.split(',') {
            let v: f64 = cell.parse().unwrap();
            assert_eq!(format!("{v:?}"), cell);
        }
    }
}

#[test]
fn config_file_runs_and_schema_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("u0.csv");
    fs::write(&data, "x,u\n-1,0\n0,1\n1,0\n").unwrap();
    let cfg = serde_json::json!({
        "schema_version": 1,
        "name": "tent",
        "method": "cn",
        "problem": {
            "d": 1.0, "n": 41, "dt": 0.001, "t_end": 0.5,
            "initial": { "type": "csv", "path": data },
            "boundary": { "type": "homogeneous" }
        },
        "probes": [0.0],
        "output": { "times": [0.0, 0.1, 0.25, 0.5] }
    });
    let path = dir.path().join("tent.json");
    fs::write(&path, cfg.to_string()).unwrap();
    let o = selfsim(
        &["solve-ibvp", "--config", path.to_str().unwrap()],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&o);
    assert_eq!(r["config"]["name"], "tent");
    assert!(dir.path().join("tent_probe0.csv").is_file());

    let mut bad = cfg.clone();
    bad["schema_version"] = 2.into();
    fs::write(&path, bad.to_string()).unwrap();
    let o = selfsim(
        &["solve-ibvp", "--config", path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    let r = report(&o);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["kind"], "config");

    let mut missing = cfg.clone();
    missing["problem"]["initial"]["path"] = "no/such/file.csv".into();
    fs::write(&path, missing.to_string()).unwrap();
    let o = selfsim(
        &["solve-ibvp", "--config", path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));

    let mut unknown = cfg;
    unknown["problem"]["grid_points"] = 3.into();
    fs::write(&path, unknown.to_string()).unwrap();
    let o = selfsim(
        &["solve-ibvp", "--config", path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(report(&o)["error"]["kind"], "config");
}

#[test]
fn solver_errors_exit_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = selfsim(
        &["solve-ibvp", "--preset", "fig22", "--dt", "1e9"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["error"]["kind"], "solver");
}

fn compare(args: &[&str]) -> Value {
    let dir = tempfile::tempdir().unwrap();
    let mut all = vec!["compare"];
    all.extend_from_slice(args);
    let o = selfsim(&all, dir.path());
    let r = report(&o);
    assert_eq!(o.status.success(), r["pass"] == true);
    r
}

#[test]
fn cn_and_series_agree_on_the_homogeneous_part() {
    let r = compare(&["--preset", "fig2", "--methods", "cn,series"]);
    assert!(f(&r["max_abs_diff"]) < 1e-5, "{}", r["max_abs_diff"]);
    assert_eq!(r["pass"], true);
}

#[test]
fn cn_and_transform_agree_on_an_eigenmode() {
    let r = compare(&[
        "--preset",
        "eigenmode",
        "--methods",
        "cn,utm",
        "--tolerance",
        "1e-6",
    ]);
    assert!(f(&r["max_abs_diff"]) < 1e-6, "{}", r["max_abs_diff"]);
}

#[test]
fn consonant_interval_solution_is_the_cauchy_solution() {
    let r = compare(&[
        "--preset",
        "case4",
        "--methods",
        "cn,cauchy",
        "--t-end",
        "20",
        "--probe",
        "x=0.3",
    ]);
    assert!(f(&r["max_abs_diff"]) < 1e-5, "{}", r["max_abs_diff"]);
    // interior probes are always included
    assert!(r["probes"].as_array().unwrap().len() >= 3);
}

#[test]
fn failing_tolerance_exits_nonzero() {
    let r = compare(&[
        "--preset",
        "fig2",
        "--methods",
        "cn,series",
        "--tolerance",
        "1e-12",
    ]);
    assert_eq!(r["pass"], false);
}

#[test]
fn mismatched_configs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = |d: f64, method: &str| {
        serde_json::json!({
            "schema_version": 1,
            "method": method,
            "problem": {
                "d": d, "n": 41, "dt": 0.001, "t_end": 0.5,
                "initial": { "type": "sine_mode", "n": 1 },
                "boundary": { "type": "homogeneous" }
            },
            "output": { "times": [0.0, 0.5] }
        })
        .to_string()
    };
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    fs::write(&a, cfg(1.0, "cn")).unwrap();
    fs::write(&b, cfg(2.0, "series")).unwrap();
    let args = [
        "compare",
        "--config",
        a.to_str().unwrap(),
        "--against",
        b.to_str().unwrap(),
    ];
    let o = selfsim(&args, dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(report(&o)["error"]["kind"], "mismatched_problem");

    fs::write(&b, cfg(1.0, "series")).unwrap();
    let o = selfsim(&args, dir.path());
    let r = report(&o);
    assert_eq!(r["methods"], serde_json::json!(["cn", "series"]));
    assert!(f(&r["max_abs_diff"]) < 1e-3);
}

#[test]
fn decompose_writes_three_fields_and_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let o = selfsim(&["decompose", "--preset", "fig22", "--D", "1"], dir.path());
    assert!(o.status.success());
    let r = report(&o);
    for part in ["u", "u1", "u2"] {
        let text = fs::read_to_string(dir.path().join(format!("fig22_{part}.csv"))).unwrap();
        assert!(text.starts_with("t,x,u\n"));
    }
    assert!(f(&r["agreement"]["max_gap_positive_times"]) < 1e-4);
    assert!(f(&r["c_star"]) > 1.0);
    assert_eq!(r["series_terms"], 10);
}

#[test]
fn decompose_rejects_homogeneous_problems() {
    let dir = tempfile::tempdir().unwrap();
    let o = selfsim(&["decompose", "--preset", "fig2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fit_decay_from_a_probe_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let mut text = String::from("t,u\n");
    for i in 0..60 {
        let t = 5.0 + i as f64 * 2.0;
        text.push_str(&format!("{t:?},{:?}\n", 4.0 / (t + 1.0)));
    }
    fs::write(&path, text).unwrap();
    let o = selfsim(
        &[
            "fit-decay",
            "--input",
            path.to_str().unwrap(),
            "--t-star",
            "-1",
        ],
        dir.path(),
    );
    let r = report(&o);
    assert_eq!(r["fit"]["kind"], "algebraic");
    assert!((f(&r["fit"]["exponent"]) + 1.0).abs() < 1e-10);
}

#[test]
fn fit_decay_runs_the_homogeneous_problem() {
    let dir = tempfile::tempdir().unwrap();
    let o = selfsim(
        &["fit-decay", "--preset", "fig2", "--method", "series"],
        dir.path(),
    );
    let r = report(&o);
    let rate = f(&r["fit"]["rate"]);
    let target = (std::f64::consts::PI / 2.0).powi(2);
    assert!((rate - target).abs() < 1e-6 * target, "rate = {rate}");
}

#[test]
fn mode_method_needs_consonant_data() {
    let dir = tempfile::tempdir().unwrap();
    let o = selfsim(
        &["fit-decay", "--preset", "fig2", "--method", "mode"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_mode_reports_profile_and_class() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_selfsim"))
        .args(["eval-mode", "--nu", "1", "--xi", "-1,0,0.5", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    let r = report(&o);
    assert_eq!(r["b"], -2.0);
    assert_eq!(r["class"], "integrable");
    // H_1(ξ/√2) e^{-ξ²/2} = √2 ξ e^{-ξ²/2}
    let p = &r["points"][2];
    let expect = 2f64.sqrt() * 0.5 * (-0.125f64).exp();
    assert!((f(&p["w"]) - expect).abs() < 1e-13);
    assert!(f(&p["residual"]).abs() < 1e-6);
    assert!(dir.path().join("mode_profile.csv").is_file());
}

#[test]
fn specfun_eval_is_available() {
    let o = Command::new(env!("CARGO_BIN_EXE_selfsim"))
        .args([
            "specfun-eval",
            "--function",
            "hermite-poly",
            "--n",
            "3",
            "--x",
            "2,-1",
        ])
        .output()
        .unwrap();
    let r = report(&o);
    assert_eq!(r["values"][0]["value"], 40.0);
    assert_eq!(r["values"][1]["value"], 4.0);
    let o = Command::new(env!("CARGO_BIN_EXE_selfsim"))
        .args(["specfun-eval", "--function", "log-gamma", "--x", "0"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_key_sorted() {
    let o = Command::new(env!("CARGO_BIN_EXE_selfsim"))
        .args(["specfun-eval", "--function", "dawson", "--x", "1"])
        .output()
        .unwrap();
    let text = String::from_utf8(o.stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
