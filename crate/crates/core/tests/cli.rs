use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tiemzi::cli::fringes::{fringe_rows, FringesParams};

fn tiemzi(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiemzi"))
        .current_dir(dir)
        .args(args)
        .env_clear()
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) {
    let out = tiemzi(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    assert!(text.ends_with('\n'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn manifest(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

#[test]
fn fringes_default_curve() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["fringes", "--out", "f.csv"]);
    let (header, rows) = csv(&dir.path().join("f.csv"));
    assert_eq!(header, ["k1_L_AB", "P_plus", "P_minus", "D", "S", "purity"]);
    assert_eq!(rows.len(), 1001);
    let p_min = rows.iter().map(|r| r[1]).fold(f64::INFINITY, f64::min);
    let p_max = rows.iter().map(|r| r[1]).fold(f64::NEG_INFINITY, f64::max);
    assert!(p_min < 1e-9 && p_max > 1.0 - 1e-9);
    for r in &rows {
        assert!((r[3] * r[3] + r[5] * r[5] - 1.0).abs() < 1e-12);
    }
    let mid = &rows[250];
    assert!((mid[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert!((mid[3] - 1.0).abs() < 1e-12);

    // values are the library's, digit for digit
    let lib = fringe_rows(&FringesParams::default()).unwrap();
    for (a, b) in rows.iter().zip(&lib) {
        assert_eq!(a.as_slice(), b.as_slice());
    }
}

#[test]
fn fringes_unentangled_limit() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        dir.path(),
        &["fringes", "--kappa", "1", "--points", "101", "--out", "f.csv"],
    );
    let (_, rows) = csv(&dir.path().join("f.csv"));
    assert_eq!(rows.len(), 101);
    for r in &rows {
        assert_eq!(r[3], 0.0);
        assert!((r[1] - 0.5 * (1.0 + r[0].cos())).abs() < 1e-12);
    }
}

#[test]
fn csv_numbers_use_seventeen_digits() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["fringes", "--points", "3", "--out", "f.csv"]);
    let text = fs::read_to_string(dir.path().join("f.csv")).unwrap();
    for field in text.lines().skip(1).flat_map(|l| l.split(',')) {
        let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{field}");
    }
}

#[test]
fn ellipse_curves() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["ellipse", "--out", "e.csv"]);
    let text = fs::read_to_string(dir.path().join("e.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), "kappa,p1,S,D,ellipse_lhs,slack");
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3 * 101);
    let num = |s: &str| s.parse::<f64>().unwrap();
    let mut saw_corner = false;
    for r in &rows {
        let (p1, s, d, slack) = (num(r[1]), num(r[2]), num(r[3]), num(r[5]));
        match r[0] {
            "inf" => assert!(slack >= -1e-9),
            k if num(k) == 1.0 => assert!(s * s + d * d <= 1.0 + 1e-12),
            k if num(k) == 3.0 => {
                if p1 <= 0.75 {
                    assert!(slack.abs() <= 1e-9, "p1 {p1} slack {slack}");
                } else {
                    assert!(slack > 0.0);
                }
                if (s - 1.0 / 3.0).abs() < 1e-12 && (d - 1.0).abs() < 1e-12 {
                    saw_corner = true;
                }
            }
            other => panic!("unexpected kappa {other}"),
        }
    }
    assert!(saw_corner);
}

#[test]
fn manifest_replay_reproduces_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "fringes", "--kappa", "7", "--p1", "0.3", "--points", "57", "--out", "a/f.csv",
        ],
    );
    let first = fs::read(d.join("a/f.csv")).unwrap();
    let m = json(&manifest(&d.join("a/f.csv")));
    assert_eq!(m["command"], "fringes");
    assert_eq!(m["parameters"]["kappa"], 7.0);
    assert_eq!(m["parameters"]["grid_max"], std::f64::consts::TAU);
    fs::remove_file(d.join("a/f.csv")).unwrap();
    ok(d, &["fringes", "--config", "a/f.csv.manifest.json"]);
    assert_eq!(fs::read(d.join("a/f.csv")).unwrap(), first);

    ok(
        d,
        &[
            "experiment",
            "--n-in",
            "5000",
            "--repetitions",
            "8",
            "--seed",
            "3",
            "--out",
            "x.json",
        ],
    );
    let first = fs::read(d.join("x.json")).unwrap();
    ok(
        d,
        &["experiment", "--config", "x.json.manifest.json", "--out", "y.json"],
    );
    assert_eq!(fs::read(d.join("y.json")).unwrap(), first);
}

#[test]
fn experiment_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = |out: &'static str| {
        [
            "experiment",
            "--n-in",
            "9000",
            "--repetitions",
            "20",
            "--seed",
            "42",
            "--out",
            out,
        ]
    };
    ok(d, &args("a.json"));
    ok(d, &args("b.json"));
    ok(
        d,
        &[
            "experiment",
            "--n-in",
            "9000",
            "--repetitions",
            "20",
            "--seed",
            "42",
            "--serial",
            "--out",
            "c.json",
        ],
    );
    let a = fs::read(d.join("a.json")).unwrap();
    let b = fs::read(d.join("b.json")).unwrap();
    let c = json(&d.join("c.json"));
    assert_eq!(a, b);
    let a = json(&d.join("a.json"));
    assert_eq!(a["repetitions"], c["repetitions"]);
    assert_eq!(a["mean_wrong_paths"], c["mean_wrong_paths"]);
}

#[test]
fn experiment_presets_report_predictions() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "experiment",
            "--preset",
            "tie",
            "--repetitions",
            "50",
            "--out",
            "t.json",
        ],
    );
    let t = json(&d.join("t.json"));
    let c = &t["comparison"];
    assert!((c["wrong_paths_bound"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!((c["predicted_wrong"].as_f64().unwrap() - 0.25).abs() < 1e-3);
    assert!(c["empirical_wrong_mean"].as_f64().unwrap() < 1.0);
    assert_eq!(c["required_atoms"], 90_000);
    assert_eq!(t["config"]["n_in"], 90_000);

    ok(
        d,
        &[
            "experiment",
            "--preset",
            "standard",
            "--repetitions",
            "20",
            "--out",
            "s.json",
        ],
    );
    let s = json(&d.join("s.json"));
    let c = &s["comparison"];
    assert!((c["predicted_wrong"].as_f64().unwrap() - 2631.6).abs() < 1e-6);
    assert!((c["empirical_wrong_mean"].as_f64().unwrap() - 2631.6).abs() < 150.0);

    // α = arccos 0.9 is the same detector as D = 0.9
    let alpha = 0.9f64.acos().to_string();
    ok(
        d,
        &[
            "experiment",
            "--preset",
            "standard",
            "--repetitions",
            "20",
            "--alpha",
            &alpha,
            "--out",
            "a.json",
        ],
    );
    let a = json(&d.join("a.json"));
    let da = a["predictions"]["distinguishability"].as_f64().unwrap();
    assert!((da - 0.9).abs() < 1e-12);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("c.json"), r#"{"kappa": 5.0, "p1": 0.3, "points": 11}"#).unwrap();
    ok(d, &["fringes", "--config", "c.json", "--p1", "0.4", "--out", "f.csv"]);
    let p = &json(&d.join("f.csv.manifest.json"))["parameters"];
    assert_eq!(p["kappa"], 5.0);
    assert_eq!(p["p1"], 0.4);
    assert_eq!(p["points"], 11);
    assert_eq!(p["grid_min"], 0.0);
}

#[test]
fn game_and_audit_write_json() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["game", "--trials", "40", "--n-in", "9000", "--out", "g.json"]);
    let g = json(&d.join("g.json"));
    assert_eq!(g["trials_per_action"].as_array().unwrap().len(), 4);
    assert!(d.join("g.json.manifest.json").exists());

    ok(d, &["audit", "--trials", "1", "--seed", "9", "--out", "a1.json"]);
    ok(d, &["audit", "--trials", "1", "--seed", "9", "--out", "a2.json"]);
    assert_eq!(
        fs::read(d.join("a1.json")).unwrap(),
        fs::read(d.join("a2.json")).unwrap()
    );

    ok(d, &["audit", "--trials", "2000", "--out", "a.json"]);
    let a = json(&d.join("a.json"));
    for (name, counts) in a["standard"].as_object().unwrap() {
        assert_eq!(counts["violated"], 0, "{name}");
    }
    assert_eq!(a["tie"]["duality_discrete"]["violated"], 2000);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    fs::write(d.join("bad.json"), r#"{"kappa": "three"}"#).unwrap();
    let out = tiemzi(d, &["fringes", "--config", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kappa"));

    fs::write(d.join("extra.json"), r#"{"kapa": 3}"#).unwrap();
    assert_eq!(tiemzi(d, &["fringes", "--config", "extra.json"]).status.code(), Some(2));
    assert_eq!(tiemzi(d, &["fringes", "--points", "1"]).status.code(), Some(2));
    assert_eq!(tiemzi(d, &["fringes", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(tiemzi(d, &["ellipse", "--kappa-list", "0.5"]).status.code(), Some(2));
    assert_eq!(tiemzi(d, &["experiment", "--p1", "2"]).status.code(), Some(2));

    ok(d, &["audit", "--trials", "1", "--out", "a.json"]);
    let out = tiemzi(d, &["fringes", "--config", "a.json.manifest.json"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(
        tiemzi(d, &["fringes", "--config", "missing.json"]).status.code(),
        Some(3)
    );
    fs::write(d.join("file"), "").unwrap();
    assert_eq!(tiemzi(d, &["fringes", "--out", "file/f.csv"]).status.code(), Some(3));
    assert_eq!(tiemzi(d, &["--help"]).status.code(), Some(0));
}
