use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn jrmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jrmt")).args(args).output().expect("binary runs")
}

fn jrmt_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jrmt"))
        .args(args)
        .env("JRMT_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Header and numeric rows of a CSV document, checking the config trailer.
fn parse_csv(s: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines: Vec<&str> = s.lines().collect();
    let trailer = lines.pop().unwrap();
    assert!(trailer.starts_with("# config={"), "{trailer}");
    serde_json::from_str::<Value>(trailer.trim_start_matches("# config=")).unwrap();
    let header = lines[0].split(',').map(str::to_string).collect();
    let rows = lines[1..].iter().map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn sample_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        let args = ["sample", "--n", "48", "--q", "12", "--qtilde", "18", "--route", "wishart", "--trials", "10", "--seed", "7", "--out", p];
        let o = jrmt(&args);
        assert!(o.status.success());
        std::fs::read_to_string(&path).unwrap()
    };
    let (a, b) = (run("s.csv"), run("s.csv"));
    assert_eq!(a, b);
    let (header, rows) = parse_csv(&a);
    assert_eq!(header.len(), 12);
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.len() == 12 && r.iter().all(|&x| (0.0..=1.0).contains(&x))));
    assert!(!a.contains('\r'));
}

#[test]
fn sample_records_the_reduction() {
    let out = stdout(&jrmt(&["sample", "--n", "10", "--q", "8", "--qtilde", "4", "--trials", "2", "--route", "projector"]));
    let (header, rows) = parse_csv(&out);
    assert_eq!((header.len(), rows.len()), (2, 2));
    let trailer = out.lines().last().unwrap().trim_start_matches("# config=");
    let cfg: Value = serde_json::from_str(trailer).unwrap();
    assert_eq!(cfg["plan"]["case"], "swap_then_reflect");
    assert_eq!(cfg["plan"]["eigen_map"], "1-x");
}

#[test]
fn sample_rejects_bad_ranks_and_routes() {
    assert_eq!(jrmt(&["sample", "--n", "48", "--q", "0", "--qtilde", "18"]).status.code(), Some(2));
    assert_eq!(jrmt(&["sample", "--n", "8", "--q", "2", "--qtilde", "3", "--route", "magic"]).status.code(), Some(2));
    assert_eq!(jrmt(&["sample", "--n", "8"]).status.code(), Some(2));
}

#[test]
fn worker_count_does_not_change_output() {
    let args = ["sample", "--n", "30", "--q", "6", "--qtilde", "9", "--trials", "16", "--seed", "3"];
    assert_eq!(stdout(&jrmt_env(&args, "1")), stdout(&jrmt_env(&args, "4")));
    assert_eq!(jrmt_env(&args, "zero").status.code(), Some(2));
}

#[test]
fn density_grid() {
    let (header, rows) = parse_csv(&stdout(&jrmt(&["density", "--n", "50", "--a", "25", "--b", "10", "--grid", "-0.9:0.9:37"])));
    assert_eq!(header, ["x", "finite_n_density", "limit_f"]);
    assert_eq!(rows.len(), 37);
    assert_eq!(jrmt(&["density", "--n", "50", "--a", "25", "--b", "10", "--grid", "0.1:0.5"]).status.code(), Some(2));
    assert_eq!(jrmt(&["density", "--n", "50", "--a", "25", "--b", "10", "--grid", "a:b:c"]).status.code(), Some(2));
}

#[test]
fn limit_column_integrates_to_one() {
    let out = stdout(&jrmt(&["density", "--n", "50", "--a", "25", "--b", "10", "--grid", "-0.999:0.999:4001"]));
    let (_, rows) = parse_csv(&out);
    let total: f64 = rows.windows(2).map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][2] + w[1][2])).sum();
    assert!((total - 1.0).abs() < 0.01, "{total}");
    let finite: f64 = rows.windows(2).map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1] + w[1][1])).sum();
    assert!((finite - 1.0).abs() < 0.01, "{finite}");
}

fn kernel_matrix(args: &[&str]) -> Vec<Vec<f64>> {
    let (header, rows) = parse_csv(&stdout(&jrmt(args)));
    assert_eq!(header, ["u", "v", "rescaled", "limit"]);
    rows
}

#[test]
fn kernel_shapes_and_symmetry() {
    for regime in ["bulk", "soft"] {
        let rows = kernel_matrix(&["kernel", "--regime", regime, "--n", "100", "--a", "50", "--b", "25", "--ugrid", "-1:1:5", "--vgrid", "-1:1:5"]);
        assert_eq!(rows.len(), 25);
        for i in 0..5 {
            for j in 0..5 {
                let (a, b) = (rows[i * 5 + j][2], rows[j * 5 + i][2]);
                assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "{regime}");
            }
        }
    }
    let rows = kernel_matrix(&["kernel", "--regime", "hard", "--n", "100", "--a", "50", "--b", "2", "--ugrid", "0.5:4:3", "--vgrid", "0.5:4:3"]);
    assert_eq!(rows.len(), 9);
    assert!((rows[1][2] - rows[3][2]).abs() < 1e-12);
}

#[test]
fn kernel_regime_validation() {
    let base = ["kernel", "--n", "100", "--a", "50", "--ugrid", "1:2:2", "--vgrid", "1:2:2"];
    let with = |extra: &[&str]| {
        let mut v: Vec<&str> = base.to_vec();
        v.extend_from_slice(extra);
        jrmt(&v).status.code()
    };
    assert_eq!(with(&["--regime", "hard", "--b", "1.5"]), Some(2));
    assert_eq!(with(&["--regime", "edge", "--b", "2"]), Some(2));
    assert_eq!(with(&["--regime", "onepoint", "--b", "2"]), Some(2));
    assert_eq!(with(&["--regime", "hard", "--b", "2"]), Some(0));
}

#[test]
fn gap_and_tracy_widom() {
    let g = json(&jrmt(&["gap", "--n", "12", "--a", "6", "--b", "3", "--x", "0.95", "--quad", "64"]));
    let v = g["gap"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&v));
    assert_eq!(g["config"]["quad"], 64);
    assert_eq!(jrmt(&["gap", "--n", "12", "--a", "6", "--b", "3", "--x", "1.5"]).status.code(), Some(2));
    assert!(json(&jrmt(&["tw", "--t", "6"]))["cdf"].as_f64().unwrap() >= 0.9999);
    assert!(json(&jrmt(&["tw", "--t", "-8"]))["cdf"].as_f64().unwrap() < 1e-3);
}

#[test]
fn angles_report() {
    let v = json(&jrmt(&["angles", "--n", "200", "--q", "50", "--qprime", "60", "--trials", "200"]));
    let mean = v["max_cos2"]["mean"].as_f64().unwrap();
    let s = v["predicted_s"].as_f64().unwrap();
    assert!(mean >= s - 0.05 && mean <= s + 0.02, "{mean} vs {s}");
    assert!(v["max_cos2"]["std"].as_f64().unwrap() > 0.0);
    assert_eq!(jrmt(&["angles", "--n", "10", "--q", "11", "--qprime", "3"]).status.code(), Some(2));
}

#[test]
fn experiment_report() {
    let v = json(&jrmt(&["experiment", "--regime", "onepoint", "--ns", "50,100,200"]));
    let errors: Vec<f64> = v["report"]["errors"].as_array().unwrap().iter().map(|e| e.as_f64().unwrap()).collect();
    assert_eq!(errors.len(), 3);
    assert!(errors.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(jrmt(&["experiment", "--regime", "bulk", "--ns", "1,x"]).status.code(), Some(2));
}

#[test]
fn output_file_is_replaced_whole() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tw.json");
    std::fs::write(&path, "stale contents that are longer than the result").unwrap();
    let p = path.to_str().unwrap();
    assert!(jrmt(&["tw", "--t", "0", "--out", p]).status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["cdf"].as_f64().unwrap() > 0.9);
    assert!(!Path::new(p).with_extension("tmp").exists());
}
