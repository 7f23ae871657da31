use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn eelimit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eelimit"))
        .args(args)
        .output()
        .expect("spawn eelimit")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn data_lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

#[test]
fn limit_reports_gbit_per_joule() {
    let out = eelimit(&["limit", "--beta-db", "-110"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("3.6"), "{}", stdout(&out));
}

#[test]
fn json_output_parses() {
    let out = eelimit(&["--format", "json", "optimum", "--beta-db", "-80", "--nu", "1e-14"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let text = v.to_string();
    assert!(text.contains("ee"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&eelimit(&["limit", "--beta-db", "10"])), 2);
    assert_eq!(code(&eelimit(&["limit", "--beta", "1e-9", "--beta-db", "-90"])), 2);
    assert_eq!(code(&eelimit(&["sweep", "--figure", "fig2", "--out", "x.csv"])), 2);
}

#[test]
fn degenerate_optimum_exits_3() {
    let out = eelimit(&["optimum", "--beta-db", "-80", "--nu", "0"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn unwritable_output_exits_4() {
    let out = eelimit(&["sweep", "--figure", "fig1", "--out", "/nonexistent-dir/fig1.csv"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn verify_passes_and_emits_json() {
    let out = eelimit(&["verify", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["check_id"].is_string() && c["pass"] == true));
}

#[test]
fn verify_with_exact_light_speed_fails_only_distance_checks() {
    let out = eelimit(&["verify", "--json", "--speed-of-light", "2.9e8"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|id| id.starts_with("AC5.")), "{failed:?}");
}

#[test]
fn fig1_sweep_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = eelimit(&["sweep", "--figure", "fig1", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    let lines = data_lines(&a);
    assert_eq!(lines[0], "beta_db,ee_limit_bit_per_joule,free_space_distance_m");
    assert_eq!(lines.len(), 122);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 3));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn fig4_writes_three_tables_and_a_script() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("fig4");
    let out = eelimit(&[
        "sweep", "--figure", "fig4", "--out", stem.to_str().unwrap(), "--samples", "21", "--plot",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for suffix in ["ee", "rate", "locus"] {
        let path = dir.path().join(format!("fig4_{suffix}.csv"));
        assert!(path.exists(), "missing {}", path.display());
    }
    assert_eq!(data_lines(&dir.path().join("fig4_ee.csv")).len(), 21 * 21 + 1);
    assert!(dir.path().join("fig4.py").exists());
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("link.conf");
    fs::write(&cfg, "# link\nbeta-db = -80\nnu = 1e-14\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = eelimit(&["--config", cfg, "optimum"]);
    assert_eq!(code(&from_file), 0, "{}", String::from_utf8_lossy(&from_file.stderr));
    let a: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();

    let flags = eelimit(&["--format", "json", "optimum", "--beta-db", "-80", "--nu", "1e-14"]);
    let b: serde_json::Value = serde_json::from_str(&stdout(&flags)).unwrap();
    assert_eq!(a, b);

    let overridden = eelimit(&["--config", cfg, "optimum", "--beta-db", "-90"]);
    let c: serde_json::Value = serde_json::from_str(&stdout(&overridden)).unwrap();
    assert_ne!(a, c);
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "gamma = 1\n").unwrap();
    let out = eelimit(&["--config", cfg.to_str().unwrap(), "limit", "--beta-db", "-80"]);
    assert_eq!(code(&out), 2);
}
