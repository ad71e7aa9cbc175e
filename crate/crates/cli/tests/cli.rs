use std::path::Path;
use std::process::{Command, Output};

fn korbits(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_korbits")).args(args).arg("--cache-dir").arg(cache).output().expect("binary runs")
}

fn korbits_plain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_korbits")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn fixtures_json() {
    let o = korbits_plain(&["fixtures", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"speh_sl4R") && names.contains(&"su63_333"));
}

#[test]
fn analyze_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("speh.json");
    let o = korbits(
        &["analyze", "--fixture", "speh_sl4R", "--format", "json", "--out", out.to_str().unwrap()],
        &dir.path().join("cache"),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let printed: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(printed, saved);
    assert_eq!(saved["invariants"]["generators"][1]["weight"], serde_json::json!([2, 2]));
    assert_eq!(saved["cone"]["cone_inequalities"], serde_json::json!([[1, -1], [0, 1]]));

    let o = korbits_plain(&["ktypes", "--report", out.to_str().unwrap(), "--weight", "4,2", "--weight", "3,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(4,2)  1\n(3,1)  0\n");
    let o = korbits_plain(&["cone", "--report", out.to_str().unwrap(), "--point", "3,1", "--point", "-1,0"]);
    assert_eq!(stdout(&o), "(3,1)  inside\n(-1,0)  outside\n");
}

#[test]
fn table_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = korbits(&["analyze", "--fixture", "su63_333"], dir.path());
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("spherical    false (certified)"));
    assert!(s.contains("dim orbit    27 (borel 26)"));
}

#[test]
fn verify_speh_exit_codes() {
    let o = korbits_plain(&["verify-speh"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    let o = korbits_plain(&["verify-speh", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("increase degree bound"));
    let o = korbits_plain(&["verify-speh", "--bound", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["shifted_lattice"], serde_json::json!([[1, 1], [3, 1], [3, 3]]));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(korbits(&["analyze", "--fixture", "nope"], dir.path()).status.code(), Some(2));
    assert_eq!(korbits(&["cone", "--fixture", "su63_333"], dir.path()).status.code(), Some(2));
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"algebra":{"family":"sl_R","n":4},"orbit":{"partition":[3,2]}}"#).unwrap();
    let o = korbits(&["analyze", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("representative"));
}

#[test]
fn cache_is_keyed_by_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c");
    assert!(korbits(&["ktypes", "--fixture", "sl4_211", "--bound", "4"], &cache).status.success());
    assert!(korbits(&["ktypes", "--fixture", "sl4_211", "--bound", "6"], &cache).status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);
    let o = korbits(&["ktypes", "--fixture", "speh_sl4R", "--shift", "1,1", "--bound", "3"], &cache);
    assert_eq!(stdout(&o), "(1,1)\n(3,1)\n(3,3)\n");
}
