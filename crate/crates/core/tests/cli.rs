use std::fs;
use std::path::Path;
use std::process::Command;

use gtcrypt::aag::{true_key, AagInstance, PrivateKeys};

fn gtcrypt(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gtcrypt")).args(args).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn keygen_then_quotient_attack_recovers_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let private = dir.path().join("keys.json");
    let report = dir.path().join("report.json");
    let (code, text) =
        gtcrypt(&["keygen", "--platform", "path:3", "--seed", "7", "--out", p(&inst), "--private-out", p(&private)]);
    assert_eq!(code, 0, "{text}");
    let (code, text) = gtcrypt(&["attack", p(&inst), "--attack", "qa", "--private", p(&private), "--out", p(&report)]);
    assert_eq!(code, 0, "{text}");

    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["outcome"], "success");
    assert_eq!(r["verified"], true);
    let instance: AagInstance = serde_json::from_str(&fs::read_to_string(&inst).unwrap()).unwrap();
    let keys: PrivateKeys = serde_json::from_str(&fs::read_to_string(&private).unwrap()).unwrap();
    let truth = true_key(&instance, &keys.alice, &keys.bob).unwrap();
    assert_eq!(r["key"], serde_json::to_value(&truth).unwrap());
}

#[test]
fn mismatched_system_sizes_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    fs::write(&sys, r#"{"pairs": [[[1, 2], [2, 1, -2]], [[1]]]}"#).unwrap();
    let (code, text) = gtcrypt(&["solve", "--system", p(&sys), "--out", p(&dir.path().join("o.json"))]);
    assert_eq!(code, 2, "{text}");
}

#[test]
fn zero_trials_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"experiment_id": "z", "seed": 1, "trials": 0, "experiment": "density",
            "property": "lambda_quarter", "platform": {"kind": "free", "rank": 2}, "k": 2, "radii": [5]}"#,
    )
    .unwrap();
    let (code, text) = gtcrypt(&["experiment", "--config", p(&cfg), "--out", p(&dir.path().join("o.csv"))]);
    assert_eq!(code, 2, "{text}");
}

#[test]
fn schema_errors_name_the_offending_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"experiment_id": "z", "seed": "one", "trials": 3}"#).unwrap();
    let (code, text) = gtcrypt(&["experiment", "--config", p(&cfg), "--out", p(&dir.path().join("o.csv"))]);
    assert_eq!(code, 2);
    assert!(text.contains("seed"), "{text}");
}

#[test]
fn replay_reproduces_experiment_and_attack_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let csv = dir.path().join("out.csv");
    fs::write(
        &cfg,
        r#"{"experiment_id": "r", "seed": 3, "trials": 50, "workers": 4, "experiment": "density",
            "property": "lambda_quarter", "platform": {"kind": "free", "rank": 2}, "k": 2, "radii": [5, 10]}"#,
    )
    .unwrap();
    assert_eq!(gtcrypt(&["experiment", "--config", p(&cfg), "--out", p(&csv)]).0, 0);
    let first = fs::read(&csv).unwrap();
    let (code, text) = gtcrypt(&["replay", p(&dir.path().join("out.csv.manifest.json"))]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("identical"));
    assert_eq!(fs::read(&csv).unwrap(), first);

    let inst = dir.path().join("inst.json");
    let report = dir.path().join("report.json");
    assert_eq!(gtcrypt(&["keygen", "--platform", "path:4", "--seed", "2", "--out", p(&inst)]).0, 0);
    let (code, _) = gtcrypt(&["attack", p(&inst), "--attack", "qa", "--out", p(&report)]);
    assert!(code == 0 || code == 1);
    let (code, text) = gtcrypt(&["replay", p(&dir.path().join("report.json.manifest.json"))]);
    assert_eq!(code, 0, "{text}");
}
