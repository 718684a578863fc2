use std::path::Path;
use std::process::{Command, Output};

use entkit::io::{density_to_json, onelocc_to_json};
use entkit::matqi::{isotropic, max_entangled, random_density};
use entkit::povm::computational_basis_onelocc;

fn entkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entkit")).args(args).env_remove("ENTKIT_JOBS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_json(dir: &Path, name: &str, v: &serde_json::Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn phi_table_rows_and_determinism() {
    let a = entkit(&["phi-table", "--dmax", "4"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "d,closed_form,lo_value,two_outcome_value,sweep_max,pass");
    assert!(rows[1].starts_with("2,0.584962500721,"));
    assert!(rows[2].starts_with("3,1,"));
    assert!(rows[3].starts_with("4,1.32192809489,"));
    let b = entkit(&["phi-table", "--dmax", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn phi_table_rejects_small_dmax() {
    assert_eq!(entkit(&["phi-table", "--dmax", "1"]).status.code(), Some(2));
}

#[test]
fn ree_on_bell_state_file() {
    let dir = tempfile::tempdir().unwrap();
    let bell = write_json(dir.path(), "bell.json", &density_to_json(&max_entangled(2).unwrap()));
    let out = dir.path().join("ree.json");
    let o = entkit(&["ree", "--state", &bell, "--seed", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!((value - 1.0).abs() < 2e-4, "{value}");
    assert!(v["gap"].as_f64().unwrap() <= 1e-4);
    assert!(v["interval"].as_array().unwrap().len() == 2);
}

#[test]
fn ree_on_separable_file() {
    let dir = tempfile::tempdir().unwrap();
    let iso = write_json(dir.path(), "iso.json", &density_to_json(&isotropic(2, 0.2).unwrap()));
    let o = entkit(&["ree", "--state", &iso, "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["value"].as_f64().unwrap() <= 1e-4);
}

#[test]
fn ree_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = entkit(&["ree", "--state", bad.to_str().unwrap(), "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse"));

    let neg = write_json(dir.path(), "neg.json", &serde_json::json!({"dims": [2, 2], "re": [
        [1.2, 0, 0, 0], [0, -0.2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]}));
    let o = entkit(&["ree", "--state", &neg, "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("psd"));

    // seed is mandatory
    assert_eq!(entkit(&["ree", "--state", &neg]).status.code(), Some(2));
}

#[test]
fn measured_ree_with_povm_file() {
    let dir = tempfile::tempdir().unwrap();
    let bell = write_json(dir.path(), "bell.json", &density_to_json(&max_entangled(2).unwrap()));
    let povm = write_json(dir.path(), "m.json", &onelocc_to_json(&computational_basis_onelocc(2, 2).unwrap()));
    let o = entkit(&["measured-ree", "--state", &bell, "--povm", &povm, "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // computational-basis statistics of Φ₂ are reproduced by ½(|00⟩⟨00| + |11⟩⟨11|)
    assert!(v["value"].as_f64().unwrap().abs() < 1e-6, "{v}");
    let re = &v["sigma"]["re"];
    assert!((re[0][0].as_f64().unwrap() - 0.5).abs() < 1e-4);
    assert!((re[3][3].as_f64().unwrap() - 0.5).abs() < 1e-4);
}

#[test]
fn stein_preset_and_files() {
    let o = entkit(&["stein", "--preset", "qubit-pair", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<String>> =
        text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        let dist: f64 = r[5].parse().unwrap();
        let bound: f64 = r[6].parse().unwrap();
        assert!(dist <= bound + 1e-9);
    }

    // ρ = σ: nothing to distinguish
    let dir = tempfile::tempdir().unwrap();
    let rho = write_json(dir.path(), "r.json", &density_to_json(&random_density(&[2, 2], 4, 5).unwrap()));
    let povm = write_json(dir.path(), "m.json", &onelocc_to_json(&computational_basis_onelocc(2, 2).unwrap()));
    let o = entkit(&["stein", "--rho", &rho, "--sigma", &rho, "--povm", &povm, "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for line in stdout(&o).lines().skip(1) {
        let exponent: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(exponent.abs() < 0.05, "{line}");
    }
    assert_eq!(entkit(&["stein", "--rho", &rho, "--povm", &povm]).status.code(), Some(2));
}

#[test]
fn harness_dispatch() {
    let o = entkit(&["harness", "ssa", "--samples", "10", "--dims", "2,2,2", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["check", "params", "seed", "samples", "violations", "worst_margin", "records"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["violations"], 0);

    let phi = entkit(&["harness", "phi", "--dmax", "3", "--format", "csv"]);
    let alias = entkit(&["harness", "phi-table", "--dmax", "3", "--format", "csv"]);
    assert_eq!(phi.status.code(), Some(0));
    assert_eq!(phi.stdout, alias.stdout);

    assert_eq!(entkit(&["harness", "ssa", "--samples", "0", "--seed", "1"]).status.code(), Some(2));
    let unknown = entkit(&["harness", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("donald-horodecki"));
    assert_eq!(entkit(&["harness", "ssa", "--samples", "2"]).status.code(), Some(2));
}

#[test]
fn harness_output_is_independent_of_jobs() {
    let args = ["harness", "donald-horodecki", "--samples", "4", "--seed", "9"];
    let one = Command::new(env!("CARGO_BIN_EXE_entkit")).args(args).env("ENTKIT_JOBS", "1").output().unwrap();
    let two = entkit(&["--jobs", "2", "harness", "donald-horodecki", "--samples", "4", "--seed", "9"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn continuity_for_close_pair() {
    let dir = tempfile::tempdir().unwrap();
    let a = random_density(&[2, 2], 4, 1).unwrap();
    let b = a.mix(&random_density(&[2, 2], 4, 2).unwrap(), 0.05).unwrap();
    let pa = write_json(dir.path(), "a.json", &density_to_json(&a));
    let pb = write_json(dir.path(), "b.json", &density_to_json(&b));
    let o = entkit(&["continuity", "--rho", &pa, "--rho2", &pb, "--seed", "4", "--random-povms", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["measured"]["pass"], true);
    assert_eq!(v["donald_horodecki"]["pass"], true);
}
