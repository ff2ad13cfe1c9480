use std::process::{Command, Output};

use serde_json::Value;

fn modlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlie")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn build_dimensions() {
    for (d, dim) in [("A2", 8), ("Zass:2", 25), ("W:2:1,1", 50), ("O:2:1,1", 25)] {
        let out = modlie(&["build", d, "--p", "5"]);
        assert_eq!(out.status.code(), Some(0), "{}", d);
        assert_eq!(json(&out)["dim"], dim, "{}", d);
    }
}

#[test]
fn build_rejects_bad_input() {
    let out = modlie(&["build", "W:9:1,1,1,1,1,1,1,1,1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds cap"));
    assert_eq!(modlie(&["build", "Q7"]).status.code(), Some(2));
    assert_eq!(modlie(&["build", "A1", "--p", "6"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = modlie(&["verify", "axioms", "--algebra", "W:2:1,1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["assertions"].as_array().unwrap().iter().all(|a| a["pass"] == true));

    let out = modlie(&["verify", "paper-lemmas", "--lemma", "ord-filtration-remark"]);
    assert_eq!(out.status.code(), Some(0));
    let detail = json(&out)["assertions"][0]["detail"].as_str().unwrap().to_string();
    assert!(detail.contains("ord(h) = 1") && detail.contains("ord(gr h) = 0"), "{}", detail);

    let out = modlie(&["verify", "paper-lemmas", "--lemma", "torus-weights", "--algebra", "W:2:1,1"]);
    assert_eq!(out.status.code(), Some(0));

    assert_eq!(modlie(&["verify", "paper-lemmas", "--lemma", "9.9.9"]).status.code(), Some(2));
}

#[test]
fn experiments_write_reports() {
    let dir = std::env::temp_dir().join(format!("modlie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.to_str().unwrap();
    let args = ["gen", "--algebra", "W:2:1,1", "--p", "5", "--experiment", "obstruction", "--trials", "4", "--seed", "42"];
    let out = modlie(&[&args[..], &["--out", p]].concat());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(first["experiment"], "obstruction");
    assert_eq!(first["schema_version"], 1);
    for key in ["algebra", "field", "parameters", "certificates", "histograms", "assertions", "meta"] {
        assert!(first.get(key).is_some(), "{}", key);
    }
    let seq = modlie(&[&["--sequential"], &args[..]].concat());
    assert_eq!(json(&seq)["hash"], first["hash"]);
    std::fs::remove_dir_all(&dir).ok();

    let out = modlie(&["experiment", "--algebra", "Zass:1", "--experiment", "zassenhaus-sweep"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["certificates"].as_array().unwrap().len(), 3124);
}

#[test]
fn experiment_exit_codes() {
    let out = modlie(&["gen", "--algebra", "A1", "--experiment", "census", "--trials", "100", "--budget-pairs", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["assertions"][0]["name"], "budget");
    assert_eq!(modlie(&["gen", "--algebra", "A1", "--experiment", "nope"]).status.code(), Some(2));
    assert_eq!(modlie(&["gen", "--algebra", "W:1:1", "--experiment", "theoremB"]).status.code(), Some(2));
}

#[test]
fn modulus_table_override() {
    let dir = std::env::temp_dir().join(format!("modlie-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("moduli.json");
    std::fs::write(&path, r#"[{"p": 5, "k": 2, "modulus": [2, 1, 1]}]"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(["build", "W:1:1", "--p", "5", "--ext", "2"])
        .env("MODLIE_DATA", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["spec"]["modulus"], serde_json::json!([2, 1, 1]));
    let default = modlie(&["build", "W:1:1", "--p", "5", "--ext", "2"]);
    assert_eq!(json(&default)["spec"]["modulus"], serde_json::json!([2, 4, 1]));
    std::fs::remove_dir_all(&dir).ok();
}
