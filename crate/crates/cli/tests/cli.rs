use std::path::PathBuf;
use std::process::{Command, Output};

use hechain::scalar::{Scalar, Var};
use serde_json::Value;

fn hechain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hechain")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hechain-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn report_shape_and_ordering() {
    let out = hechain(&["verify", "--suite", "hecke", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["suite"], "hecke");
    let cases = r["cases"].as_array().unwrap();
    let ids: Vec<&str> = cases.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for c in cases {
        for key in ["inputs", "pass", "lhs_digest", "rhs_digest", "residual"] {
            assert!(c.get(key).is_some(), "{key}");
        }
        assert_eq!(c["lhs_digest"], c["rhs_digest"]);
    }
    assert_eq!(r["summary"]["cases"], cases.len());
    assert_eq!(r["summary"]["pass"], true);
    assert!(r["versions"]["hechain"].is_string());
}

#[test]
fn exit_codes() {
    assert_eq!(hechain(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(hechain(&["verify", "--suite", "hecke", "--q", "1"]).status.code(), Some(3));
    assert_eq!(hechain(&["verify", "--suite", "hecke", "--q", "abc"]).status.code(), Some(3));
    assert_eq!(hechain(&["verify", "--bogus"]).status.code(), Some(3));
    assert_eq!(hechain(&["--help"]).status.code(), Some(0));
    let failing = hechain(&["verify", "--suite", "rmatrix-core", "--model", "gl(1|1)"]);
    assert_eq!(failing.status.code(), Some(1));
    let r = json(&failing);
    let tl = r["cases"].as_array().unwrap().iter().find(|c| c["id"] == "tl-gl(1|1)").unwrap();
    assert_eq!(tl["pass"], false);
    assert_eq!(hechain(&["verify", "--suite", "rmatrix-core", "--model", "gl2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "trace-axioms", "--n", "2", "--seed", "11"];
    let a = hechain(&args);
    let b = hechain(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = hechain(&["verify", "--suite", "trace-axioms", "--n", "2", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = scratch("suite.conf");
    std::fs::write(&cfg, "# sample\nsuite = hecke\nsites = 2\nformat = text\n").unwrap();
    let out = hechain(&["verify", "--config", cfg.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("suite hecke: PASS (3/3 passed)\n"), "{text}");
    let out = hechain(&["verify", "--config", cfg.to_str().unwrap(), "--n", "3", "--format", "json"]);
    assert_eq!(json(&out)["summary"]["cases"], 5);
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(hechain(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn output_flag_writes_the_report() {
    let path = scratch("mirror.json");
    let out = hechain(&["verify", "--suite", "mirror", "--n", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["summary"]["passed"], 2);
}

#[test]
fn compute_kinds() {
    let out = hechain(&["compute", "qop", "--N", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["N"], 2);
    assert_eq!(v["pass"], true);
    assert_eq!(v["qop"]["basis"], "blob");

    let v = json(&hechain(&["compute", "tau", "--n", "2"]));
    assert_eq!(v["tau"]["basis"], "hecke");
    assert_eq!(v["tau"]["rank"], 3);
    let v = json(&hechain(&["compute", "tau", "--n", "1", "--boundary", "blob"]));
    assert_eq!(v["tau"]["basis"], "affine");

    let v = json(&hechain(&["compute", "charges", "--n", "4"]));
    assert_eq!(v["charges"].as_array().unwrap().len(), 5);

    let v = json(&hechain(&["compute", "hamiltonian", "--sites", "3", "--model", "gl2", "--q", "2"]));
    let rows = v["hamiltonian"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let entry: Scalar = serde_json::from_value(rows[0][0].clone()).unwrap();
    assert_eq!(entry, Scalar::from_int(4));
    assert_eq!(hechain(&["compute", "hamiltonian", "--model", "gl2"]).status.code(), Some(3));
}

#[test]
fn polynomial_boundary() {
    let path = scratch("poly.json");
    let x = Scalar::var(Var::X);
    let coeffs = vec![x.clone(), Scalar::one() - x];
    std::fs::write(&path, serde_json::to_string(&coeffs).unwrap()).unwrap();
    let arg = format!("poly:{}", path.display());
    let out = hechain(&["verify", "--suite", "reflection", "--n", "2", "--boundary", &arg]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let ids: Vec<&str> = r["cases"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, vec!["recursion-poly[2]-n1", "recursion-poly[2]-n2"]);
    let v = json(&hechain(&["compute", "tau", "--n", "1", "--boundary", &arg]));
    assert_eq!(v["boundary"], "poly[2]");
    assert_eq!(hechain(&["verify", "--suite", "hecke", "--boundary", "poly:/nonexistent"]).status.code(), Some(3));
}

#[test]
fn spectrum_command() {
    let out = hechain(&["spectrum", "--model", "gl2", "--sites", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["model"], "gl(2)");
    assert_eq!(v["boundary"], "free");
    let found: Vec<(String, u64)> = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_str().unwrap().to_string(), e["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(found, vec![("1/2".into(), 2), ("5/2".into(), 2), ("4".into(), 4)]);
    assert_eq!(hechain(&["spectrum", "--boundary", "blob"]).status.code(), Some(3));
}

#[test]
fn tq_command() {
    let out = hechain(&["tq", "--N", "1", "--k", "2", "--q", "5/3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["system"].as_array().unwrap().len(), 2);
    assert_eq!(v["pass"], true);
    let text = hechain(&["tq", "--N", "1", "--k", "1", "--format", "text"]);
    assert!(String::from_utf8(text.stdout).unwrap().contains("pass: true"));
}
