use std::path::{Path, PathBuf};
use std::process::Command;

fn inputs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../inputs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer-certify")).args(args).env("RUST_LOG", "warn").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn certify(sub: &str, input: &str, extra: &[&str]) -> (i32, serde_json::Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.json");
    let input = inputs().join(input);
    let mut args = vec![sub, "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, _) = run(&args);
    let text = std::fs::read_to_string(&out).unwrap();
    (code, serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn noncyclic_success_and_violation() {
    let (code, v, text) = certify("noncyclic", "noncyclic_p19.toml", &[]);
    assert_eq!(code, 0);
    assert!(v["conclusion"].as_str().unwrap().contains("not Z/3-cyclic"));
    let (_, _, again) = certify("noncyclic", "noncyclic_p19.toml", &[]);
    assert_eq!(text, again, "certificates are byte-stable");

    let (code, v, _) = certify("noncyclic", "noncyclic_p7.toml", &[]);
    assert_eq!(code, 1);
    assert_eq!(v["failure"]["code"], "SETUP_VIOLATION");
    assert!(v["conclusion"].is_null());
}

#[test]
fn other_pipelines() {
    assert_eq!(certify("goodred", "goodred_p7.toml", &[]).0, 0);
    assert_eq!(certify("indec", "indec_p3.toml", &[]).0, 0);
    assert_eq!(certify("tate", "tate_p5.toml", &[]).0, 0);
    assert_eq!(certify("ss-verify", "ss_verify_p3.toml", &[]).0, 0);
    let (code, v, _) = certify("ss-verify", "ss_verify_mutated.toml", &[]);
    assert_eq!(code, 1);
    assert_eq!(v["failure"]["code"], "CHECK_FAILED");
    let (code, v, _) = certify("tate", "tate_p5.toml", &["--budget", "10"]);
    assert_eq!(code, 1);
    assert_eq!(v["failure"]["code"], "BUDGET_EXCEEDED");
}

#[test]
fn audit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.json");
    let input = inputs().join("tate_p5.toml");
    assert_eq!(run(&["tate", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["audit", "--input", out.to_str().unwrap()]).0, 0);

    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    v["conclusion"] = "Br(E_q)[25] = 0 and every element is cyclic".into();
    std::fs::write(&out, v.to_string()).unwrap();
    assert_eq!(run(&["audit", "--input", out.to_str().unwrap()]).0, 1);
}

#[test]
fn unreadable_input_is_an_internal_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "p = \"nineteen\"\n").unwrap();
    let out = dir.path().join("o.json");
    let (code, stderr) = run(&["tate", "--input", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parsing"));
    assert!(!out.exists());
    let (code, _) = run(&["tate", "--input", "/nonexistent.toml", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 2);
}
