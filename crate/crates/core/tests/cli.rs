use std::process::Command;

fn nugrass(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nugrass")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

const SMALL: [&str; 8] = ["-k", "0", "-l", "1", "-m", "1", "-n", "2"];

fn with(cmd: &str, extra: &[&str]) -> Vec<String> {
    std::iter::once(cmd).chain(SMALL).chain(extra.iter().copied()).map(String::from).collect()
}

fn run(args: Vec<String>) -> (i32, String) {
    nugrass(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn atlas_listing() {
    let (code, out) = run(with("atlas", &[]));
    assert_eq!(code, 0);
    assert!(out.starts_with("νG_{0|1}(1|2): 3 charts, α|β = 1|1"));
    let (code, out) = nugrass(&["atlas", "-k", "1", "-l", "2", "-m", "2", "-n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("10 charts, α|β = 3|3"));
    assert_eq!(nugrass(&["atlas", "-k", "2", "-l", "1", "-m", "1", "-n", "2"]).0, 2);
}

#[test]
fn transition_prints_g12() {
    let (code, out) = run(with("transition", &["--from", "∅|{1}", "--to", "∅|{2}"]));
    assert_eq!(code, 0);
    assert!(out.contains("x ↦ 1/x\ne ↦ e/x"));
    assert_eq!(run(with("transition", &["--from", "{1}|∅", "--to", "∅|{1}"])).0, 2);
}

#[test]
fn reports_are_deterministic() {
    let args = with("verify-cocycle", &["-r", "2", "--samples", "20", "--seed", "7", "--format", "json"]);
    let (c1, a) = run(args.clone());
    let (c2, b) = run(args);
    assert_eq!((c1, &a), (c2, &b));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"].as_bool(), Some(c1 == 0));
}

#[test]
fn transitivity_passes() {
    assert_eq!(run(with("transitivity", &["--samples", "10"])).0, 0);
}

#[test]
fn nulie_json_report() {
    let dir = std::env::temp_dir().join(format!("nugrass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let (_, out) = run(with("nulie", &["--format", "json", "--out", path.to_str().unwrap()]));
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["dim_even"].as_u64().unwrap() >= 1);
    assert_eq!(v["defect_residual"], "0");
    assert_eq!(v["sign_s"], 1);
}
