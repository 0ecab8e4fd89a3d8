use serde_json::Value;
use singmod::modfun::class_poly;
use singmod::qforms::Discriminant;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_singmod"));
    for (k, _) in std::env::vars() {
        if k.starts_with("SINGMOD_") {
            c.env_remove(k);
        }
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("singmod-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn written(o: &Output) -> PathBuf {
    let s = stdout(o);
    let line = s.lines().find_map(|l| l.strip_prefix("wrote ")).expect("no document written");
    PathBuf::from(line)
}

fn read_json(p: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

#[test]
fn class_poly_matches_library() {
    let dir = scratch("classpoly");
    let o = run(&["class-poly", "-D", "-23", "--json", "--output-dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let h = class_poly(Discriminant::new(-23).unwrap()).unwrap();
    assert!(stdout(&o).contains(&h.to_string()));
    let doc = read_json(&written(&o));
    assert_eq!(doc["kind"], "class_polynomial");
    let coeffs: Vec<String> = serde_json::from_value(doc["payload"]["coefficients"].clone()).unwrap();
    // constant term first, as decimal strings
    assert_eq!(coeffs, ["12771880859375", "-5151296875", "3491750", "1"]);
}

#[test]
fn example_search_reports_worked_tuples() {
    let dir = scratch("search");
    let o = run(&[
        "search",
        "singular-dependent",
        "--delta-max",
        "200",
        "--n-max",
        "5",
        "--rational-only",
        "--json",
        "--output-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3), "findings exit code");
    let doc = read_json(&written(&o));
    let found: Vec<Vec<i64>> = doc["payload"]["findings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| serde_json::from_value(f["discriminants"].clone()).unwrap())
        .collect();
    for t in [vec![-4, -11, -19], vec![-7, -8, -12, -27], vec![-4, -11, -16, -27, -67]] {
        assert!(found.contains(&t), "missing {t:?}");
    }
    assert_eq!(doc["payload"]["complete"], true);
    let v = run(&["relation", "verify", written(&o).to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn tree_separate_has_one_survivor() {
    let o = run(&["tree", "separate", "--g", "1,0,0,1", "--g", "1,0,0,2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let yes = s.lines().filter(|l| l.trim_end().ends_with("yes")).count();
    let no = s.lines().filter(|l| l.trim_end().ends_with("no")).count();
    assert_eq!((yes, no), (1, 1));
}

#[test]
fn documents_round_trip_through_verify() {
    let dir = scratch("roundtrip");
    let out = dir.to_str().unwrap();
    let cases: [&[&str]; 6] = [
        &["relation", "find", "--member", "cm:-4:0", "--member", "cm:-11:0", "--member", "cm:-19:0"],
        &["relation", "find", "--member", "2", "--member", "3", "--bound", "4"],
        &["tree", "separate", "--g", "1,0,0,1", "--g", "1,0,0,2", "--g", "3,1,0,1"],
        &["tree", "distance", "-p", "3", "--g", "1,0,0,1", "--g", "1,1,0,9"],
        &["isogeny", "--x", "1728", "--y", "287496", "--level-max", "3"],
        &["moduli", "-D", "-23"],
    ];
    for args in cases {
        let mut a = args.to_vec();
        a.extend(["--json", "--output-dir", out]);
        let o = run(&a);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v = run(&["relation", "verify", written(&o).to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{args:?}: {}", stdout(&v));
    }
}

#[test]
fn tampered_documents_are_rejected() {
    let dir = scratch("tamper");
    let o = run(&[
        "relation", "find", "--member", "cm:-4:0", "--member", "cm:-11:0", "--member", "cm:-19:0", "--json", "--output-dir",
        dir.to_str().unwrap(),
    ]);
    let path = written(&o);
    let mut doc = read_json(&path);
    let e = doc["payload"]["exponents"].as_array_mut().unwrap();
    e[2] = Value::String("-4".into());
    let text = serde_json::to_string_pretty(&doc).unwrap();
    // same name, different content: hash mismatch
    std::fs::write(&path, &text).unwrap();
    assert_eq!(run(&["relation", "verify", path.to_str().unwrap()]).status.code(), Some(8));
    let renamed = dir.join("edited.json");
    std::fs::write(&renamed, &text).unwrap();
    assert_eq!(run(&["relation", "verify", renamed.to_str().unwrap()]).status.code(), Some(7));
    std::fs::write(&renamed, "{}").unwrap();
    assert_eq!(run(&["relation", "verify", renamed.to_str().unwrap()]).status.code(), Some(8));
}

#[test]
fn json_output_is_deterministic() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    let args = |d: &Path| {
        vec![
            "search".to_string(),
            "pair-product".into(),
            "--delta-max".into(),
            "60".into(),
            "--json".into(),
            "--output-dir".into(),
            d.to_str().unwrap().into(),
        ]
    };
    let (oa, ob) = (bin().args(args(&a)).output().unwrap(), bin().args(args(&b)).output().unwrap());
    let (pa, pb) = (written(&oa), written(&ob));
    assert_eq!(pa.file_name(), pb.file_name());
    assert_eq!(std::fs::read(pa).unwrap(), std::fs::read(pb).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["class-poly"]).status.code(), Some(2));
    assert_eq!(run(&["forms", "-D", "5"]).status.code(), Some(5));
    assert_eq!(run(&["j-eval", "--re", "0", "--im", "-1"]).status.code(), Some(5));
    assert_eq!(run(&["forms", "-D", "-23", "--precision-bits", "10"]).status.code(), Some(2));
    assert_eq!(run(&["forms", "-D", "-23", "--surrogate", "c7=0"]).status.code(), Some(2));
    assert_eq!(run(&["search", "pair-product", "--delta-max", "100", "--max-pairs", "40"]).status.code(), Some(4));
    assert_eq!(run(&["search", "pair-product", "--delta-max", "100"]).status.code(), Some(0));
    assert_eq!(run(&["modpoly", "build", "-N", "12"]).status.code(), Some(2));
    assert_eq!(run(&["relation", "verify", "/nonexistent/x.json"]).status.code(), Some(8));
}

#[test]
fn configuration_precedence() {
    let dir = scratch("config");
    let file = dir.join("singmod.toml");
    std::fs::write(&file, "delta_max = 10\n").unwrap();
    let summary = |o: Output| stdout(&o).lines().last().unwrap().to_string();
    let base = ["discriminants", "--config", file.to_str().unwrap()];
    assert_eq!(summary(run(&base)), "4 discriminants with |D| <= 10");
    let env = bin().args(base).env("SINGMOD_DELTA_MAX", "20").output().unwrap();
    assert_eq!(summary(env), "10 discriminants with |D| <= 20");
    let flag = bin().args(base).args(["--delta-max", "12"]).env("SINGMOD_DELTA_MAX", "20").output().unwrap();
    assert_eq!(summary(flag), "6 discriminants with |D| <= 12");
    let via_env = bin().arg("discriminants").env("SINGMOD_CONFIG", &file).output().unwrap();
    assert_eq!(summary(via_env), "4 discriminants with |D| <= 10");
}

#[test]
fn modular_polynomial_methods_agree() {
    let a = run(&["modpoly", "build", "-N", "2", "--full"]);
    let b = run(&["modpoly", "build", "-N", "2", "--method", "interpolation", "--full"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let e = run(&["modpoly", "eval", "-N", "2", "--x", "1728", "--y", "287496"]);
    assert!(stdout(&e).contains("= 0 (exact)"));
}
