use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpfgroups")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn build(dir: &Path, name: &str, param: &str) {
    let o = run(&["fixtures", "build", name, "--p", param, "-o", p(dir)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn fixtures_build_and_info() {
    let t = tempfile::tempdir().unwrap();
    let dir = t.path().join("h3");
    build(&dir, "heisenberg_d8", "3");
    for f in ["group.json", "action.json", "expectations.json"] {
        assert!(dir.join(f).is_file(), "{f}");
    }
    let o = run(&["info", p(&dir.join("group.json")), "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for line in ["order = 27", "exponent = 3", "class = 2", "powerful = false", "layers = (2,1)"] {
        assert!(s.contains(line), "{line} missing from\n{s}");
    }
}

#[test]
fn info_on_small_tables() {
    let t = tempfile::tempdir().unwrap();
    let trivial = t.path().join("trivial.json");
    fs::write(&trivial, r#"{"order": 1, "table": [[0]]}"#).unwrap();
    let o = run(&["info", p(&trivial), "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("order = 1"));

    let c9 = t.path().join("c9.json");
    let table: Vec<Vec<usize>> = (0..9).map(|i| (0..9).map(|j| (i + j) % 9).collect()).collect();
    fs::write(&c9, serde_json::json!({"order": 9, "table": table}).to_string()).unwrap();
    let o = run(&["info", p(&c9), "--prime", "3", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("layers = (1,0,1)"), "{s}");
    assert!(s.contains("powerful = true"), "{s}");
}

#[test]
fn bad_input_exits_2() {
    let t = tempfile::tempdir().unwrap();
    let bad = t.path().join("bad.json");
    // row 1 repeats an entry
    fs::write(&bad, r#"{"order": 2, "table": [[0, 1], [1, 1]]}"#).unwrap();
    assert_eq!(run(&["info", p(&bad)]).status.code(), Some(2));
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["info", p(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["info", p(&t.path().join("missing.json"))]).status.code(), Some(2));
    assert_eq!(run(&["verify", "all", "--select", "no_such_family"]).status.code(), Some(2));
}

#[test]
fn empty_selection_passes() {
    let o = run(&["verify", "all", "--select", ""]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn jennings_emit_then_criterion() {
    let t = tempfile::tempdir().unwrap();
    let dir = t.path().join("h5");
    build(&dir, "heisenberg_d8", "5");
    let lie = t.path().join("lie.json");
    let o = run(&[
        "jennings",
        p(&dir.join("group.json")),
        "--action",
        p(&dir.join("action.json")),
        "--emit-lie",
        p(&lie),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(lie.is_file());
    let o = run(&["criterion", p(&lie), "--format", "structured", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v.get("timing").is_none() || v["timing"].is_null());
}

#[test]
fn exponent_report_csv() {
    let o = run(&["report", "exponents", "affine_v", "--params", "5,11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut rows = csv::Reader::from_reader(s.as_bytes());
    let header = rows.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let recs: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    assert_eq!(recs.len(), 2);
    assert_eq!(&recs[0][col("exp_G")], "15");
    assert_eq!(&recs[1][col("exp_G")], "33");
    assert_eq!(&recs[1][col("q2_e_lcm")], "33");
}

#[test]
fn identity_action_fails_verification() {
    let t = tempfile::tempdir().unwrap();
    let dir = t.path().join("h3");
    build(&dir, "heisenberg_d8", "3");
    let id: Vec<usize> = (0..27).collect();
    let action = t.path().join("id.json");
    fs::write(&action, serde_json::json!({"acting_type": "V", "v1": id, "v2": id}).to_string()).unwrap();
    let o = run(&["action", "verify", p(&dir.join("group.json")), p(&action)]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn star_on_a_fixture() {
    let t = tempfile::tempdir().unwrap();
    let dir = t.path().join("c5");
    build(&dir, "cube_s4", "5");
    let (g, a) = (dir.join("group.json"), dir.join("action.json"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&a).unwrap()).unwrap();
    let map = |k: &str| -> Vec<usize> { serde_json::from_value(v[k].clone()).unwrap() };
    let (v1, v2) = (map("v1"), map("v2"));
    // nontrivial elements of C_G(v1) and C_G(v2)
    let x = (1..v1.len()).find(|&x| v1[x] == x).unwrap();
    let y = (1..v2.len()).find(|&y| v2[y] == y).unwrap();
    let o = run(&["star", p(&g), p(&a), &x.to_string(), &y.to_string(), "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("memo_matches_scan"));
}
