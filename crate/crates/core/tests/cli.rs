use std::path::PathBuf;
use std::process::{Command, Output};

fn scenarios() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn siltlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siltlab")).args(args).current_dir(scenarios()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_algebra() {
    let o = siltlab(&["check-algebra", "two_vertex.alg"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dimension: 6") && s.contains("hereditary: false"), "{s}");
}

#[test]
fn thm2_dimensions() {
    let o = siltlab(&["epi", "thm2", "two_vertex.alg", "--strategy", "nakayama", "--partial", "S1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dims: 13/9/4") && s.contains("I²=I: true"), "{s}");
}

#[test]
fn json_output_parses() {
    let o = siltlab(&["--json", "epi", "build", "five_vertex.alg", "--name", "M2=0,0,1,1,0", "--partial", "M2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim_b"], 11);
    assert_eq!(v["perpendicular"].as_array().unwrap().len(), 8);
}

#[test]
fn scenario_reports_round_trip() {
    let o = siltlab(&["scenario", "run", "all", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<siltlab::scenario::ScenarioReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 6);
    assert!(reports.iter().all(|r| r.exit_status == 0));
    let raw: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(serde_json::to_value(&reports).unwrap(), raw);
}

#[test]
fn output_is_idempotent() {
    let args = ["hereditary", "lattice", "a3.alg", "--strategy", "knitting"];
    let (a, b) = (siltlab(&args), siltlab(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(siltlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(siltlab(&["check-algebra", "missing.alg"]).status.code(), Some(2));
    assert_eq!(siltlab(&["scenario", "run", "nope"]).status.code(), Some(2));
    // Heredity is a verdict, not a usage error.
    assert_eq!(siltlab(&["hereditary", "triangle", "two_vertex.alg"]).status.code(), Some(1));
    // S1 over the dual numbers is not partial silting.
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let dual = dir.join("dual.alg");
    std::fs::write(&dual, "vertices 1\narrow x 1 1\nrelation x*x\n").unwrap();
    let o = siltlab(&["silting", "check", dual.to_str().unwrap(), "--strategy", "nakayama", "--module", "S1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn dot_and_module_files() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let dot = dir.join("a2.dot");
    let o = siltlab(&["hereditary", "lattice", "a2.alg", "--strategy", "knitting", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches(" -> ").count(), 6);
    let m = dir.join("s1.mod");
    std::fs::write(&m, "module S1\ndims 1 0\n").unwrap();
    let o = siltlab(&["epi", "build", "a2.alg", "--strategy", "knitting", "--partial-file", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim B: 4"));
    let table = dir.join("b.tbl");
    let o = siltlab(&["epi", "build", "two_vertex.alg", "--partial", "S1", "--dump-algebra", table.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let b = siltlab::algebra::AlgTable::from_text(&std::fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(b.dim(), 4);
    assert!(b.is_associative() && b.is_unit());
}
