use siltlab::scenario::{run_scenario, scenario_names};
use siltlab::Config;

fn check(name: &str) {
    let r = run_scenario(name, &Config::default()).unwrap();
    assert!(r.passed(), "{}", r.render());
    assert_eq!(r.exit_status, 0);
}

#[test]
fn bundled_names() {
    assert_eq!(
        scenario_names(),
        ["two-vertex", "five-vertex-case1", "five-vertex-case2", "a2", "a3", "kronecker-slice"]
    );
}

#[test]
fn two_vertex() {
    check("two-vertex");
}

#[test]
fn five_vertex_case1() {
    check("five-vertex-case1");
}

#[test]
fn five_vertex_case2() {
    check("five-vertex-case2");
}

#[test]
fn a2() {
    check("a2");
}

#[test]
fn a3() {
    check("a3");
}

#[test]
fn kronecker_slice() {
    check("kronecker-slice");
}

#[test]
fn other_seeds_agree() {
    let cfg = Config { seed: 7, ..Config::default() };
    for name in ["two-vertex", "five-vertex-case2"] {
        assert!(run_scenario(name, &cfg).unwrap().passed());
    }
}
