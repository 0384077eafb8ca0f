use std::path::PathBuf;
use std::process::{Command, Output};

use midk::{Monomial, MonomialIdeal};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn midk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_midk"))
        .args(args)
        .env_remove("MIDK_BOUND_WEAKLY_SEARCH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

fn load(name: &str) -> MonomialIdeal {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn monomial(v: &Value) -> Monomial {
    Monomial::new(v.as_array().unwrap().iter().map(|e| e.as_u64().unwrap() as u32).collect())
}

/// Replays a JSON witness against `ideal` using only `contains`.
fn replay(ideal: &MonomialIdeal, w: &Value) {
    for key in ["u", "v"] {
        let m = monomial(&w[key]);
        assert!(ideal.contains(&m).unwrap(), "{key} = {m} not in I");
        assert!(ideal.generators().contains(&m), "{key} = {m} not a generator");
    }
    for t in w["tried"].as_array().unwrap() {
        let m = monomial(&t["monomial"]);
        assert!(!ideal.contains(&m).unwrap(), "tried {m} is in I");
    }
}

#[test]
fn ndep_holds_on_example() {
    let o = midk(&["check", "ndep", &fixture("six_generators.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "holds");
}

#[test]
fn ndep_fails_on_square_with_replayable_witness() {
    let path = fixture("six_generators_squared.json");
    let o = midk(&["--json", "check", "ndep", &path]);
    assert_eq!(o.status.code(), Some(1));
    let w = json(&o);
    assert_eq!(w["verdict"], "violated");
    assert_eq!(w["u"], serde_json::json!([3, 0, 3]));
    replay(&load("six_generators_squared.json"), &w);
}

#[test]
fn targeted_ndep_reports_the_stated_pair() {
    let path = fixture("six_generators_squared.json");
    let o = midk(&["check", "ndep", &path, "--u", "x1^3*x3^3", "--v", "x2^4*x3^2", "--pivot", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o).trim(),
        "violated: u = x1^3*x3^3, v = x2^4*x3^2, pivot x3, rejected: x2 via x2^3*x3^3 ∉ I;"
    );

    let all = midk(&["--json", "check", "ndep", "--all", &path]);
    assert_eq!(all.status.code(), Some(1));
    let all = json(&all);
    let listed = all["violations"].as_array().unwrap();
    assert!(listed.iter().any(|w| w["v"] == serde_json::json!([0, 4, 2]) && w["pivot"] == 3));
    let ideal = load("six_generators_squared.json");
    listed.iter().for_each(|w| replay(&ideal, w));
}

#[test]
fn veronese_has_three_generators() {
    let o = midk(&["gens", "veronese", "--vars", "1,2", "--power", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(x1^2, x1*x2, x2^2)");
    let j = json(&midk(&["--json", "gens", "veronese", "--vars", "1,2", "--power", "2", "--n", "2"]));
    assert_eq!(j["n"], 2);
    assert_eq!(j["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn generator_operations() {
    let o = midk(&["gens", "intersect", &fixture("x1_x2.json"), &fixture("x2_x3_x4.json")]);
    assert_eq!(stdout(&o).trim(), "(x2, x1*x3, x1*x4)");
    let o = midk(&["gens", "colon", &fixture("six_generators.json"), "--by", "x1"]);
    assert_eq!(stdout(&o).trim(), "(x1, x2^2, x2*x3, x3^3)");
    let o = midk(&["gens", "component", &fixture("six_generators.json"), "--degree", "3"]);
    assert_eq!(stdout(&o).trim(), "(x1^3, x1^2*x2, x1^2*x3, x1*x2^2, x1*x2*x3, x2^2*x3)");
    let squared = midk(&["gens", "power", &fixture("six_generators.json"), "--power", "2"]);
    let multiplied = midk(&["gens", "multiply", &fixture("six_generators.json"), &fixture("six_generators.json")]);
    assert_eq!(squared.stdout, multiplied.stdout);
    assert_eq!(squared.status.code(), Some(0));
}

#[test]
fn weakly_polymatroidal_checks() {
    let o = midk(&["--json", "check", "weakly", &fixture("two_generators.json"), "--order", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    replay(&load("two_generators.json"), &json(&o));

    let o = midk(&["check", "weakly", &fixture("two_generators.json"), "--order", "3,2,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let ideal_path = fixture("triple_triangle_squared_ideal.json");
    let o = midk(&["--json", "check", "weakly-search", &ideal_path]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    let rejected = j["rejected"].as_array().unwrap();
    assert_eq!(rejected.len(), 720);
    let ideal = load("triple_triangle_squared_ideal.json");
    rejected.iter().for_each(|r| replay(&ideal, &r["witness"]));
}

#[test]
fn hypergraph_commands() {
    let o = midk(&["cover", "ideal", &fixture("three_edges.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(x1*x4, x2*x4, x2*x5, x1*x3*x5)");

    let o = midk(&["--json", "cover", "minimal", &fixture("four_cycle.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), serde_json::json!([[1, 0, 1, 0], [0, 1, 0, 1]]));

    let o = midk(&["order", "three-edge", &fixture("three_edges_232.json")]);
    assert_eq!(stdout(&o).trim(), "x2 > x1 > x4 > x5 > x3");

    let o = midk(&["--json", "check", "totally-balanced", &fixture("four_cycle.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["special_cycle"]["vertices"].as_array().unwrap().len(), 4);

    let o = midk(&["check", "totally-balanced", &fixture("three_edges.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn quotient_and_resolution_commands() {
    let o = midk(&["order", "ndep", &fixture("six_generators.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = midk(&["check", "linear-quotients", &fixture("six_generators.json")]);
    assert_eq!(o.status.code(), Some(0));

    let o = midk(&[
        "check",
        "admissible",
        &fixture("four_cycle_cover.json"),
        "--sequence",
        &fixture("sequence_bad.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "violated at position 2 (x2*x4): colon has generator x1*x3");

    let o = midk(&["--json", "betti", &fixture("four_cycle_cover.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = midk(&["check", "componentwise-linear", &fixture("four_cycle_cover.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fixture_suite_passes_and_is_deterministic() {
    let a = midk(&["paper-suite"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(stdout(&a).contains("14/14 fixtures pass"));
    let b = midk(&["paper-suite"]);
    assert_eq!(a.stdout, b.stdout);

    let j = json(&midk(&["--json", "paper-suite"]));
    assert_eq!(j["pass"], true);
    for row in j["fixtures"]["rows"].as_array().unwrap() {
        for key in ["name", "expected", "computed", "witness", "pass"] {
            assert!(row.get(key).is_some(), "row lacks {key}");
        }
    }
}

#[test]
fn witness_output_is_byte_identical_across_runs() {
    let args = ["--json", "check", "ndep", "--all"];
    let path = fixture("six_generators_squared.json");
    let runs: Vec<Vec<u8>> = (0..3)
        .map(|_| {
            let mut a = args.to_vec();
            a.push(&path);
            midk(&a).stdout
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(midk(&["check"]).status.code(), Some(2));
    assert_eq!(midk(&["frobnicate"]).status.code(), Some(2));

    let o = midk(&["check", "ndep", "/nonexistent/ideal.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("reading /nonexistent/ideal.json"));

    // A hypergraph file where an ideal is expected names the missing field.
    let o = midk(&["check", "ndep", &fixture("four_cycle.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("generators"), "{}", stderr(&o));

    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("ragged_ideal.json");
    std::fs::write(&bad, r#"{"n": 3, "generators": [[1, 0, 0], [0, 1]]}"#).unwrap();
    let o = midk(&["check", "ndep", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mismatch"), "{}", stderr(&o));

    let o = midk(&["check", "weakly", &fixture("two_generators.json"), "--order", "1,1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("repeated"));
}

#[test]
fn bound_override_from_environment_exits_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_midk"))
        .args(["check", "weakly-search", &fixture("triple_triangle_squared_ideal.json")])
        .env("MIDK_BOUND_WEAKLY_SEARCH", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("support size exceeds desk-scale bound: 6 > 3"));

    let o = Command::new(env!("CARGO_BIN_EXE_midk"))
        .args(["check", "ndep", &fixture("six_generators.json")])
        .env("MIDK_BOUND_PRODUCT", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("MIDK_BOUND_PRODUCT"), "{}", stderr(&o));
}
