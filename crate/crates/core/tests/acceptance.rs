//! One line per acceptance criterion. Runs as a plain binary so the lines
//! appear in `cargo test` output; exits non-zero if an unexpected check fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use midk::exchange::check_ndep;
use midk::hypergraph::{kcover_ideal, WeightedHypergraph};
use midk::properties::{
    ndep_suites, oracle_suite, path_family_suite, sunflower_suite, three_edge_path_suites, three_edge_suite, SuiteOutcome,
};
use midk::suite::fixture_suite;
use midk::Monomial;

const SEED: u64 = 2024;
const COUNT: usize = 120;

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn suite_line(id: &'static str, outcomes: &[&SuiteOutcome], min: usize, limit: Option<Duration>, took: Duration) -> Line {
    let enough = outcomes.iter().all(|o| o.instances >= min);
    let clean = outcomes.iter().all(|o| o.passed());
    let in_time = limit.is_none_or(|l| took < l);
    let mut detail = outcomes.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("; ");
    detail.push_str(&format!(" ({:.1} s", took.as_secs_f64()));
    if let Some(l) = limit {
        detail.push_str(&format!(", limit {} s", l.as_secs()));
    }
    detail.push(')');
    for o in outcomes {
        if let Some(first) = o.failures.first() {
            detail.push_str(&format!("\n        first failure: {first}"));
        }
    }
    Line {
        id,
        pass: enough && clean && in_time,
        detail,
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// The smallest three-edge path with `J1 ∩ J3 = ∅` and `J2 ⊆ J1 ∪ J3` whose
/// ideal lacks NDEP: edges {1,2}, {2,3}, {3,4} with exponent 1.
fn three_edge_counterexample_reproduces() -> bool {
    let h = WeightedHypergraph::unweighted(4, &[&[0, 1], &[1, 2], &[2, 3]]).unwrap();
    let ideal = kcover_ideal(&h, 1).unwrap();
    let Some(w) = check_ndep(&ideal).unwrap().witness().cloned() else {
        return false;
    };
    ideal.to_string() == "(x1*x3, x2*x3, x2*x4)"
        && w.u == Monomial::parse("x1*x3", 4).unwrap()
        && w.v == Monomial::parse("x2*x4", 4).unwrap()
        && w.pivot.0 == 0
        && w.replays(&ideal)
}

fn main() -> ExitCode {
    let mut lines = Vec::new();
    // Lines that are red for a known mathematical reason, not a defect.
    let mut expected_red = Vec::new();

    let (report, took) = timed(fixture_suite);
    for (id, group) in [("1a", "1a"), ("1b", "1b"), ("1c", "1c"), ("1d", "1d"), ("1e", "1e"), ("1f", "1f"), ("1g", "1g")] {
        let rows: Vec<_> = report.group(group).collect();
        let failing: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
        lines.push(Line {
            id,
            pass: !rows.is_empty() && failing.is_empty() && took < Duration::from_secs(10),
            detail: format!(
                "{}/{} fixtures{}",
                rows.len() - failing.len(),
                rows.len(),
                if failing.is_empty() { String::new() } else { format!(", failing: {}", failing.join(", ")) }
            ),
        });
    }
    lines.push(Line {
        id: "1",
        pass: report.pass && took < Duration::from_secs(10),
        detail: format!("all fixtures in {:.2} s (limit 10 s)", took.as_secs_f64()),
    });

    let ((orders, maximal), took) = timed(|| ndep_suites(SEED, 100).expect("corpus builds"));
    lines.push(suite_line("2", &[&orders], 100, Some(Duration::from_secs(30)), took));
    lines.push(suite_line("3", &[&maximal], 100, None, took));

    let (sunflowers, took) = timed(|| sunflower_suite(SEED, COUNT));
    lines.push(suite_line("4", &[&sunflowers], 100, Some(Duration::from_secs(60)), took));

    let (three, took) = timed(|| three_edge_suite(SEED, COUNT));
    lines.push(suite_line("5", &[&three], 100, None, took));

    let (four_path, took4) = timed(|| path_family_suite(SEED, COUNT));
    let ((structure, exchange), took3) = timed(|| three_edge_path_suites(SEED, COUNT));
    lines.push(suite_line("6", &[&four_path, &structure], 100, None, took4 + took3));
    let mut red = suite_line("6-three-edge-ndep", &[&exchange], 100, None, took3);
    if !red.pass && three_edge_counterexample_reproduces() {
        red.detail.push_str(
            "\n        the three-edge statement is false as given: (x1*x3, x2*x3, x2*x4), the cover ideal of the \
             path x1-x2-x3-x4, fails at u = x1*x3, v = x2*x4, pivot x1 since x1*x4, x1*x2 ∉ I",
        );
        expected_red.push(red.id);
    }
    lines.push(red);

    let (oracles, took) = timed(|| oracle_suite(SEED, 100));
    lines.push(suite_line("7", &[&oracles], 100, None, took));

    for l in &lines {
        println!("{} {:<18} {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.detail);
    }
    let unexpected: Vec<&str> = lines.iter().filter(|l| !l.pass && !expected_red.contains(&l.id)).map(|l| l.id).collect();
    if unexpected.is_empty() {
        println!("acceptance: {} lines, {} red with a reproduced counterexample", lines.len(), expected_red.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures in {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
