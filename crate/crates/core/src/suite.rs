//! Regression fixtures: small ideals whose exchange-property verdicts,
//! witnesses, and Betti numbers are known exactly.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::exchange::{
    check_ndep, check_ndep_at, check_weakly_polymatroidal, check_weakly_polymatroidal_at,
    search_weakly_polymatroidal_order, Certificate, OrderSearch, VariableOrder,
};
use crate::hypergraph::{is_totally_balanced, kcover_ideal, three_edge_order, WeightedHypergraph};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::resolution::{betti_table, is_componentwise_linear, DEFAULT_PRIME};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub witness: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn from_rows(rows: Vec<SuiteRow>) -> Self {
        let pass = rows.iter().all(|r| r.pass);
        Self { rows, pass }
    }

    /// Rows whose name starts with `group`, e.g. `"1a"`.
    pub fn group(&self, group: &str) -> impl Iterator<Item = &SuiteRow> + '_ {
        let prefix = format!("{group} ");
        self.rows.iter().filter(move |r| r.name.starts_with(&prefix))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let mark = if r.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{mark}  {}", r.name)?;
            writeln!(f, "      expected: {}", r.expected)?;
            writeln!(f, "      computed: {}", r.computed)?;
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        write!(f, "{passed}/{} fixtures pass", self.rows.len())
    }
}

/// What a fixture produced: a rendering, a machine-readable witness, and
/// whether it matches the expectation.
struct Computed {
    text: String,
    witness: Value,
    pass: bool,
}

fn row(name: &str, expected: &str, run: impl FnOnce() -> Result<Computed>) -> SuiteRow {
    let (computed, witness, pass) = match run() {
        Ok(c) => (c.text, c.witness, c.pass),
        Err(e) => (format!("error: {e}"), Value::Null, false),
    };
    SuiteRow {
        name: name.to_string(),
        expected: expected.to_string(),
        computed,
        witness,
        pass,
    }
}

fn certificate(c: &Certificate, pass: bool) -> Computed {
    Computed {
        text: c.to_string(),
        witness: serde_json::to_value(c).unwrap_or(Value::Null),
        pass,
    }
}

fn mono(s: &str, n: usize) -> Result<Monomial> {
    Monomial::parse(s, n)
}

/// A violation whose rejected exchanges are exactly `tried`, in order, and
/// which replays against the ideal.
fn rejects_exactly(ideal: &MonomialIdeal, c: &Certificate, tried: &[&str]) -> Result<bool> {
    let Some(w) = c.witness() else { return Ok(false) };
    let expected = tried.iter().map(|t| mono(t, ideal.n())).collect::<Result<Vec<_>>>()?;
    let got: Vec<Monomial> = w.tried.iter().map(|r| r.monomial.clone()).collect();
    Ok(got == expected && w.replays(ideal))
}

fn cover_ideal(n: usize, edges: &[(&[usize], u32)]) -> Result<MonomialIdeal> {
    let h = WeightedHypergraph::new(n, edges.iter().map(|(e, w)| (e.to_vec(), *w)).collect())?;
    kcover_ideal(&h, 1)
}

/// One-based vertex lists, as they are usually written down.
fn edges1(edges: &[&[usize]]) -> Vec<Vec<usize>> {
    edges.iter().map(|e| e.iter().map(|v| v - 1).collect()).collect()
}

fn example_ideal() -> Result<MonomialIdeal> {
    MonomialIdeal::parse("x1^2, x1*x2^2, x1*x2*x3, x2^2*x3, x1*x3^3, x2*x3^3", 3)
}

fn three_edge_ideal(a: [u32; 3]) -> Result<MonomialIdeal> {
    cover_ideal(5, &[(&[0, 1], a[0]), (&[1, 2, 3], a[1]), (&[3, 4], a[2])])
}

/// `check_ndep_at` with 1-based pivot, requiring both monomials to be
/// minimal generators.
fn ndep_violation_row(
    name: &str,
    expected: &str,
    ideal: Result<MonomialIdeal>,
    (u, v, i): (&str, &str, usize),
    tried: &'static [&'static str],
) -> SuiteRow {
    row(name, expected, || {
        let ideal = ideal?;
        let (u, v) = (mono(u, ideal.n())?, mono(v, ideal.n())?);
        let c = check_ndep_at(&ideal, &u, &v, i - 1)?;
        let pass = rejects_exactly(&ideal, &c, tried)? && !check_ndep(&ideal)?.holds();
        Ok(certificate(&c, pass))
    })
}

/// Runs every fixture in a fixed order.
pub fn fixture_suite() -> SuiteReport {
    let mut rows = Vec::new();

    rows.push(row("1a six-generator ideal has NDEP", "holds", || {
        let c = check_ndep(&example_ideal()?)?;
        Ok(certificate(&c, c.holds()))
    }));
    rows.push(ndep_violation_row(
        "1a its square violates NDEP",
        "violated at u = x1^3*x3^3, v = x2^4*x3^2, pivot x3; only x2 tried, x2^3*x3^3 ∉ I",
        example_ideal().and_then(|i| i.power(2)),
        ("x1^3*x3^3", "x2^4*x3^2", 3),
        &["x2^3*x3^3"],
    ));

    rows.push(row("1b (x2*x3, x1^2*x3) has NDEP", "holds", || {
        let c = check_ndep(&MonomialIdeal::parse("x2*x3, x1^2*x3", 3)?)?;
        Ok(certificate(&c, c.holds()))
    }));
    rows.push(row(
        "1b (x2*x3, x1^2*x3) is not weakly polymatroidal under x1 > x2 > x3",
        "violated at u = x1^2*x3, v = x2*x3, pivot x1",
        || {
            let i = MonomialIdeal::parse("x2*x3, x1^2*x3", 3)?;
            let c = check_weakly_polymatroidal(&i, &VariableOrder::natural(3))?;
            let pass = c.witness().is_some_and(|w| {
                w.u.to_string() == "x1^2*x3" && w.v.to_string() == "x2*x3" && w.pivot.0 == 0 && w.replays(&i)
            });
            Ok(certificate(&c, pass))
        },
    ));

    rows.push(row(
        "1c cover ideal of {1,2}, {2,3,4}, {4,5} comes from a totally balanced hypergraph",
        "totally balanced",
        || {
            let h = WeightedHypergraph::new(5, edges1(&[&[1, 2], &[2, 3, 4], &[4, 5]]).into_iter().map(|e| (e, 1)).collect())?;
            let b = is_totally_balanced(&h)?;
            Ok(Computed {
                text: if b.totally_balanced { "totally balanced".into() } else { "special cycle found".into() },
                witness: serde_json::to_value(&b).unwrap_or(Value::Null),
                pass: b.totally_balanced,
            })
        },
    ));
    rows.push(ndep_violation_row(
        "1c cover ideal of {1,2}, {2,3,4}, {4,5} violates NDEP",
        "violated at u = x2*x5, v = x1*x4, pivot x5; x4*x5 and x1*x5 ∉ I",
        three_edge_ideal([1, 1, 1]),
        ("x2*x5", "x1*x4", 5),
        &["x4*x5", "x1*x5"],
    ));

    rows.push(row(
        "1d exponents (2,3,2) on {1,2}, {2,3,4}, {4,5} are not weakly polymatroidal under the block order",
        "block order x2 > x1 > x4 > x5 > x3; violated at u = x2^3*x5^2, v = x2^2*x4^2 with x2^3*x4 ∉ I",
        || {
            let i = three_edge_ideal([2, 3, 2])?;
            let order = three_edge_order(&[0, 1], &[1, 2, 3], &[3, 4], 5)?;
            let c = check_weakly_polymatroidal_at(&i, &order, &mono("x2^3*x5^2", 5)?, &mono("x2^2*x4^2", 5)?)?;
            let rejected = mono("x2^3*x4", 5)?;
            let pass = order.to_string() == "x2 > x1 > x4 > x5 > x3"
                && c.witness().is_some_and(|w| w.tried.iter().any(|r| r.monomial == rejected) && w.replays(&i))
                && !check_weakly_polymatroidal(&i, &order)?.holds();
            let mut out = certificate(&c, pass);
            out.text = format!("order {order}; {}", out.text);
            Ok(out)
        },
    ));

    rows.push(row(
        "1e squared cover ideal of {1,2,3}, {3,4,5}, {1,5,6} is weakly polymatroidal under no order",
        "all 720 orders rejected",
        || {
            let i = cover_ideal(6, &[(&[0, 1, 2], 2), (&[2, 3, 4], 2), (&[0, 4, 5], 2)])?;
            match search_weakly_polymatroidal_order(&i, 8)? {
                OrderSearch::Found { order } => Ok(Computed {
                    text: format!("found {order}"),
                    witness: json!({ "order": order }),
                    pass: false,
                }),
                OrderSearch::Exhausted { rejected } => {
                    let replay = rejected.iter().all(|r| r.witness.replays(&i));
                    Ok(Computed {
                        text: format!("all {} orders rejected", rejected.len()),
                        witness: json!({
                            "orders": rejected.len(),
                            "first": serde_json::to_value(&rejected[0]).unwrap_or(Value::Null),
                        }),
                        pass: rejected.len() == 720 && replay,
                    })
                }
            }
        },
    ));

    rows.push(ndep_violation_row(
        "1f four-edge path whose third edge leaves the neighbours' union violates NDEP",
        "violated at u = x1*x2*x3*x5^2, v = x2^2*x4^2*x6^2, pivot x1; j = 2, 4, 6 all rejected",
        cover_ideal(6, &[(&[0, 1], 2), (&[1, 2], 2), (&[2, 3, 4], 2), (&[4, 5], 2)]),
        ("x1*x2*x3*x5^2", "x2^2*x4^2*x6^2", 1),
        &["x1*x2*x4^2*x6^2", "x1*x2^2*x4*x6^2", "x1*x2^2*x4^2*x6"],
    ));
    rows.push(ndep_violation_row(
        "1f four-edge path with exponents (2,2,2,1) violates NDEP",
        "violated at u = x1*x2*x3*x4, v = x2^2*x4^2, pivot x1; x1*x2*x4^2 and x1*x2^2*x4 ∉ I",
        cover_ideal(5, &[(&[0, 1], 2), (&[1, 2], 2), (&[2, 3], 2), (&[3, 4], 1)]),
        ("x1*x2*x3*x4", "x2^2*x4^2", 1),
        &["x1*x2*x4^2", "x1*x2^2*x4"],
    ));
    rows.push(ndep_violation_row(
        "1f five-edge path violates NDEP",
        "violated at u = x1*x3*x5, v = x2*x4*x5, pivot x1; x1*x4*x5 and x1*x2*x5 ∉ I",
        cover_ideal(6, &[(&[0, 1], 1), (&[1, 2], 1), (&[2, 3], 1), (&[3, 4], 1), (&[4, 5], 1)]),
        ("x1*x3*x5", "x2*x4*x5", 1),
        &["x1*x4*x5", "x1*x2*x5"],
    ));

    let four_cycle = || cover_ideal(4, &[(&[0, 1], 1), (&[1, 2], 1), (&[2, 3], 1), (&[3, 0], 1)]);
    rows.push(row("1g 4-cycle cover ideal generators", "(x1*x3, x2*x4)", || {
        let i = four_cycle()?;
        Ok(Computed {
            text: i.to_string(),
            witness: serde_json::to_value(i.generators()).unwrap_or(Value::Null),
            pass: i.to_string() == "(x1*x3, x2*x4)",
        })
    }));
    rows.push(row("1g 4-cycle cover ideal Betti number β_{1,4}", "1", || {
        let t = betti_table(&four_cycle()?, DEFAULT_PRIME)?;
        Ok(Computed {
            text: t.get(1, 4).to_string(),
            witness: serde_json::to_value(&t).unwrap_or(Value::Null),
            pass: t.get(1, 4) == 1,
        })
    }));
    rows.push(row("1g 4-cycle cover ideal is not componentwise linear", "not componentwise linear", || {
        let r = is_componentwise_linear(&four_cycle()?)?;
        Ok(Computed {
            text: r.to_string(),
            witness: serde_json::to_value(&r).unwrap_or(Value::Null),
            pass: !r.componentwise_linear,
        })
    }));

    SuiteReport::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        let report = fixture_suite();
        for r in &report.rows {
            assert!(r.pass, "{}: computed {}", r.name, r.computed);
        }
        assert!(report.pass);
        assert_eq!(report.rows.len(), 14);
    }

    #[test]
    fn a_mismatched_row_fails_the_report() {
        let mut rows = fixture_suite().rows;
        rows[1] = row("1a tampered", "violated", || {
            let c = check_ndep(&example_ideal()?)?;
            Ok(certificate(&c, !c.holds()))
        });
        let report = SuiteReport::from_rows(rows);
        assert!(!report.pass);
        assert_eq!(report.rows.iter().filter(|r| !r.pass).count(), 1);
    }

    #[test]
    fn errors_become_failing_rows() {
        let r = row("x", "anything", || Err(crate::Error::ZeroIdeal));
        assert!(!r.pass);
        assert!(r.computed.starts_with("error:"));
    }

    #[test]
    fn report_is_deterministic_and_serializable() {
        let a = serde_json::to_string(&fixture_suite()).unwrap();
        let b = serde_json::to_string(&fixture_suite()).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["pass"], true);
        assert!(v["rows"][0]["name"].is_string());
    }

    #[test]
    fn groups_select_by_prefix() {
        let report = fixture_suite();
        assert_eq!(report.group("1f").count(), 3);
        assert_eq!(report.group("1g").count(), 3);
    }
}
