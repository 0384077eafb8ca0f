use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use midk::exchange::{
    check_ndep, check_ndep_at, check_polymatroidal, check_weakly_polymatroidal, ndep_violations, search_weakly_polymatroidal_order,
    OrderSearch,
};
use midk::hypergraph::{is_totally_balanced_with, kcover_ideal_with, minimal_kcovers_with, three_edge_order, WeightedHypergraph};
use midk::quotients::{is_admissible_order, ndep_admissible_order, search_linear_quotients};
use midk::resolution::{betti_table_with, is_componentwise_linear_with, DEFAULT_PRIME};
use midk::{properties, suite, Bounds, Certificate, Error, Monomial, MonomialIdeal, VariableOrder};

/// Monomial ideals: generators, exchange properties, linear quotients,
/// Betti tables, and ideals of k-covers.
///
/// Exit status is 0 when the property holds or output was produced, 1 when
/// the property fails (a witness is printed), and 2 on usage, input, or
/// bound errors. Search bounds are read from MIDK_BOUND_* variables.
#[derive(Parser)]
#[command(name = "midk", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute minimal generators of a derived ideal.
    #[command(subcommand)]
    Gens(Gens),
    /// Decide a property, printing a witness when it fails.
    #[command(subcommand)]
    Check(Check),
    /// Ideals of k-covers of a weighted hypergraph.
    #[command(subcommand)]
    Cover(Cover),
    /// Construct an order on generators or variables.
    #[command(subcommand)]
    Order(Order),
    /// Graded Betti table over GF(p).
    Betti {
        ideal: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
    },
    /// Run the regression fixtures, optionally with the randomized suites.
    PaperSuite {
        /// Also run the seeded randomized property suites.
        #[arg(long)]
        properties: bool,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Gens {
    Intersect { a: PathBuf, b: PathBuf },
    Multiply { a: PathBuf, b: PathBuf },
    Power {
        ideal: PathBuf,
        #[arg(long)]
        power: u32,
    },
    /// The Veronese ideal of all monomials of degree `power` in `vars`.
    Veronese {
        /// Comma-separated 1-based variable indices.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<usize>,
        #[arg(long)]
        power: u32,
        #[arg(long)]
        n: usize,
    },
    /// The ideal generated by the degree-d elements.
    Component {
        ideal: PathBuf,
        #[arg(long)]
        degree: u64,
    },
    /// `I : m` for a monomial written like `x1^2*x3`.
    Colon {
        ideal: PathBuf,
        #[arg(long)]
        by: String,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Non-pure dual exchange property.
    Ndep {
        ideal: PathBuf,
        /// List every violation instead of the first.
        #[arg(long, conflicts_with = "u")]
        all: bool,
        /// Check only the triple (u, v, pivot); u and v must be generators.
        #[arg(long, requires_all = ["v", "pivot"])]
        u: Option<String>,
        #[arg(long, requires_all = ["u", "pivot"])]
        v: Option<String>,
        /// 1-based variable index.
        #[arg(long, requires_all = ["u", "v"])]
        pivot: Option<usize>,
    },
    /// Symmetric exchange; the ideal must be equigenerated.
    Polymatroidal { ideal: PathBuf },
    /// Weak polymatroidality under one variable order.
    Weakly {
        ideal: PathBuf,
        /// Variables from largest to smallest, e.g. `2,1,4,5,3`.
        #[arg(long)]
        order: String,
    },
    /// Try every order of the support variables.
    WeaklySearch { ideal: PathBuf },
    /// Check a generator sequence, given as a JSON array of exponent vectors.
    Admissible {
        ideal: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
    },
    /// Search for an order with linear quotients.
    LinearQuotients { ideal: PathBuf },
    /// Linear resolution of every degree component up to the top generator degree.
    ComponentwiseLinear { ideal: PathBuf },
    /// Absence of special cycles of length four or more.
    TotallyBalanced { hypergraph: PathBuf },
}

#[derive(Subcommand)]
enum Cover {
    /// Intersection of Veronese powers, one per edge.
    Ideal(CoverArgs),
    /// Minimal k-covers by direct enumeration.
    Minimal(CoverArgs),
}

#[derive(Args)]
struct CoverArgs {
    hypergraph: PathBuf,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Subcommand)]
enum Order {
    /// Admissible order of an ideal with the non-pure dual exchange property.
    Ndep { ideal: PathBuf },
    /// Variable order for a hypergraph with exactly three edges.
    ThreeEdge { hypergraph: PathBuf },
}

/// A finished command: exit status plus both renderings.
struct Outcome {
    holds: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn produced(text: impl Into<String>, json: Value) -> Self {
        Self {
            holds: true,
            text: text.into(),
            json,
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))
}

fn ideal_outcome(i: &MonomialIdeal) -> Outcome {
    Outcome::produced(i.to_string(), serde_json::to_value(i).expect("ideals serialize"))
}

fn certificate_outcome(c: Certificate) -> Outcome {
    Outcome {
        holds: c.holds(),
        text: c.to_string(),
        json: serde_json::to_value(&c).expect("certificates serialize"),
    }
}

fn run(cli: Cli, bounds: &Bounds) -> anyhow::Result<Outcome> {
    Ok(match cli.command {
        Command::Gens(g) => gens(g, bounds)?,
        Command::Check(c) => check(c, bounds)?,
        Command::Cover(c) => cover(c, bounds)?,
        Command::Order(o) => order(o)?,
        Command::Betti { ideal, prime } => {
            let t = betti_table_with(&read_json(&ideal)?, prime, bounds)?;
            Outcome::produced(t.render(), serde_json::to_value(&t)?)
        }
        Command::PaperSuite { properties, seed } => run_fixtures(properties, seed)?,
    })
}

fn gens(g: Gens, bounds: &Bounds) -> anyhow::Result<Outcome> {
    let i = match g {
        Gens::Intersect { a, b } => read_json::<MonomialIdeal>(&a)?.intersect_capped(&read_json(&b)?, bounds.product)?,
        Gens::Multiply { a, b } => read_json::<MonomialIdeal>(&a)?.multiply_capped(&read_json(&b)?, bounds.product)?,
        Gens::Power { ideal, power } => read_json::<MonomialIdeal>(&ideal)?.power_capped(power, bounds.product)?,
        Gens::Veronese { vars, power, n } => {
            if vars.contains(&0) {
                bail!("--vars are 1-based");
            }
            let vars: Vec<usize> = vars.iter().map(|v| v - 1).collect();
            MonomialIdeal::veronese(&vars, power, n)?
        }
        Gens::Component { ideal, degree } => {
            read_json::<MonomialIdeal>(&ideal)?.component_with_window(degree, bounds.component_window)?
        }
        Gens::Colon { ideal, by } => {
            let i: MonomialIdeal = read_json(&ideal)?;
            i.colon(&Monomial::parse(&by, i.n())?)?
        }
    };
    Ok(ideal_outcome(&i))
}

fn check(c: Check, bounds: &Bounds) -> anyhow::Result<Outcome> {
    Ok(match c {
        Check::Ndep {
            ideal,
            u: Some(u),
            v: Some(v),
            pivot: Some(pivot),
            ..
        } => {
            let i: MonomialIdeal = read_json(&ideal)?;
            if pivot == 0 {
                bail!("--pivot is 1-based");
            }
            let (u, v) = (Monomial::parse(&u, i.n())?, Monomial::parse(&v, i.n())?);
            certificate_outcome(check_ndep_at(&i, &u, &v, pivot - 1)?)
        }
        Check::Ndep { ideal, all: false, .. } => certificate_outcome(check_ndep(&read_json(&ideal)?)?),
        Check::Ndep { ideal, all: true, .. } => {
            let all = ndep_violations(&read_json(&ideal)?)?;
            let text = if all.is_empty() {
                "holds".to_string()
            } else {
                all.iter().map(|w| format!("violated: {w}")).collect::<Vec<_>>().join("\n")
            };
            Outcome {
                holds: all.is_empty(),
                text,
                json: json!({ "violations": all }),
            }
        }
        Check::Polymatroidal { ideal } => certificate_outcome(check_polymatroidal(&read_json(&ideal)?)?),
        Check::Weakly { ideal, order } => {
            let i: MonomialIdeal = read_json(&ideal)?;
            let order = VariableOrder::parse(&order, i.n())?;
            certificate_outcome(check_weakly_polymatroidal(&i, &order)?)
        }
        Check::WeaklySearch { ideal } => {
            let result = search_weakly_polymatroidal_order(&read_json(&ideal)?, bounds.weakly_search)?;
            let json = serde_json::to_value(&result)?;
            match result {
                OrderSearch::Found { order } => Outcome::produced(format!("weakly polymatroidal under {order}"), json),
                OrderSearch::Exhausted { rejected } => {
                    let mut text = format!("no order works; {} orders rejected", rejected.len());
                    if let Some(first) = rejected.first() {
                        text.push_str(&format!("\nfirst: {} fails at {}", first.order, first.witness));
                    }
                    Outcome {
                        holds: false,
                        text,
                        json,
                    }
                }
            }
        }
        Check::Admissible { ideal, sequence } => {
            let i: MonomialIdeal = read_json(&ideal)?;
            let seq: Vec<Monomial> = read_json(&sequence)?;
            let verdict = is_admissible_order(&i, &seq)?;
            Outcome {
                holds: verdict.holds(),
                text: verdict.to_string(),
                json: serde_json::to_value(&verdict)?,
            }
        }
        Check::LinearQuotients { ideal } => match search_linear_quotients(&read_json(&ideal)?, bounds.lq_search)? {
            Some(order) => Outcome::produced(format!("linear quotients: {order}"), json!({ "order": order })),
            None => Outcome {
                holds: false,
                text: "no order of the generators has linear quotients".into(),
                json: json!({ "order": null }),
            },
        },
        Check::ComponentwiseLinear { ideal } => {
            let r = is_componentwise_linear_with(&read_json(&ideal)?, bounds)?;
            Outcome {
                holds: r.componentwise_linear,
                text: r.to_string(),
                json: serde_json::to_value(&r)?,
            }
        }
        Check::TotallyBalanced { hypergraph } => {
            let b = is_totally_balanced_with(&read_json(&hypergraph)?, bounds)?;
            let text = match &b.special_cycle {
                None => "totally balanced".to_string(),
                Some(c) => format!("special cycle of length {}: {c}", c.len()),
            };
            Outcome {
                holds: b.totally_balanced,
                text,
                json: serde_json::to_value(&b)?,
            }
        }
    })
}

fn cover(c: Cover, bounds: &Bounds) -> anyhow::Result<Outcome> {
    Ok(match c {
        Cover::Ideal(a) => ideal_outcome(&kcover_ideal_with(&read_json(&a.hypergraph)?, a.k, bounds)?),
        Cover::Minimal(a) => {
            let covers = minimal_kcovers_with(&read_json(&a.hypergraph)?, a.k, bounds)?;
            let text = covers
                .iter()
                .map(|c| format!("{:?}", c.0))
                .collect::<Vec<_>>()
                .join("\n");
            Outcome::produced(text, serde_json::to_value(&covers)?)
        }
    })
}

fn order(o: Order) -> anyhow::Result<Outcome> {
    Ok(match o {
        Order::Ndep { ideal } => match ndep_admissible_order(&read_json(&ideal)?) {
            Ok(order) => Outcome::produced(order.to_string(), serde_json::to_value(&order)?),
            Err(Error::NotNdep { witness }) => Outcome {
                holds: false,
                text: format!("not NDEP: splitting fails at {witness}"),
                json: json!({ "not_ndep": witness }),
            },
            Err(e) => return Err(e.into()),
        },
        Order::ThreeEdge { hypergraph } => {
            let h: WeightedHypergraph = read_json(&hypergraph)?;
            let [j1, j2, j3] = h.edges() else {
                bail!("{}: expected exactly three edges, found {}", hypergraph.display(), h.edges().len());
            };
            let order = three_edge_order(j1.vertices(), j2.vertices(), j3.vertices(), h.n())?;
            Outcome::produced(order.to_string(), serde_json::to_value(&order)?)
        }
    })
}

fn run_fixtures(with_properties: bool, seed: u64) -> anyhow::Result<Outcome> {
    let report = suite::fixture_suite();
    let mut holds = report.pass;
    let mut text = report.to_string();
    let mut json = json!({ "fixtures": report });
    if with_properties {
        let outcomes = properties::run_all(seed)?;
        holds &= outcomes.iter().all(|o| o.passed());
        text.push_str(&format!("\n\nrandomized suites (seed {seed}):"));
        for o in &outcomes {
            let mark = if o.passed() { "PASS" } else { "FAIL" };
            text.push_str(&format!("\n{mark}  {o}"));
            for f in &o.failures {
                text.push_str(&format!("\n      {f}"));
            }
        }
        json["seed"] = json!(seed);
        json["properties"] = serde_json::to_value(&outcomes)?;
    }
    json["pass"] = json!(holds);
    Ok(Outcome { holds, text, json })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    let outcome = Bounds::from_env()
        .map_err(anyhow::Error::from)
        .and_then(|bounds| run(cli, &bounds));
    match outcome {
        Ok(o) => {
            let body = if as_json {
                serde_json::to_string_pretty(&o.json).expect("values serialize")
            } else {
                o.text.trim_end().to_owned()
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(io::stdout().lock(), "{body}");
            if o.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
