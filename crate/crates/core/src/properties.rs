//! Seeded randomized suites for the structural results on exchange
//! properties and ideals of k-covers, plus cross-checks between
//! independent computations.
//!
//! Every suite draws its instances from a ChaCha8 stream derived from the
//! caller's seed, so a failing instance can be replayed exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::exchange::{check_ndep, check_weakly_polymatroidal};
use crate::hypergraph::{
    factor_degrees, is_totally_balanced_with, kcover_ideal_with, minimal_kcovers_with, three_edge_order,
    three_edge_partition, validate_path_family, validate_sunflower, WeightedHypergraph,
};
use crate::ideal::MonomialIdeal;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::quotients::{is_admissible_order, ndep_admissible_order, search_linear_quotients};
use crate::resolution::{
    betti_cross_check, is_componentwise_linear_with, taylor_euler_characteristic, CROSS_CHECK_PRIME, DEFAULT_PRIME,
};

/// Failures beyond this many are counted but not stored.
const KEPT_FAILURES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub instances: usize,
    pub failed: usize,
    /// The first few failures, each naming its instance.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            instances: 0,
            failed: 0,
            failures: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, outcome: std::result::Result<(), String>) {
        self.instances += 1;
        if let Err(msg) = outcome {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(msg);
            }
        }
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} passed", self.name, self.instances - self.failed, self.instances)
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Lifts library errors into failure messages tagged with the instance.
fn fail<T>(r: Result<T>, what: &dyn fmt::Display) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Monomial {
    let d = rng.gen_range(1..=max_degree);
    let mut exps = vec![0u32; n];
    for _ in 0..d {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(exps)
}

/// `n ≤ max_n`, at most `max_gens` generators of degree `1..=max_degree`.
pub fn random_ideal(rng: &mut ChaCha8Rng, max_n: usize, max_gens: usize, max_degree: u32) -> MonomialIdeal {
    let n = rng.gen_range(1..=max_n);
    let count = rng.gen_range(1..=max_gens);
    let gens: Vec<Monomial> = (0..count).map(|_| random_monomial(rng, n, max_degree)).collect();
    MonomialIdeal::minimalize(gens, n).expect("generators share the ambient ring")
}

/// Splits `sizes.iter().sum()` shuffled vertices of `[n]` into consecutive
/// blocks of the given sizes.
fn random_blocks(rng: &mut ChaCha8Rng, sizes: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(rng);
    let mut out = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for &s in sizes {
        let mut block = vertices[at..at + s].to_vec();
        block.sort_unstable();
        out.push(block);
        at += s;
    }
    out
}

fn union(blocks: &[&Vec<usize>]) -> Vec<usize> {
    let set: BTreeSet<usize> = blocks.iter().flat_map(|b| b.iter().copied()).collect();
    set.into_iter().collect()
}

fn weighted(n: usize, edges: &[(Vec<usize>, u32)]) -> Result<WeightedHypergraph> {
    WeightedHypergraph::new(n, edges.to_vec())
}

/// Ideals with the non-pure dual exchange property: structured families
/// followed by random ideals that pass [`check_ndep`].
pub fn ndep_corpus(seed: u64, random_target: usize) -> Result<Vec<MonomialIdeal>> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for a in 1..=3 {
            out.push(MonomialIdeal::veronese(&(0..n).collect::<Vec<_>>(), a, n)?);
        }
    }
    out.push(MonomialIdeal::parse(
        "x1^2, x1*x2^2, x1*x2*x3, x2^2*x3, x1*x3^3, x2*x3^3",
        3,
    )?);
    out.push(MonomialIdeal::parse("x2*x3, x1^2*x3", 3)?);
    out.push(MonomialIdeal::parse("x1^2, x1*x2", 2)?);
    out.push(MonomialIdeal::principal(Monomial::parse("x1^2*x2", 3)?));
    let two_edge = [
        (vec![0, 1], vec![1, 2], 4usize),
        (vec![0, 1, 2], vec![2, 3], 4),
        (vec![0], vec![1, 2], 3),
    ];
    for (j1, j2, n) in two_edge {
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 3)] {
            out.push(kcover_ideal_with(&weighted(n, &[(j1.clone(), a), (j2.clone(), b)])?, 1, &Bounds::default())?);
        }
    }
    let mut rng = rng_for(seed, 0);
    let mut found = 0;
    let mut attempts = 0;
    while found < random_target {
        attempts += 1;
        if attempts > 200 * random_target.max(1) {
            return Err(Error::Hypothesis(format!(
                "only {found} random NDEP ideals in {attempts} draws"
            )));
        }
        let i = random_ideal(&mut rng, 4, 6, 4);
        if check_ndep(&i)?.holds() {
            out.push(i);
            found += 1;
        }
    }
    out.retain(|i| check_ndep(i).map(|c| c.holds()).unwrap_or(false));
    Ok(out)
}

/// Admissible orders from the split recursion, and NDEP of `𝔪I`.
pub fn ndep_suites(seed: u64, random_target: usize) -> Result<(SuiteOutcome, SuiteOutcome)> {
    let start = Instant::now();
    let corpus = ndep_corpus(seed, random_target)?;
    let mut orders = SuiteOutcome::new("NDEP ideals have linear quotients");
    let mut maximal = SuiteOutcome::new("NDEP survives multiplication by the maximal ideal");
    for i in &corpus {
        orders.record((|| {
            let order = fail(ndep_admissible_order(i), i)?;
            match fail(is_admissible_order(i, order.as_slice()), i)? {
                a if a.holds() => Ok(()),
                a => Err(format!("{i}: order {order} {a}")),
            }
        })());
    }
    orders.elapsed_ms = start.elapsed().as_millis();
    let start = Instant::now();
    for i in &corpus {
        maximal.record((|| {
            let mi = fail(MonomialIdeal::maximal_ideal(i.n()).multiply(i), i)?;
            match fail(check_ndep(&mi), i)? {
                c if c.holds() => Ok(()),
                c => Err(format!("m*{i}: {}", c.witness().expect("violated"))),
            }
        })());
    }
    maximal.elapsed_ms = start.elapsed().as_millis();
    Ok((orders, maximal))
}

#[derive(Debug, Clone)]
struct Sunflower {
    n: usize,
    edges: Vec<Vec<usize>>,
    k: Vec<usize>,
    a: Vec<u32>,
    b: u32,
}

impl fmt::Display for Sunflower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shift = |vs: &[usize]| vs.iter().map(|v| v + 1).collect::<Vec<_>>();
        let edges: Vec<Vec<usize>> = self.edges.iter().map(|e| shift(e)).collect();
        write!(f, "sunflower n={} edges={:?} a={:?} K={:?} b={}", self.n, edges, self.a, shift(&self.k), self.b)
    }
}

/// `s ≤ 4`, block sizes `≤ 3`, `1 ≤ a_1 ≤ … ≤ a_s ≤ 3`, `b ≤ 2`, distinct
/// edges, at most twelve vertices.
fn random_sunflower(rng: &mut ChaCha8Rng) -> Sunflower {
    loop {
        let s = rng.gen_range(1..=4);
        let b_size = rng.gen_range(0..=3);
        let a_sizes: Vec<usize> = (0..s).map(|_| rng.gen_range(0..=3)).collect();
        let k_size = rng.gen_range(0..=2);
        let extra = rng.gen_range(0..=1);
        let empty_petals = a_sizes.iter().filter(|&&x| x == 0).count();
        if empty_petals > 1 || (b_size == 0 && empty_petals > 0) {
            continue;
        }
        let n = b_size + a_sizes.iter().sum::<usize>() + k_size + extra;
        if n > 12 {
            continue;
        }
        let mut sizes = vec![b_size, k_size];
        sizes.extend(&a_sizes);
        let blocks = random_blocks(rng, &sizes, n);
        let edges = blocks[2..].iter().map(|p| union(&[&blocks[0], p])).collect();
        let mut a: Vec<u32> = (0..s).map(|_| rng.gen_range(1..=3)).collect();
        a.sort_unstable();
        let b = if k_size == 0 { 0 } else { rng.gen_range(1..=2) };
        return Sunflower {
            n,
            edges,
            k: blocks[1].clone(),
            a,
            b,
        };
    }
}

fn sunflower_hypergraph(s: &Sunflower) -> Result<WeightedHypergraph> {
    let mut edges: Vec<(Vec<usize>, u32)> = s.edges.iter().cloned().zip(s.a.iter().copied()).collect();
    if s.b > 0 {
        edges.push((s.k.clone(), s.b));
    }
    weighted(s.n, &edges)
}

fn check_sunflower(s: &Sunflower, bounds: &Bounds) -> std::result::Result<(), String> {
    let part = fail(validate_sunflower(&s.edges, &s.k, s.n), s)?;
    let h = fail(sunflower_hypergraph(s), s)?;
    if !fail(is_totally_balanced_with(&h, bounds), s)?.totally_balanced {
        return Err(format!("{s}: not totally balanced"));
    }
    let ideal = fail(kcover_ideal_with(&h, 1, bounds), s)?;
    if let Some(w) = fail(check_ndep(&ideal), s)?.witness() {
        return Err(format!("{s}: NDEP fails, {w}"));
    }
    let st = s.a.len();
    let a_s = u64::from(s.a[st - 1]);
    let b = u64::from(s.b);
    let a_sum: u64 = s.a.iter().map(|&x| u64::from(x)).sum();
    for g in ideal.generators() {
        let d = fail(factor_degrees(&part, g), s)?;
        let petals: Vec<u64> = (1..=st).map(|t| d.get(&format!("A{t}"))).collect();
        let (core, kd) = (d.get("B"), d.get("K"));
        let bad = |what: &str| Err(format!("{s}: generator {g} ({d}) breaks {what}"));
        if d.rest != 0 {
            return bad("support inside the edges");
        }
        for t in 0..st {
            let at = u64::from(s.a[t]);
            if core + petals[t] < at {
                return bad("the petal inequality");
            }
            if (petals[t] != 0) != (core < at) {
                return bad("petal support iff core below a_t");
            }
            if core <= at && core + petals[t] != at {
                return bad("petal equality");
            }
        }
        if kd != b || core > a_s {
            return bad("K degree b and core at most a_s");
        }
        if (core == a_s) != petals.iter().all(|&p| p == 0) {
            return bad("core equals a_s iff petals vanish");
        }
        let deg = g.degree();
        if deg != petals[..st - 1].iter().sum::<u64>() + a_s + b {
            return bad("the degree formula");
        }
        if deg < a_s + b || deg > a_sum + b {
            return bad("the degree bounds");
        }
    }
    Ok(())
}

pub fn sunflower_suite(seed: u64, count: usize) -> SuiteOutcome {
    let start = Instant::now();
    let bounds = Bounds::default();
    let mut rng = rng_for(seed, 1);
    let mut out = SuiteOutcome::new("sunflower intersections have NDEP");
    for _ in 0..count {
        let s = random_sunflower(&mut rng);
        out.record(check_sunflower(&s, &bounds));
    }
    out.elapsed_ms = start.elapsed().as_millis();
    out
}

#[derive(Debug, Clone)]
struct EdgeFamily {
    n: usize,
    edges: Vec<Vec<usize>>,
    a: Vec<u32>,
}

impl fmt::Display for EdgeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<Vec<usize>> = self.edges.iter().map(|e| e.iter().map(|v| v + 1).collect()).collect();
        write!(f, "n={} edges={:?} a={:?}", self.n, one_based, self.a)
    }
}

impl EdgeFamily {
    fn hypergraph(&self) -> Result<WeightedHypergraph> {
        let edges: Vec<(Vec<usize>, u32)> = self.edges.iter().cloned().zip(self.a.iter().copied()).collect();
        weighted(self.n, &edges)
    }
}

/// Draws block sizes in `0..=max` until every listed union is non-empty.
fn block_sizes(rng: &mut ChaCha8Rng, blocks: usize, max: usize, unions: &[&[usize]]) -> Vec<usize> {
    loop {
        let sizes: Vec<usize> = (0..blocks).map(|_| rng.gen_range(0..=max)).collect();
        if unions.iter().all(|u| u.iter().any(|&b| sizes[b] > 0)) {
            return sizes;
        }
    }
}

/// Blocks `J'_1, J''_1, J'_2, J''_3, J''_2` of size `≤ 2`, one optional
/// spare vertex, and `a_1 ≥ a_2 ≥ a_3` in `1..=3`.
fn random_three_edge(rng: &mut ChaCha8Rng) -> EdgeFamily {
    let sizes = block_sizes(rng, 5, 2, &[&[0, 1], &[0, 2, 4], &[2, 3]]);
    let n = sizes.iter().sum::<usize>() + rng.gen_range(0..=1);
    let b = random_blocks(rng, &sizes, n);
    let mut a: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
    a.sort_unstable_by(|x, y| y.cmp(x));
    EdgeFamily {
        n,
        edges: vec![union(&[&b[0], &b[1]]), union(&[&b[0], &b[2], &b[4]]), union(&[&b[2], &b[3]])],
        a,
    }
}

fn check_three_edge(f: &EdgeFamily, bounds: &Bounds) -> std::result::Result<(), String> {
    let (j1, j2, j3) = (&f.edges[0], &f.edges[1], &f.edges[2]);
    let order = fail(three_edge_order(j1, j2, j3, f.n), f)?;
    let part = fail(three_edge_partition(j1, j2, j3, f.n), f)?;
    let h = fail(f.hypergraph(), f)?;
    if !fail(is_totally_balanced_with(&h, bounds), f)?.totally_balanced {
        return Err(format!("{f}: not totally balanced"));
    }
    let ideal = fail(kcover_ideal_with(&h, 1, bounds), f)?;
    if let Some(w) = fail(check_weakly_polymatroidal(&ideal, &order), f)?.witness() {
        return Err(format!("{f}: weakly polymatroidal fails under {order}, {w}"));
    }
    for g in ideal.generators() {
        let d = fail(factor_degrees(&part, g), f)?;
        if d.get("J'1") + d.get("J''1") != u64::from(f.a[0]) {
            return Err(format!("{f}: generator {g} ({d}) has degree over J1 other than a_1"));
        }
    }
    Ok(())
}

pub fn three_edge_suite(seed: u64, count: usize) -> SuiteOutcome {
    let start = Instant::now();
    let bounds = Bounds::default();
    let mut rng = rng_for(seed, 2);
    let mut out = SuiteOutcome::new("three-edge intersections are weakly polymatroidal");
    for _ in 0..count {
        let f = random_three_edge(&mut rng);
        out.record(check_three_edge(&f, &bounds));
    }
    out.elapsed_ms = start.elapsed().as_millis();
    out
}

/// Four-edge paths from blocks `J'_1, J'_2, J'_3, J''_1, J''_4`, or
/// three-edge paths from `J'_1, J'_2, J''_1, J''_3`; sizes `≤ 2`, a common
/// exponent `a ≤ 3`.
fn random_path_family(rng: &mut ChaCha8Rng, four: bool) -> EdgeFamily {
    let a = rng.gen_range(1..=3);
    if four {
        let sizes = block_sizes(rng, 5, 2, &[&[0, 3], &[0, 1], &[1, 2], &[2, 4]]);
        let n = sizes.iter().sum::<usize>() + rng.gen_range(0..=1);
        let b = random_blocks(rng, &sizes, n);
        EdgeFamily {
            n,
            edges: vec![
                union(&[&b[0], &b[3]]),
                union(&[&b[0], &b[1]]),
                union(&[&b[1], &b[2]]),
                union(&[&b[2], &b[4]]),
            ],
            a: vec![a; 4],
        }
    } else {
        let sizes = block_sizes(rng, 4, 2, &[&[0, 2], &[0, 1], &[1, 3]]);
        let n = sizes.iter().sum::<usize>() + rng.gen_range(0..=1);
        let b = random_blocks(rng, &sizes, n);
        EdgeFamily {
            n,
            edges: vec![union(&[&b[0], &b[2]]), union(&[&b[0], &b[1]]), union(&[&b[1], &b[3]])],
            a: vec![a; 3],
        }
    }
}

/// Partition, total balance, and the per-generator end equalities and
/// degree formula. Returns the ideal for the exchange check.
fn check_path_structure(f: &EdgeFamily, bounds: &Bounds) -> std::result::Result<MonomialIdeal, String> {
    let part = fail(validate_path_family(&f.edges, f.n), f)?;
    let h = fail(f.hypergraph(), f)?;
    if !fail(is_totally_balanced_with(&h, bounds), f)?.totally_balanced {
        return Err(format!("{f}: not totally balanced"));
    }
    let ideal = fail(kcover_ideal_with(&h, 1, bounds), f)?;
    let a = u64::from(f.a[0]);
    let (last_shared, last_own) = if f.edges.len() == 4 { ("J'3", "J''4") } else { ("J'2", "J''3") };
    for g in ideal.generators() {
        let d = fail(factor_degrees(&part, g), f)?;
        let ends_ok = d.get("J'1") + d.get("J''1") == a && d.get(last_shared) + d.get(last_own) == a;
        let expected = if f.edges.len() == 4 { 2 * a + d.get("J'2") } else { 2 * a };
        if d.rest != 0 || !ends_ok || g.degree() != expected {
            return Err(format!("{f}: generator {g} ({d}) breaks the end equalities or degree formula"));
        }
    }
    Ok(ideal)
}

fn check_ndep_of(f: &EdgeFamily, ideal: &MonomialIdeal) -> std::result::Result<(), String> {
    match fail(check_ndep(ideal), f)?.witness() {
        None => Ok(()),
        Some(w) => Err(format!("{f}: NDEP fails, {w}")),
    }
}

/// Four-edge path families: structure and NDEP together.
pub fn path_family_suite(seed: u64, count: usize) -> SuiteOutcome {
    let start = Instant::now();
    let bounds = Bounds::default();
    let mut rng = rng_for(seed, 3);
    let mut out = SuiteOutcome::new("four-edge path families with a common exponent have NDEP");
    for _ in 0..count {
        let f = random_path_family(&mut rng, true);
        out.record(check_path_structure(&f, &bounds).and_then(|i| check_ndep_of(&f, &i)));
    }
    out.elapsed_ms = start.elapsed().as_millis();
    out
}

/// Three-edge paths with `J_1 ∩ J_3 = ∅` and `J_2 ⊆ J_1 ∪ J_3`. The first
/// outcome covers structure, the second NDEP, which fails already for the
/// cover ideal of a path on four vertices.
pub fn three_edge_path_suites(seed: u64, count: usize) -> (SuiteOutcome, SuiteOutcome) {
    let start = Instant::now();
    let bounds = Bounds::default();
    let mut rng = rng_for(seed, 5);
    let mut structure = SuiteOutcome::new("three-edge paths satisfy the end equalities");
    let mut exchange = SuiteOutcome::new("three-edge paths with a common exponent have NDEP");
    for _ in 0..count {
        let f = random_path_family(&mut rng, false);
        match check_path_structure(&f, &bounds) {
            Ok(ideal) => {
                structure.record(Ok(()));
                exchange.record(check_ndep_of(&f, &ideal));
            }
            Err(e) => structure.record(Err(e)),
        }
    }
    structure.elapsed_ms = start.elapsed().as_millis();
    exchange.elapsed_ms = structure.elapsed_ms;
    (structure, exchange)
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(&(0..n).collect::<Vec<_>>(), k, n)).collect()
}

fn check_intersection(i: &MonomialIdeal, j: &MonomialIdeal) -> std::result::Result<(), String> {
    let tag = format!("{i} ∩ {j}");
    let meet = fail(i.intersect(j), &tag)?;
    let top = i
        .generators()
        .iter()
        .flat_map(|g| j.generators().iter().map(move |h| g.lcm(h)))
        .map(|m| m.map(|m| m.degree()))
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)));
    let top = u32::try_from(fail(top, &tag)?).map_err(|_| format!("{tag}: degree overflow"))?;
    for m in monomials_up_to(i.n(), top) {
        let expected = i.contains_unchecked(&m) && j.contains_unchecked(&m);
        if meet.contains_unchecked(&m) != expected {
            return Err(format!("{tag}: membership of {m} disagrees"));
        }
    }
    Ok(())
}

fn random_hypergraph(rng: &mut ChaCha8Rng) -> WeightedHypergraph {
    let n = rng.gen_range(1..=8);
    let m = rng.gen_range(1..=4);
    let edges = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=n.min(3));
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            vs.truncate(size);
            (vs, rng.gen_range(1..=2))
        })
        .collect();
    WeightedHypergraph::new(n, edges).expect("valid by construction")
}

fn check_cover_routes(h: &WeightedHypergraph, k: u32, bounds: &Bounds) -> std::result::Result<(), String> {
    let tag = format!("{} k={k}", serde_json::to_string(h).unwrap_or_default());
    let ideal = fail(kcover_ideal_with(h, k, bounds), &tag)?;
    let covers = fail(minimal_kcovers_with(h, k, bounds), &tag)?;
    let from_ideal: BTreeSet<Vec<u32>> = ideal.generators().iter().map(|g| g.exponents().to_vec()).collect();
    let from_search: BTreeSet<Vec<u32>> = covers.into_iter().map(|c| c.0).collect();
    if from_ideal != from_search {
        return Err(format!("{tag}: intersection and cover search disagree"));
    }
    Ok(())
}

fn check_betti(i: &MonomialIdeal, bounds: &Bounds) -> std::result::Result<(), String> {
    let cross = fail(betti_cross_check(i, DEFAULT_PRIME, CROSS_CHECK_PRIME, bounds), i)?;
    if !cross.agree {
        return Err(format!("{i}: Betti tables differ between primes"));
    }
    let taylor = fail(taylor_euler_characteristic(i, bounds.taylor), i)?;
    let degrees: BTreeSet<u64> = cross
        .first
        .entries()
        .map(|((_, j), _)| j)
        .chain(taylor.keys().copied())
        .collect();
    for j in degrees {
        if cross.first.euler_characteristic(j) != taylor.get(&j).copied().unwrap_or(0) {
            return Err(format!("{i}: Euler characteristic differs from Taylor in degree {j}"));
        }
    }
    Ok(())
}

/// `Ok(true)` when checked, `Ok(false)` when an instance falls outside the
/// search bounds.
fn check_lq_implies_cl(i: &MonomialIdeal, bounds: &Bounds) -> std::result::Result<bool, String> {
    let found = match search_linear_quotients(i, bounds.lq_search) {
        Err(Error::BoundExceeded { .. }) => return Ok(false),
        other => fail(other, i)?,
    };
    if found.is_none() {
        return Ok(true);
    }
    match is_componentwise_linear_with(i, bounds) {
        Err(Error::BoundExceeded { .. }) => Ok(false),
        Err(e) => Err(format!("{i}: {e}")),
        Ok(r) if r.componentwise_linear => Ok(true),
        Ok(r) => Err(format!("{i}: linear quotients but not componentwise linear ({r})")),
    }
}

/// Intersections against membership, both cover routes, Betti tables over
/// two primes against the Taylor Euler characteristic, and linear quotients
/// against componentwise linearity.
pub fn oracle_suite(seed: u64, count: usize) -> SuiteOutcome {
    let start = Instant::now();
    let bounds = Bounds::default();
    let mut rng = rng_for(seed, 4);
    let mut out = SuiteOutcome::new("independent computations agree");
    for _ in 0..count {
        let n = rng.gen_range(1..=5);
        let draw = |rng: &mut ChaCha8Rng| {
            let gens: Vec<Monomial> = (0..rng.gen_range(1..=4)).map(|_| random_monomial(rng, n, 3)).collect();
            MonomialIdeal::minimalize(gens, n).expect("same ambient ring")
        };
        let (i, j) = (draw(&mut rng), draw(&mut rng));
        out.record(check_intersection(&i, &j));
    }
    for _ in 0..count {
        let h = random_hypergraph(&mut rng);
        let k = rng.gen_range(1..=2);
        out.record(check_cover_routes(&h, k, &bounds));
    }
    for _ in 0..count {
        let i = random_ideal(&mut rng, 4, 6, 4);
        out.record(check_betti(&i, &bounds));
    }
    let mut skipped = 0;
    for _ in 0..count {
        let i = random_ideal(&mut rng, 4, 6, 4);
        match check_lq_implies_cl(&i, &bounds) {
            Ok(true) => out.record(Ok(())),
            Ok(false) => skipped += 1,
            Err(e) => out.record(Err(e)),
        }
    }
    if skipped > count / 2 {
        out.record(Err(format!("{skipped} of {count} linear-quotient instances exceeded bounds")));
    }
    out.elapsed_ms = start.elapsed().as_millis();
    out
}

/// Runs every suite with the instance counts used for acceptance.
pub fn run_all(seed: u64) -> Result<Vec<SuiteOutcome>> {
    let (orders, maximal) = ndep_suites(seed, 100)?;
    let (path_structure, path_exchange) = three_edge_path_suites(seed, 120);
    Ok(vec![
        orders,
        maximal,
        sunflower_suite(seed, 120),
        three_edge_suite(seed, 120),
        path_family_suite(seed, 120),
        path_structure,
        path_exchange,
        oracle_suite(seed, 100),
    ])
}
