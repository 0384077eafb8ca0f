//! Deciders for the polymatroidal, non-pure dual, and weakly polymatroidal
//! exchange properties.
//!
//! Every decider walks generator pairs in canonical order and reports the
//! first violation, so certificates are deterministic. A violation lists
//! every exchange candidate that was tried together with the rejected
//! monomial, which makes it replayable against [`MonomialIdeal::contains`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::ensure;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, Var};

/// A total order on the variables, listed from largest to smallest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VariableOrder(Vec<Var>);

impl VariableOrder {
    /// `order[0] > order[1] > ...`, given as 0-based indices.
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        if order.len() != n {
            return Err(Error::NotPermutation {
                n,
                reason: format!("{} entries given", order.len()),
            });
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(Error::NotPermutation {
                    n,
                    reason: format!("index {} out of range", v + 1),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotPermutation {
                    n,
                    reason: format!("index {} repeated", v + 1),
                });
            }
        }
        Ok(Self(order.into_iter().map(Var).collect()))
    }

    /// `x1 > x2 > ... > xn`.
    pub fn natural(n: usize) -> Self {
        Self((0..n).map(Var).collect())
    }

    /// Parses a comma-separated 1-based list such as `2,1,4,5,3`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let order = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                let t = t.strip_prefix('x').unwrap_or(t);
                match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Parse(format!("bad variable {t:?} in order"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, n)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Variables from largest to smallest.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|v| v.0)
    }

    /// Position of each variable; smaller position means larger variable.
    fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.0.len()];
        for (pos, v) in self.0.iter().enumerate() {
            rank[v.0] = pos;
        }
        rank
    }

    /// Compares `u` and `v` in pure lex induced by this order; returns the
    /// first variable where they differ.
    pub fn first_difference(&self, u: &Monomial, v: &Monomial) -> Option<usize> {
        self.vars().find(|&x| u.exponent(x) != v.exponent(x))
    }
}

impl fmt::Display for VariableOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// One exchange candidate `j` and the monomial it produced, not in `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejected {
    pub j: Var,
    pub monomial: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub u: Monomial,
    pub v: Monomial,
    pub pivot: Var,
    pub tried: Vec<Rejected>,
}

impl Witness {
    /// Replays the membership tests: `u, v ∈ G(I)` and no tried monomial is in `I`.
    pub fn replays(&self, ideal: &MonomialIdeal) -> bool {
        ideal.is_generator(&self.u)
            && ideal.is_generator(&self.v)
            && self
                .tried
                .iter()
                .all(|r| r.monomial.n() == ideal.n() && !ideal.contains_unchecked(&r.monomial))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = {}, v = {}, pivot {}", self.u, self.v, self.pivot)?;
        if self.tried.is_empty() {
            f.write_str(", no candidates")
        } else {
            f.write_str(", rejected:")?;
            for r in &self.tried {
                write!(f, " {} via {} ∉ I;", r.j, r.monomial)?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Certificate {
    Holds,
    Violated(Witness),
}

impl Certificate {
    pub fn holds(&self) -> bool {
        matches!(self, Certificate::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Certificate::Holds => None,
            Certificate::Violated(w) => Some(w),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Holds => f.write_str("holds"),
            Certificate::Violated(w) => write!(f, "violated: {w}"),
        }
    }
}

fn ensure_nonzero(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        Err(Error::ZeroIdeal)
    } else {
        Ok(())
    }
}

fn ensure_generator(ideal: &MonomialIdeal, m: &Monomial) -> Result<()> {
    if ideal.is_generator(m) {
        Ok(())
    } else {
        Err(Error::NotAGenerator(m.clone()))
    }
}

/// Memoized answers to "is `x_i * v / x_j` in `I`" for generators `v`, kept
/// as bitmasks over `j`. A generator dividing such a monomial exceeds `v` by
/// at most one in a single coordinate, so each `v` only consults that short
/// list. Available when `n ≤ 64`.
struct ExchangeTable<'a> {
    gens: &'a [Monomial],
    n: usize,
    near: Vec<Option<Vec<usize>>>,
    successes: Vec<Option<u64>>,
}

impl<'a> ExchangeTable<'a> {
    fn new(ideal: &'a MonomialIdeal) -> Option<Self> {
        let (gens, n) = (ideal.generators(), ideal.n());
        (n <= 64).then(|| Self {
            gens,
            n,
            near: vec![None; gens.len()],
            successes: vec![None; gens.len() * n],
        })
    }

    fn near(&mut self, v: usize) -> &[usize] {
        let gens = self.gens;
        self.near[v].get_or_insert_with(|| {
            let base = gens[v].exponents();
            (0..gens.len())
                .filter(|&g| {
                    g != v && {
                        let excess: u64 = gens[g]
                            .exponents()
                            .iter()
                            .zip(base)
                            .map(|(&a, &b)| u64::from(a.saturating_sub(b)))
                            .sum();
                        excess <= 1
                    }
                })
                .collect()
        })
    }

    /// Bit `j` is set iff `x_j | v`, `j ≠ i` and `x_i * v / x_j ∈ I`.
    fn successes(&mut self, v: usize, i: usize) -> u64 {
        if let Some(mask) = self.successes[v * self.n + i] {
            return mask;
        }
        let gens = self.gens;
        let base = gens[v].exponents();
        let near = self.near(v).to_vec();
        let mut mask = 0u64;
        for j in (0..base.len()).filter(|&j| j != i && base[j] > 0) {
            let hit = near.iter().any(|&g| {
                gens[g].exponents().iter().enumerate().all(|(k, &e)| {
                    let bound = base[k] + u32::from(k == i) - u32::from(k == j);
                    e <= bound
                })
            });
            if hit {
                mask |= 1 << j;
            }
        }
        self.successes[v * self.n + i] = Some(mask);
        mask
    }
}

/// Bits `j` with `deg_j(a) > deg_j(b)`.
fn exceeds(a: &Monomial, b: &Monomial) -> u64 {
    a.exponents()
        .iter()
        .zip(b.exponents())
        .enumerate()
        .filter(|(_, (x, y))| x > y)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// Tries `x_i * v / x_j` for each candidate `j` in turn. Returns `None` as
/// soon as one lands in `I`, otherwise every rejection.
fn try_exchanges(
    ideal: &MonomialIdeal,
    base: &Monomial,
    gain: usize,
    candidates: impl Iterator<Item = usize>,
) -> Result<Option<Vec<Rejected>>> {
    let mut tried = Vec::new();
    for j in candidates {
        let Some(m) = base.exchange(gain, j)? else { continue };
        if ideal.contains_unchecked(&m) {
            return Ok(None);
        }
        tried.push(Rejected { j: Var(j), monomial: m });
    }
    Ok(Some(tried))
}

/// Non-pure dual exchange at one `(u, v, i)`: some `j` with
/// `deg_j(v) > deg_j(u)` must put `x_i * v / x_j` in `I`.
fn ndep_pair(ideal: &MonomialIdeal, u: &Monomial, v: &Monomial, i: usize) -> Result<Option<Witness>> {
    let candidates = (0..ideal.n()).filter(|&j| v.exponent(j) > u.exponent(j));
    Ok(try_exchanges(ideal, v, i, candidates)?.map(|tried| Witness {
        u: u.clone(),
        v: v.clone(),
        pivot: Var(i),
        tried,
    }))
}

fn ndep_scan(ideal: &MonomialIdeal, mut on_violation: impl FnMut(Witness) -> bool) -> Result<()> {
    ensure_nonzero(ideal)?;
    let gens = ideal.generators();
    let mut table = ExchangeTable::new(ideal);
    for u in gens {
        for (b, v) in gens.iter().enumerate() {
            if u == v || u.degree() > v.degree() {
                continue;
            }
            let gain = table.as_ref().map(|_| exceeds(v, u));
            for i in 0..ideal.n() {
                if v.exponent(i) >= u.exponent(i) {
                    continue;
                }
                if let (Some(t), Some(gain)) = (table.as_mut(), gain) {
                    if t.successes(b, i) & gain != 0 {
                        continue;
                    }
                }
                if let Some(w) = ndep_pair(ideal, u, v, i)? {
                    if !on_violation(w) {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Decides the non-pure dual exchange property; the witness is the first
/// violating `(u, v, i)` in canonical order.
pub fn check_ndep(ideal: &MonomialIdeal) -> Result<Certificate> {
    let mut first = None;
    ndep_scan(ideal, |w| {
        first = Some(w);
        false
    })?;
    Ok(first.map_or(Certificate::Holds, Certificate::Violated))
}

/// Every violating `(u, v, i)`, in canonical order.
pub fn ndep_violations(ideal: &MonomialIdeal) -> Result<Vec<Witness>> {
    let mut all = Vec::new();
    ndep_scan(ideal, |w| {
        all.push(w);
        true
    })?;
    Ok(all)
}

/// Evaluates the non-pure dual exchange condition at a single `(u, v, i)`.
pub fn check_ndep_at(ideal: &MonomialIdeal, u: &Monomial, v: &Monomial, i: usize) -> Result<Certificate> {
    ensure_generator(ideal, u)?;
    ensure_generator(ideal, v)?;
    if u.degree() > v.degree() {
        return Err(Error::Hypothesis(format!("deg({u}) > deg({v})")));
    }
    if i >= ideal.n() || v.exponent(i) >= u.exponent(i) {
        return Err(Error::Hypothesis(format!(
            "pivot {} does not satisfy deg(v) < deg(u)",
            Var(i)
        )));
    }
    Ok(ndep_pair(ideal, u, v, i)?.map_or(Certificate::Holds, Certificate::Violated))
}

/// Symmetric exchange of equigenerated ideals: whenever `deg_i(u) > deg_i(v)`
/// some `j` with `deg_j(u) < deg_j(v)` puts `x_j * u / x_i` in `I`.
pub fn check_polymatroidal(ideal: &MonomialIdeal) -> Result<Certificate> {
    ideal.equigenerated_degree()?;
    let gens = ideal.generators();
    let mut table = ExchangeTable::new(ideal);
    for (a, u) in gens.iter().enumerate() {
        for v in gens {
            if u == v {
                continue;
            }
            let gain = table.as_ref().map(|_| exceeds(v, u));
            for i in 0..ideal.n() {
                if u.exponent(i) <= v.exponent(i) {
                    continue;
                }
                if let (Some(t), Some(gain)) = (table.as_mut(), gain) {
                    let mut js = gain;
                    let mut repaired = false;
                    while js != 0 {
                        let j = js.trailing_zeros() as usize;
                        js &= js - 1;
                        if t.successes(a, j) & (1 << i) != 0 {
                            repaired = true;
                            break;
                        }
                    }
                    if repaired {
                        continue;
                    }
                }
                let mut tried = Vec::new();
                let mut repaired = false;
                for j in (0..ideal.n()).filter(|&j| u.exponent(j) < v.exponent(j)) {
                    let m = u.exchange(j, i)?.expect("x_i divides u");
                    if ideal.contains_unchecked(&m) {
                        repaired = true;
                        break;
                    }
                    tried.push(Rejected { j: Var(j), monomial: m });
                }
                if !repaired {
                    return Ok(Certificate::Violated(Witness {
                        u: u.clone(),
                        v: v.clone(),
                        pivot: Var(i),
                        tried,
                    }));
                }
            }
        }
    }
    Ok(Certificate::Holds)
}

/// Weak exchange for a lex-larger `u`: with `x_t` the largest variable where
/// `u` and `v` differ, some `x_j < x_t` dividing `v` puts `x_t * v / x_j` in
/// `I`. Returns `None` when `u` is not lex-larger than `v`.
fn weakly_pair(
    ideal: &MonomialIdeal,
    order: &VariableOrder,
    ranks: &[usize],
    u: &Monomial,
    v: &Monomial,
) -> Result<Option<Option<Witness>>> {
    let Some(t) = order.first_difference(u, v) else {
        return Ok(None);
    };
    if u.exponent(t) < v.exponent(t) {
        return Ok(None);
    }
    let below = order.vars().skip(ranks[t] + 1);
    Ok(Some(try_exchanges(ideal, v, t, below)?.map(|tried| Witness {
        u: u.clone(),
        v: v.clone(),
        pivot: Var(t),
        tried,
    })))
}

fn ensure_order(ideal: &MonomialIdeal, order: &VariableOrder) -> Result<()> {
    if order.n() == ideal.n() {
        Ok(())
    } else {
        Err(Error::NotPermutation {
            n: ideal.n(),
            reason: format!("order has {} variables", order.n()),
        })
    }
}

/// Decides weak polymatroidality relative to `order`.
pub fn check_weakly_polymatroidal(ideal: &MonomialIdeal, order: &VariableOrder) -> Result<Certificate> {
    ensure_nonzero(ideal)?;
    ensure_order(ideal, order)?;
    let ranks = order.ranks();
    let gens = ideal.generators();
    let mut table = ExchangeTable::new(ideal);
    let below: Vec<u64> = (0..ideal.n())
        .map(|t| order.vars().skip(ranks[t] + 1).fold(0, |acc, j| acc | 1u64.checked_shl(j as u32).unwrap_or(0)))
        .collect();
    for u in gens {
        for (b, v) in gens.iter().enumerate() {
            if let Some(t) = table.as_mut() {
                match order.first_difference(u, v) {
                    Some(x) if u.exponent(x) > v.exponent(x) => {
                        if t.successes(b, x) & below[x] != 0 {
                            continue;
                        }
                    }
                    _ => continue,
                }
            }
            if let Some(Some(w)) = weakly_pair(ideal, order, &ranks, u, v)? {
                return Ok(Certificate::Violated(w));
            }
        }
    }
    Ok(Certificate::Holds)
}

/// Evaluates the weak exchange condition at one lex-ordered pair `u > v`.
pub fn check_weakly_polymatroidal_at(
    ideal: &MonomialIdeal,
    order: &VariableOrder,
    u: &Monomial,
    v: &Monomial,
) -> Result<Certificate> {
    ensure_order(ideal, order)?;
    ensure_generator(ideal, u)?;
    ensure_generator(ideal, v)?;
    match weakly_pair(ideal, order, &order.ranks(), u, v)? {
        None => Err(Error::Hypothesis(format!("{u} is not lex-larger than {v} under {order}"))),
        Some(w) => Ok(w.map_or(Certificate::Holds, Certificate::Violated)),
    }
}

/// Outcome of the all-orders search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum OrderSearch {
    Found { order: VariableOrder },
    /// Every order was tried; each comes with the violation that rejected it.
    Exhausted { rejected: Vec<RejectedOrder> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejectedOrder {
    pub order: VariableOrder,
    pub witness: Witness,
}

/// Tries every relative order of the support variables. Variables outside
/// the support never affect the verdict and keep their natural positions,
/// so the first order tried is `x1 > ... > xn`.
pub fn search_weakly_polymatroidal_order(ideal: &MonomialIdeal, limit: usize) -> Result<OrderSearch> {
    ensure_nonzero(ideal)?;
    let support: Vec<usize> = ideal.support().into_iter().collect();
    ensure("support size", support.len(), limit)?;
    let n = ideal.n();
    let mut rejected = Vec::new();
    let mut perm = support.clone();
    loop {
        let mut full: Vec<usize> = (0..n).collect();
        for (slot, &var) in support.iter().zip(&perm) {
            full[*slot] = var;
        }
        let order = VariableOrder::new(full, n)?;
        match check_weakly_polymatroidal(ideal, &order)? {
            Certificate::Holds => return Ok(OrderSearch::Found { order }),
            Certificate::Violated(witness) => rejected.push(RejectedOrder { order, witness }),
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(OrderSearch::Exhausted { rejected })
}

/// Advances to the lexicographically next permutation; false at the last one.
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|x| *x > xs[i]).expect("successor exists");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}
