//! Linear quotients: verifying admissible orders, building one for ideals
//! with the non-pure dual exchange property, and a general search.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::bounds::ensure;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// An ordering `u_1, ..., u_m` of `G(I)` in which every prefix colon
/// `(u_1, ..., u_{l-1}) : u_l` is generated by variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct AdmissibleOrder(Vec<Monomial>);

impl AdmissibleOrder {
    pub fn as_slice(&self) -> &[Monomial] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Monomial> {
        self.0
    }
}

impl fmt::Display for AdmissibleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Admissibility {
    Holds,
    Violated {
        /// 1-based position `l` of the element whose colon fails.
        position: usize,
        element: Monomial,
        /// `G((u_1, ..., u_{l-1}) : u_l)`.
        colon: Vec<Monomial>,
        /// A generator of the colon of degree at least two.
        offending: Monomial,
    },
}

impl Admissibility {
    pub fn holds(&self) -> bool {
        matches!(self, Admissibility::Holds)
    }
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Admissibility::Holds => f.write_str("holds"),
            Admissibility::Violated {
                position,
                element,
                offending,
                ..
            } => write!(
                f,
                "violated at position {position} ({element}): colon has generator {offending}"
            ),
        }
    }
}

/// Whether `(prefix) : u` is generated by variables.
fn colon_is_linear<'a>(prefix: impl Iterator<Item = &'a Monomial> + Clone, u: &Monomial) -> bool {
    let quotients: Vec<Monomial> = prefix.map(|g| g.colon_unchecked(u)).collect();
    let linear: Vec<usize> = quotients
        .iter()
        .filter(|q| q.degree() == 1)
        .map(|q| q.support().next().expect("degree one"))
        .collect();
    quotients
        .iter()
        .all(|q| q.degree() <= 1 || linear.iter().any(|&x| q.exponent(x) > 0))
}

fn ensure_generator_permutation(ideal: &MonomialIdeal, order: &[Monomial]) -> Result<()> {
    if order.len() != ideal.len() {
        return Err(Error::NotGeneratorOrder {
            reason: format!("{} elements given, ideal has {} generators", order.len(), ideal.len()),
        });
    }
    let mut seen = HashSet::new();
    for m in order {
        if !ideal.is_generator(m) {
            return Err(Error::NotGeneratorOrder {
                reason: format!("{m} is not a minimal generator"),
            });
        }
        if !seen.insert(m) {
            return Err(Error::NotGeneratorOrder {
                reason: format!("{m} appears twice"),
            });
        }
    }
    Ok(())
}

/// Checks every prefix colon of `order`, reporting the first failure.
pub fn is_admissible_order(ideal: &MonomialIdeal, order: &[Monomial]) -> Result<Admissibility> {
    ensure_generator_permutation(ideal, order)?;
    for l in 1..order.len() {
        let u = &order[l];
        if colon_is_linear(order[..l].iter(), u) {
            continue;
        }
        let colon = MonomialIdeal::minimalize(order[..l].iter().map(|g| g.colon_unchecked(u)), ideal.n())?;
        let offending = colon
            .generators()
            .iter()
            .find(|q| q.degree() >= 2)
            .expect("non-linear colon has a generator of degree at least two")
            .clone();
        return Ok(Admissibility::Violated {
            position: l + 1,
            element: u.clone(),
            colon: colon.generators().to_vec(),
            offending,
        });
    }
    Ok(Admissibility::Holds)
}

/// Builds an admissible order by splitting `I = x_p I_1 + I_2`.
///
/// At each level the common gcd is stripped, `x_p` is the smallest-index
/// variable dividing a generator of minimal degree, generators divisible by
/// `x_p` come first, and `I_2 ⊆ I_1` is verified before recursing. A failed
/// inclusion means `I` lacks the non-pure dual exchange property.
pub fn ndep_admissible_order(ideal: &MonomialIdeal) -> Result<AdmissibleOrder> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let mut out = Vec::with_capacity(ideal.len());
    split_order(ideal.generators().to_vec(), ideal.n(), &mut out)?;
    Ok(AdmissibleOrder(out))
}

fn split_order(gens: Vec<Monomial>, n: usize, out: &mut Vec<Monomial>) -> Result<()> {
    if gens.len() == 1 {
        out.extend(gens);
        return Ok(());
    }
    let w = gens[1..]
        .iter()
        .try_fold(gens[0].clone(), |acc, g| acc.gcd(g))?;
    let stripped: Vec<Monomial> = gens.iter().map(|g| g.colon_unchecked(&w)).collect();
    let d = stripped.iter().map(Monomial::degree).min().expect("non-empty");
    let p = stripped
        .iter()
        .filter(|s| s.degree() == d)
        .flat_map(|s| s.support().collect::<Vec<_>>())
        .min()
        .expect("an antichain of two or more has no unit generator");

    let (first, second): (Vec<usize>, Vec<usize>) = (0..gens.len()).partition(|&k| stripped[k].exponent(p) > 0);
    let xp = Monomial::var(p, n);
    let quotient_gens: Vec<Monomial> = first
        .iter()
        .map(|&k| stripped[k].quotient(&xp).map(|q| q.expect("x_p divides")))
        .collect::<Result<_>>()?;
    for &k in &second {
        if !quotient_gens.iter().any(|q| q.divides_unchecked(&stripped[k])) {
            return Err(Error::NotNdep {
                witness: gens[k].clone(),
            });
        }
    }
    split_order(first.iter().map(|&k| gens[k].clone()).collect(), n, out)?;
    split_order(second.iter().map(|&k| gens[k].clone()).collect(), n, out)
}

/// Backtracking search for any admissible order. Dead prefixes are memoized
/// by their set of chosen generators, since the colon ideal only depends on
/// that set. Returns the order that is least in branch-index order, or
/// `None` once every prefix set is exhausted.
pub fn search_linear_quotients(ideal: &MonomialIdeal, bound: usize) -> Result<Option<AdmissibleOrder>> {
    ensure("generator count", ideal.len(), bound)?;
    ensure("generator count", ideal.len(), 63)?;
    if ideal.is_zero() {
        return Ok(Some(AdmissibleOrder(Vec::new())));
    }
    let gens = ideal.generators();
    let mut path = Vec::with_capacity(gens.len());
    let mut dead = HashSet::new();
    if extend(gens, 0, &mut path, &mut dead) {
        Ok(Some(AdmissibleOrder(path.into_iter().map(|k| gens[k].clone()).collect())))
    } else {
        Ok(None)
    }
}

fn extend(gens: &[Monomial], chosen: u64, path: &mut Vec<usize>, dead: &mut HashSet<u64>) -> bool {
    if path.len() == gens.len() {
        return true;
    }
    if dead.contains(&chosen) {
        return false;
    }
    for k in 0..gens.len() {
        if chosen & (1 << k) != 0 {
            continue;
        }
        if !colon_is_linear(path.iter().map(|&i| &gens[i]), &gens[k]) {
            continue;
        }
        path.push(k);
        if extend(gens, chosen | (1 << k), path, dead) {
            return true;
        }
        path.pop();
    }
    dead.insert(chosen);
    false
}
