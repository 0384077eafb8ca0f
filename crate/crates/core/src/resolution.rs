//! Graded Betti numbers of monomial ideals via upper Koszul simplicial
//! complexes, and the componentwise-linearity test built on them.
//!
//! For a multidegree `m`, `β_{i,m}(I)` is the reduced homology rank in
//! dimension `i - 1` of `K^m = {σ ⊆ supp(m) : m / x^σ ∈ I}`. Only members of
//! the lcm closure of `G(I)` can carry nonzero Betti numbers, so those are
//! the only multidegrees visited.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::{ensure, Bounds};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub const DEFAULT_PRIME: u64 = 32003;
pub const CROSS_CHECK_PRIME: u64 = 101;

/// `(i, j) ↦ β_{i,j}`, zero entries omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u64), u64>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    i: usize,
    j: u64,
    rank: u64,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    entries: Vec<Entry>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            entries: self.entries.iter().map(|(&(i, j), &rank)| Entry { i, j, rank }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        let mut table = BettiTable::default();
        for e in wire.entries {
            table.add(e.i, e.j, e.rank);
        }
        Ok(table)
    }
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    fn add(&mut self, i: usize, j: u64, rank: u64) {
        if rank > 0 {
            *self.entries.entry((i, j)).or_insert(0) += rank;
        }
    }

    /// Nonzero entries as `((i, j), β_{i,j})`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u64), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `Σ_i (-1)^i β_{i,j}`.
    pub fn euler_characteristic(&self, j: u64) -> i64 {
        self.entries
            .iter()
            .filter(|(&(_, jj), _)| jj == j)
            .map(|(&(i, _), &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// True iff every nonzero `β_{i,j}` has `j = i + d`.
    pub fn is_linear(&self, d: u64) -> bool {
        self.entries.keys().all(|&(i, j)| j == i as u64 + d)
    }

    /// Conventional display: columns are homological degrees `i`, rows are
    /// `j - i`.
    pub fn render(&self) -> String {
        let Some(pd) = self.projective_dimension() else {
            return "zero table\n".to_string();
        };
        let rows: BTreeSet<u64> = self.entries.keys().map(|&(i, j)| j - i as u64).collect();
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend((0..=pd).map(|i| i.to_string()));
        cells.push(header);
        let mut total = vec!["total:".to_string()];
        total.extend((0..=pd).map(|i| {
            self.entries
                .iter()
                .filter(|(&(ii, _), _)| ii == i)
                .map(|(_, &r)| r)
                .sum::<u64>()
                .to_string()
        }));
        cells.push(total);
        for r in rows {
            let mut row = vec![format!("{r}:")];
            row.extend((0..=pd).map(|i| match self.get(i, r + i as u64) {
                0 => ".".to_string(),
                v => v.to_string(),
            }));
            cells.push(row);
        }
        let widths: Vec<usize> = (0..=pd + 1)
            .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of a dense matrix over `F_p` by Gaussian elimination.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for c in col..ncols {
            rows[rank][c] = rows[rank][c] * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for c in col..ncols {
                row[c] = (row[c] + p - f * pivot_row[c] % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Reduced homology ranks `H̃_{-1}, H̃_0, ...` of a simplicial complex whose
/// faces are given as bitmasks (closed under subsets, containing `∅`).
fn reduced_homology(faces: &[u32], p: u64) -> Vec<u64> {
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces.iter().map(|f| f.count_ones()).max().unwrap_or(0) as usize;
    // by_size[k] holds faces with k vertices, i.e. dimension k - 1.
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<BTreeMap<u32, usize>> = by_size
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(k, &f)| (f, k)).collect())
        .collect();
    // ranks[k] = rank of ∂ from size-k faces to size-(k-1) faces.
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let mut rows = vec![vec![0u64; by_size[k - 1].len()]; by_size[k].len()];
        for (r, &face) in by_size[k].iter().enumerate() {
            let mut sign_pos = 0;
            for v in 0..32 {
                if face & (1 << v) == 0 {
                    continue;
                }
                let col = index[k - 1][&(face & !(1 << v))];
                rows[r][col] = if sign_pos % 2 == 0 { 1 } else { p - 1 };
                sign_pos += 1;
            }
        }
        ranks[k] = rank_mod_p(rows, p);
    }
    (0..=top)
        .map(|k| (by_size[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect()
}

/// The lcm closure of `G(I)`: all lcms of non-empty generator subsets.
pub fn lcm_closure(ideal: &MonomialIdeal, limit: usize) -> Result<BTreeSet<Monomial>> {
    let mut closure: BTreeSet<Monomial> = ideal.generators().iter().cloned().collect();
    let mut frontier: Vec<Monomial> = closure.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in ideal.generators() {
                let l = m.lcm(g)?;
                if closure.insert(l.clone()) {
                    ensure("lcm closure size", closure.len(), limit)?;
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    ensure("lcm closure size", closure.len(), limit)?;
    Ok(closure)
}

/// Multigraded Betti numbers `β_{i,m}` for every `m` in the lcm closure.
pub fn multigraded_betti(ideal: &MonomialIdeal, p: u64, bounds: &Bounds) -> Result<BTreeMap<Monomial, Vec<u64>>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut out = BTreeMap::new();
    for m in lcm_closure(ideal, bounds.betti_lcm)? {
        let support: Vec<usize> = m.support().collect();
        ensure("multidegree support size", support.len(), 20)?;
        let mut faces = Vec::new();
        for mask in 0u32..(1 << support.len()) {
            let mut exps = m.exponents().to_vec();
            for (bit, &x) in support.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    exps[x] -= 1;
                }
            }
            if ideal.contains_unchecked(&Monomial::new(exps)) {
                faces.push(mask);
            }
        }
        let homology = reduced_homology(&faces, p);
        if homology.iter().any(|&h| h > 0) {
            out.insert(m, homology);
        }
    }
    Ok(out)
}

pub fn betti_table(ideal: &MonomialIdeal, p: u64) -> Result<BettiTable> {
    betti_table_with(ideal, p, &Bounds::default())
}

/// `β_{i,j}(I)` over `F_p`, graded by total degree.
pub fn betti_table_with(ideal: &MonomialIdeal, p: u64, bounds: &Bounds) -> Result<BettiTable> {
    let mut table = BettiTable::default();
    for (m, homology) in multigraded_betti(ideal, p, bounds)? {
        // homology[k] is H̃_{k-1}, which contributes to β_{k, deg m}.
        for (k, &h) in homology.iter().enumerate() {
            table.add(k, m.degree(), h);
        }
    }
    Ok(table)
}

/// Tables over two characteristics; `agree == false` flags characteristic
/// dependence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub primes: (u64, u64),
    pub first: BettiTable,
    pub second: BettiTable,
    pub agree: bool,
}

pub fn betti_cross_check(ideal: &MonomialIdeal, p: u64, q: u64, bounds: &Bounds) -> Result<CrossCheck> {
    let first = betti_table_with(ideal, p, bounds)?;
    let second = betti_table_with(ideal, q, bounds)?;
    let agree = first == second;
    Ok(CrossCheck {
        primes: (p, q),
        first,
        second,
        agree,
    })
}

/// `Σ (-1)^{|S|-1}` over non-empty generator subsets `S` with `deg lcm(S) = j`,
/// keyed by `j`. Exponential in `|G(I)|`.
pub fn taylor_euler_characteristic(ideal: &MonomialIdeal, limit: usize) -> Result<BTreeMap<u64, i64>> {
    let gens = ideal.generators();
    ensure("generator count for Taylor complex", gens.len(), limit.min(24))?;
    let mut out = BTreeMap::new();
    for mask in 1u32..(1 << gens.len()) {
        let mut lcm = Monomial::one(ideal.n());
        for (k, g) in gens.iter().enumerate() {
            if mask & (1 << k) != 0 {
                lcm = lcm.lcm(g)?;
            }
        }
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        *out.entry(lcm.degree()).or_insert(0) += sign;
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

pub fn has_linear_resolution(ideal: &MonomialIdeal) -> Result<bool> {
    has_linear_resolution_with(ideal, &Bounds::default())
}

/// For an ideal generated in degree `d`: `β_{i,j} = 0` whenever `j ≠ i + d`.
pub fn has_linear_resolution_with(ideal: &MonomialIdeal, bounds: &Bounds) -> Result<bool> {
    let Some(d) = ideal.equigenerated_degree()? else {
        return Ok(true);
    };
    Ok(betti_table_with(ideal, DEFAULT_PRIME, bounds)?.is_linear(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub degree: u64,
    pub generators: usize,
    pub linear: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentwiseLinearity {
    pub componentwise_linear: bool,
    pub components: Vec<ComponentReport>,
}

pub fn is_componentwise_linear(ideal: &MonomialIdeal) -> Result<ComponentwiseLinearity> {
    is_componentwise_linear_with(ideal, &Bounds::default())
}

/// Checks `I_<d>` for every `d` from the least to the largest generator
/// degree. Beyond that, `I_<d+1> = 𝔪 I_<d>` and linearity persists.
pub fn is_componentwise_linear_with(ideal: &MonomialIdeal, bounds: &Bounds) -> Result<ComponentwiseLinearity> {
    let mut components = Vec::new();
    if let (Some(lo), Some(hi)) = (ideal.min_degree(), ideal.max_degree()) {
        for d in lo..=hi {
            let comp = ideal.component_with_window(d, bounds.component_window)?;
            let linear = has_linear_resolution_with(&comp, bounds)?;
            components.push(ComponentReport {
                degree: d,
                generators: comp.len(),
                linear,
            });
        }
    }
    Ok(ComponentwiseLinearity {
        componentwise_linear: components.iter().all(|c| c.linear),
        components,
    })
}

impl fmt::Display for ComponentwiseLinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(
                f,
                "degree {}: {} generators, {}",
                c.degree,
                c.generators,
                if c.linear { "linear resolution" } else { "NOT linear" }
            )?;
        }
        write!(
            f,
            "componentwise linear: {}",
            if self.componentwise_linear { "yes" } else { "no" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(s: &str, n: usize) -> MonomialIdeal {
        MonomialIdeal::parse(s, n).unwrap()
    }

    fn entries(t: &BettiTable) -> Vec<((usize, u64), u64)> {
        t.entries().collect()
    }

    #[test]
    fn koszul_two_variables() {
        let t = betti_table(&ideal("x1, x2", 2), DEFAULT_PRIME).unwrap();
        assert_eq!(entries(&t), vec![((0, 1), 2), ((1, 2), 1)]);
    }

    #[test]
    fn coprime_pair() {
        let t = betti_table(&ideal("x1*x3, x2*x4", 4), DEFAULT_PRIME).unwrap();
        assert_eq!(entries(&t), vec![((0, 2), 2), ((1, 4), 1)]);
    }

    #[test]
    fn square_of_maximal_ideal_in_two_variables() {
        let t = betti_table(&ideal("x1^2, x1*x2, x2^2", 2), DEFAULT_PRIME).unwrap();
        assert_eq!(entries(&t), vec![((0, 2), 3), ((1, 3), 2)]);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(betti_table(&ideal("x1", 1), 32004), Err(Error::NotPrime(32004)));
    }

    #[test]
    fn maximal_ideal_three_variables_is_koszul() {
        let t = betti_table(&MonomialIdeal::maximal_ideal(3), DEFAULT_PRIME).unwrap();
        assert_eq!(entries(&t), vec![((0, 1), 3), ((1, 2), 3), ((2, 3), 1)]);
    }

    #[test]
    fn linear_resolution_examples() {
        assert!(!has_linear_resolution(&ideal("x1*x3, x2*x4", 4)).unwrap());
        assert!(has_linear_resolution(&ideal("x1, x2", 2).power(2).unwrap()).unwrap());
        assert!(has_linear_resolution(&ideal("x1^2*x2*x5", 5)).unwrap());
        assert!(matches!(
            has_linear_resolution(&ideal("x1, x2^2", 2)),
            Err(Error::NotEquigenerated { .. })
        ));
    }

    #[test]
    fn four_cycle_cover_ideal_is_not_componentwise_linear() {
        let c4 = ideal("x1, x2", 4)
            .intersect(&ideal("x2, x3", 4))
            .unwrap()
            .intersect(&ideal("x3, x4", 4))
            .unwrap()
            .intersect(&ideal("x4, x1", 4))
            .unwrap();
        assert_eq!(c4, ideal("x1*x3, x2*x4", 4));
        let report = is_componentwise_linear(&c4).unwrap();
        assert!(!report.componentwise_linear);
    }

    #[test]
    fn componentwise_linear_examples() {
        assert!(is_componentwise_linear(&ideal("x1, x2", 2).power(2).unwrap())
            .unwrap()
            .componentwise_linear);
        let i = ideal("x1^2, x1*x2^2, x1*x2*x3, x2^2*x3, x1*x3^3, x2*x3^3", 3);
        let report = is_componentwise_linear(&i).unwrap();
        assert!(report.componentwise_linear);
        assert_eq!(report.components.iter().map(|c| c.degree).collect::<Vec<_>>(), [2, 3, 4]);
    }

    #[test]
    fn euler_characteristic_matches_taylor() {
        let i = ideal("x1^2, x1*x2^2, x1*x2*x3, x2^2*x3, x1*x3^3, x2*x3^3", 3);
        let t = betti_table(&i, DEFAULT_PRIME).unwrap();
        let taylor = taylor_euler_characteristic(&i, 16).unwrap();
        let degrees: BTreeSet<u64> = t.entries().map(|((_, j), _)| j).chain(taylor.keys().copied()).collect();
        for j in degrees {
            assert_eq!(t.euler_characteristic(j), taylor.get(&j).copied().unwrap_or(0), "degree {j}");
        }
    }

    #[test]
    fn json_round_trip() {
        let t = betti_table(&ideal("x1, x2", 2), DEFAULT_PRIME).unwrap();
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"entries": [{"i": 0, "j": 1, "rank": 2}, {"i": 1, "j": 2, "rank": 1}]})
        );
        let back: BettiTable = serde_json::from_value(json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn render_triangular_display() {
        let t = betti_table(&ideal("x1*x3, x2*x4", 4), DEFAULT_PRIME).unwrap();
        assert_eq!(t.render(), "       0 1\ntotal: 2 1\n    2: 2 .\n    3: . 1\n");
    }

    #[test]
    fn lcm_closure_bound() {
        let v = MonomialIdeal::veronese(&[0, 1, 2], 2, 3).unwrap();
        assert!(matches!(lcm_closure(&v, 3), Err(Error::BoundExceeded { .. })));
    }
}
