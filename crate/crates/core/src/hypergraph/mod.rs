//! Weighted hypergraphs and their ideals of k-covers.
//!
//! The ideal `I_k(H, ω) = ∩_J m_J^{k ω(J)}` is computed by intersecting
//! Veronese ideals; [`minimal_kcovers`] enumerates the minimal k-covers
//! directly and serves as an independent second route.

mod balanced;
mod family;

pub use balanced::{is_totally_balanced, is_totally_balanced_with, Balance, SpecialCycle};
pub use family::{
    factor_degrees, three_edge_order, three_edge_partition, validate_path_family, validate_sunflower,
    BlockDegrees, EdgePartition, FamilyKind,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bounds::{ensure, Bounds};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    vertices: Vec<usize>,
    weight: u32,
}

impl Edge {
    /// 0-based vertices in increasing order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedHypergraph {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct WireEdge {
    vertices: Vec<usize>,
    weight: u32,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    n: usize,
    edges: Vec<WireEdge>,
}

impl Serialize for WeightedHypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| WireEdge {
                    vertices: e.vertices.iter().map(|v| v + 1).collect(),
                    weight: e.weight,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedHypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        let mut edges = Vec::with_capacity(wire.edges.len());
        for (k, e) in wire.edges.into_iter().enumerate() {
            let vertices = e
                .vertices
                .iter()
                .map(|&v| {
                    v.checked_sub(1)
                        .ok_or_else(|| serde::de::Error::custom(format!("edges[{k}]: vertex indices start at 1")))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            edges.push((vertices, e.weight));
        }
        WeightedHypergraph::new(wire.n, edges).map_err(serde::de::Error::custom)
    }
}

impl WeightedHypergraph {
    /// Edges are `(0-based vertices, weight)`; every edge must be non-empty
    /// and every weight positive.
    pub fn new(n: usize, edges: Vec<(Vec<usize>, u32)>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(k, (vertices, weight))| {
                let vertices: BTreeSet<usize> = vertices.into_iter().collect();
                if vertices.is_empty() {
                    return Err(Error::Hypothesis(format!("edge {} is empty", k + 1)));
                }
                if weight == 0 {
                    return Err(Error::Hypothesis(format!("edge {} has weight 0", k + 1)));
                }
                if let Some(&bad) = vertices.iter().find(|&&v| v >= n) {
                    return Err(Error::VariableOutOfRange { index: bad + 1, n });
                }
                Ok(Edge {
                    vertices: vertices.into_iter().collect(),
                    weight,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, edges })
    }

    /// All edges with weight 1.
    pub fn unweighted(n: usize, edges: &[&[usize]]) -> Result<Self> {
        Self::new(n, edges.iter().map(|e| (e.to_vec(), 1)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn max_weight(&self) -> u32 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }
}

/// A vector `c ∈ ℕ^n`; a k-cover when `Σ_{i∈J} c_i ≥ k ω(J)` for every edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoverVector(pub Vec<u32>);

impl CoverVector {
    pub fn is_kcover(&self, h: &WeightedHypergraph, k: u32) -> bool {
        h.edges.iter().all(|e| {
            let sum: u64 = e.vertices.iter().map(|&v| u64::from(self.0[v])).sum();
            sum >= u64::from(k) * u64::from(e.weight)
        })
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::new(self.0.clone())
    }
}

pub fn kcover_ideal(h: &WeightedHypergraph, k: u32) -> Result<MonomialIdeal> {
    kcover_ideal_with(h, k, &Bounds::default())
}

/// `∩_J m_J^{k ω(J)}`; the unit ideal when there are no edges.
pub fn kcover_ideal_with(h: &WeightedHypergraph, k: u32, bounds: &Bounds) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let mut acc = MonomialIdeal::unit(h.n);
    for e in &h.edges {
        let power = k.checked_mul(e.weight).ok_or(Error::Overflow)?;
        let ver = MonomialIdeal::veronese(&e.vertices, power, h.n)?;
        acc = acc.intersect_capped(&ver, bounds.product)?;
    }
    Ok(acc)
}

pub fn minimal_kcovers(h: &WeightedHypergraph, k: u32) -> Result<Vec<CoverVector>> {
    minimal_kcovers_with(h, k, &Bounds::default())
}

/// Enumerates all componentwise-minimal k-covers by depth-first search over
/// `c_1, c_2, ...`. Each `c_i` is at most `k` times the largest weight of an
/// edge through `i` (zero for isolated vertices). Branches are cut when an
/// edge can no longer be covered, or when the partial vector padded with
/// zeros already dominates a cover found earlier.
pub fn minimal_kcovers_with(h: &WeightedHypergraph, k: u32, bounds: &Bounds) -> Result<Vec<CoverVector>> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let n = h.n;
    let mut cap = vec![0u32; n];
    for e in &h.edges {
        let need = k.checked_mul(e.weight).ok_or(Error::Overflow)?;
        for &v in &e.vertices {
            cap[v] = cap[v].max(need);
        }
    }
    let mut search = CoverSearch {
        h,
        k,
        cap,
        found: Vec::new(),
        nodes: 0,
        node_limit: bounds.cover_nodes,
    };
    let mut c = vec![0u32; n];
    search.descend(0, &mut c)?;
    let mut found = search.found;
    found.sort_by_key(CoverVector::to_monomial);
    Ok(found)
}

struct CoverSearch<'a> {
    h: &'a WeightedHypergraph,
    k: u32,
    cap: Vec<u32>,
    found: Vec<CoverVector>,
    nodes: usize,
    node_limit: usize,
}

impl CoverSearch<'_> {
    fn need(&self, e: &Edge) -> u64 {
        u64::from(self.k) * u64::from(e.weight)
    }

    /// Every edge can still reach its requirement with vertices `>= next` at their caps.
    fn feasible(&self, next: usize, c: &[u32]) -> bool {
        self.h.edges.iter().all(|e| {
            let best: u64 = e
                .vertices
                .iter()
                .map(|&v| u64::from(if v < next { c[v] } else { self.cap[v] }))
                .sum();
            best >= self.need(e)
        })
    }

    fn dominates_found(&self, next: usize, c: &[u32]) -> bool {
        self.found.iter().any(|f| {
            f.0[..next].iter().zip(&c[..next]).all(|(a, b)| a <= b) && f.0[next..].iter().all(|&a| a == 0)
        })
    }

    fn is_minimal_cover(&self, c: &mut [u32]) -> bool {
        let cover = CoverVector(c.to_vec());
        if !cover.is_kcover(self.h, self.k) {
            return false;
        }
        (0..c.len()).filter(|&i| c[i] > 0).all(|i| {
            let mut smaller = cover.0.clone();
            smaller[i] -= 1;
            !CoverVector(smaller).is_kcover(self.h, self.k)
        })
    }

    fn descend(&mut self, next: usize, c: &mut Vec<u32>) -> Result<()> {
        self.nodes += 1;
        ensure("k-cover search nodes", self.nodes, self.node_limit)?;
        if !self.feasible(next, c) || self.dominates_found(next, c) {
            return Ok(());
        }
        if next == c.len() {
            if self.is_minimal_cover(c) {
                self.found.push(CoverVector(c.clone()));
            }
            return Ok(());
        }
        for value in 0..=self.cap[next] {
            c[next] = value;
            self.descend(next + 1, c)?;
        }
        c[next] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(i: &MonomialIdeal) -> Vec<Vec<u32>> {
        i.generators().iter().map(|g| g.exponents().to_vec()).collect()
    }

    #[test]
    fn rejects_empty_edges_and_zero_weights() {
        assert!(WeightedHypergraph::new(3, vec![(vec![], 1)]).is_err());
        assert!(WeightedHypergraph::new(3, vec![(vec![0], 0)]).is_err());
        assert!(WeightedHypergraph::new(3, vec![(vec![3], 1)]).is_err());
    }

    #[test]
    fn single_edge_double_cover() {
        let h = WeightedHypergraph::unweighted(2, &[&[0, 1]]).unwrap();
        let i = kcover_ideal(&h, 2).unwrap();
        assert_eq!(i, MonomialIdeal::parse("x1^2, x1*x2, x2^2", 2).unwrap());
        let covers: Vec<Vec<u32>> = minimal_kcovers(&h, 2).unwrap().into_iter().map(|c| c.0).collect();
        assert_eq!(covers, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn three_edge_path_cover_ideal() {
        let h = WeightedHypergraph::unweighted(5, &[&[0, 1], &[1, 2, 3], &[3, 4]]).unwrap();
        let i = kcover_ideal(&h, 1).unwrap();
        assert_eq!(i.to_string(), "(x1*x4, x2*x4, x2*x5, x1*x3*x5)");
        let covers: Vec<Vec<u32>> = minimal_kcovers(&h, 1).unwrap().into_iter().map(|c| c.0).collect();
        assert_eq!(covers, exps(&i));
    }

    #[test]
    fn four_cycle_covers() {
        let h = WeightedHypergraph::unweighted(4, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]).unwrap();
        assert_eq!(kcover_ideal(&h, 1).unwrap().to_string(), "(x1*x3, x2*x4)");
        let covers: Vec<Vec<u32>> = minimal_kcovers(&h, 1).unwrap().into_iter().map(|c| c.0).collect();
        assert_eq!(covers, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn path_routes_agree() {
        let h = WeightedHypergraph::unweighted(5, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4]]).unwrap();
        let covers: Vec<Vec<u32>> = minimal_kcovers(&h, 1).unwrap().into_iter().map(|c| c.0).collect();
        assert_eq!(covers, exps(&kcover_ideal(&h, 1).unwrap()));
    }

    #[test]
    fn isolated_vertices_stay_zero() {
        let h = WeightedHypergraph::new(4, vec![(vec![0, 1], 2)]).unwrap();
        let covers = minimal_kcovers(&h, 1).unwrap();
        assert!(covers.iter().all(|c| c.0[2] == 0 && c.0[3] == 0));
        assert_eq!(covers.len(), 3);
    }

    #[test]
    fn zero_k_rejected() {
        let h = WeightedHypergraph::unweighted(2, &[&[0, 1]]).unwrap();
        assert_eq!(kcover_ideal(&h, 0), Err(Error::ZeroPower));
        assert_eq!(minimal_kcovers(&h, 0), Err(Error::ZeroPower));
    }

    #[test]
    fn json_uses_one_based_vertices() {
        let h = WeightedHypergraph::new(3, vec![(vec![0, 2], 2)]).unwrap();
        let json = serde_json::to_value(&h).unwrap();
        assert_eq!(json, serde_json::json!({"n": 3, "edges": [{"vertices": [1, 3], "weight": 2}]}));
        let back: WeightedHypergraph = serde_json::from_value(json).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<WeightedHypergraph>(r#"{"n":2,"edges":[{"vertices":[0],"weight":1}]}"#).is_err());
        assert!(serde_json::from_str::<WeightedHypergraph>(r#"{"n":2,"edges":[{"vertices":[],"weight":1}]}"#).is_err());
    }
}
