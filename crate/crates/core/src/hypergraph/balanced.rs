use std::fmt;

use serde::Serialize;

use super::WeightedHypergraph;
use crate::bounds::{ensure, Bounds};
use crate::error::Result;
use crate::monomial::Var;

/// `v_1, J_1, v_2, ..., v_s, J_s, v_1` with `v_i, v_{i+1} ∈ J_i` and no
/// `J_i` holding a third cycle vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialCycle {
    pub vertices: Vec<Var>,
    /// 1-based edge positions in the hypergraph.
    pub edges: Vec<usize>,
}

impl SpecialCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for SpecialCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, e) in self.vertices.iter().zip(&self.edges) {
            write!(f, "{v} -J{e}- ")?;
        }
        write!(f, "{}", self.vertices[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Balance {
    pub totally_balanced: bool,
    pub special_cycle: Option<SpecialCycle>,
}

pub fn is_totally_balanced(h: &WeightedHypergraph) -> Result<Balance> {
    is_totally_balanced_with(h, &Bounds::default())
}

/// Exhaustive depth-first search for a special cycle of length at least
/// four. The cycle's smallest vertex is taken as its starting point.
pub fn is_totally_balanced_with(h: &WeightedHypergraph, bounds: &Bounds) -> Result<Balance> {
    ensure("edge count", h.edges().len(), bounds.edges)?;
    ensure("vertex count", h.n(), bounds.vertices)?;
    let mut search = CycleSearch {
        h,
        vertices: Vec::new(),
        edges: Vec::new(),
        used_edge: vec![false; h.edges().len()],
        used_vertex: vec![false; h.n()],
    };
    for start in 0..h.n() {
        search.vertices.push(start);
        search.used_vertex[start] = true;
        let found = search.extend();
        search.vertices.pop();
        search.used_vertex[start] = false;
        if let Some(cycle) = found {
            return Ok(Balance {
                totally_balanced: false,
                special_cycle: Some(cycle),
            });
        }
    }
    Ok(Balance {
        totally_balanced: true,
        special_cycle: None,
    })
}

struct CycleSearch<'a> {
    h: &'a WeightedHypergraph,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    used_edge: Vec<bool>,
    used_vertex: Vec<bool>,
}

impl CycleSearch<'_> {
    /// Number of current cycle vertices lying in edge `e`.
    fn hits(&self, e: usize) -> usize {
        let edge = &self.h.edges()[e];
        self.vertices.iter().filter(|&&v| edge.contains(v)).count()
    }

    fn extend(&mut self) -> Option<SpecialCycle> {
        let start = self.vertices[0];
        let cur = *self.vertices.last().expect("non-empty path");
        for e in 0..self.h.edges().len() {
            if self.used_edge[e] || !self.h.edges()[e].contains(cur) {
                continue;
            }
            let edge = &self.h.edges()[e];
            // Closing edge: holds cur and start and nothing else from the cycle.
            if self.vertices.len() >= 4 && edge.contains(start) && self.hits(e) == 2 {
                let mut edges = self.edges.clone();
                edges.push(e);
                return Some(SpecialCycle {
                    vertices: self.vertices.iter().map(|&v| Var(v)).collect(),
                    edges: edges.into_iter().map(|k| k + 1).collect(),
                });
            }
            // An open edge may only touch cur among the cycle vertices so far.
            if self.hits(e) != 1 {
                continue;
            }
            for &w in edge.vertices() {
                if w <= start || self.used_vertex[w] {
                    continue;
                }
                // The new vertex must avoid every earlier cycle edge.
                if self.edges.iter().any(|&f| self.h.edges()[f].contains(w)) {
                    continue;
                }
                self.vertices.push(w);
                self.used_vertex[w] = true;
                self.edges.push(e);
                self.used_edge[e] = true;
                let found = self.extend();
                self.vertices.pop();
                self.used_vertex[w] = false;
                self.edges.pop();
                self.used_edge[e] = false;
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
}
