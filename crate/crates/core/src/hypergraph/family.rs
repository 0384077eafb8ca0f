//! Structured edge families and the vertex partitions they induce.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exchange::VariableOrder;
use crate::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `J_i ∩ J_j = ∩_t J_t` for all `i < j`, plus a disjoint `K`.
    Sunflower,
    /// Three edges with `J_1 ∩ J_3 = ∅`.
    ThreeEdge,
    /// Four edges forming a path of overlapping blocks.
    PathFour,
    /// Three edges with `J_1 ∩ J_3 = ∅` and `J_2 ⊆ J_1 ∪ J_3`.
    PathThree,
}

/// Named, pairwise disjoint vertex blocks; vertices in no block form the
/// remainder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePartition {
    pub kind: FamilyKind,
    pub n: usize,
    pub blocks: Vec<(String, Vec<usize>)>,
}

impl EdgePartition {
    fn new(kind: FamilyKind, n: usize, blocks: Vec<(String, BTreeSet<usize>)>) -> Self {
        Self {
            kind,
            n,
            blocks: blocks
                .into_iter()
                .map(|(name, set)| (name, set.into_iter().collect()))
                .collect(),
        }
    }

    pub fn block(&self, name: &str) -> Option<&[usize]> {
        self.blocks.iter().find(|(b, _)| b == name).map(|(_, v)| v.as_slice())
    }

    /// Vertices not in any block, ascending.
    pub fn remainder(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.blocks.iter().flat_map(|(_, v)| v.iter().copied()).collect();
        (0..self.n).filter(|v| !used.contains(v)).collect()
    }
}

impl fmt::Display for EdgePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, vs) in &self.blocks {
            let shown: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, "{name} = {{{}}}; ", shown.join(","))?;
        }
        let rest: Vec<String> = self.remainder().iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "rest = {{{}}}", rest.join(","))
    }
}

fn to_set(vs: &[usize], n: usize, label: &str) -> Result<BTreeSet<usize>> {
    if let Some(&bad) = vs.iter().find(|&&v| v >= n) {
        return Err(Error::VariableOutOfRange { index: bad + 1, n });
    }
    let set: BTreeSet<usize> = vs.iter().copied().collect();
    if set.is_empty() && label != "K" {
        return Err(Error::Hypothesis(format!("{label} is empty")));
    }
    Ok(set)
}

fn show(set: &BTreeSet<usize>) -> String {
    let vs: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", vs.join(","))
}

/// Checks `J_i ∩ J_j = ∩_t J_t` for all `i < j` and `K ∩ J_t = ∅`, and
/// returns the blocks `A_1, ..., A_s, B, K` with `B = ∩_t J_t` and
/// `A_t = J_t ∖ B`. An empty `K` drops the `K` term.
pub fn validate_sunflower(edges: &[Vec<usize>], k: &[usize], n: usize) -> Result<EdgePartition> {
    if edges.is_empty() {
        return Err(Error::Hypothesis("a sunflower needs at least one edge".into()));
    }
    let sets = edges
        .iter()
        .enumerate()
        .map(|(t, e)| to_set(e, n, &format!("J{}", t + 1)))
        .collect::<Result<Vec<_>>>()?;
    let k = to_set(k, n, "K")?;
    let core: BTreeSet<usize> = sets[1..]
        .iter()
        .fold(sets[0].clone(), |acc, s| acc.intersection(s).copied().collect());
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let meet: BTreeSet<usize> = sets[i].intersection(&sets[j]).copied().collect();
            if meet != core {
                return Err(Error::Hypothesis(format!(
                    "J{} ∩ J{} = {} differs from the common core {}",
                    i + 1,
                    j + 1,
                    show(&meet),
                    show(&core)
                )));
            }
        }
    }
    for (t, s) in sets.iter().enumerate() {
        if let Some(v) = s.intersection(&k).next() {
            return Err(Error::Hypothesis(format!("K meets J{} at vertex {}", t + 1, v + 1)));
        }
    }
    let mut blocks: Vec<(String, BTreeSet<usize>)> = sets
        .iter()
        .enumerate()
        .map(|(t, s)| (format!("A{}", t + 1), s.difference(&core).copied().collect()))
        .collect();
    blocks.push(("B".into(), core));
    blocks.push(("K".into(), k));
    Ok(EdgePartition::new(FamilyKind::Sunflower, n, blocks))
}

fn disjoint(a: &BTreeSet<usize>, b: &BTreeSet<usize>, label: &str) -> Result<()> {
    match a.intersection(b).next() {
        None => Ok(()),
        Some(v) => Err(Error::Hypothesis(format!("{label} ≠ ∅ (contains {})", v + 1))),
    }
}

fn covered(a: &BTreeSet<usize>, by: &[&BTreeSet<usize>], label: &str) -> Result<()> {
    match a.iter().find(|v| !by.iter().any(|s| s.contains(v))) {
        None => Ok(()),
        Some(v) => Err(Error::Hypothesis(format!("{label} fails at vertex {}", v + 1))),
    }
}

fn diff(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.difference(b).copied().collect()
}

fn meet(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.intersection(b).copied().collect()
}

/// Four edges: `J_1 ∩ J_3 = J_1 ∩ J_4 = J_2 ∩ J_4 = ∅`, `J_2 ⊆ J_1 ∪ J_3`,
/// `J_3 ⊆ J_2 ∪ J_4`; blocks `J'_t = J_t ∩ J_{t+1}`, `J''_1 = J_1 ∖ J_2`,
/// `J''_4 = J_4 ∖ J_3`. Three edges: `J_1 ∩ J_3 = ∅`, `J_2 ⊆ J_1 ∪ J_3`;
/// blocks `J'_1, J'_2, J''_1, J''_3`.
pub fn validate_path_family(edges: &[Vec<usize>], n: usize) -> Result<EdgePartition> {
    let sets = edges
        .iter()
        .enumerate()
        .map(|(t, e)| to_set(e, n, &format!("J{}", t + 1)))
        .collect::<Result<Vec<_>>>()?;
    match sets.as_slice() {
        [j1, j2, j3, j4] => {
            disjoint(j1, j3, "J1 ∩ J3")?;
            disjoint(j1, j4, "J1 ∩ J4")?;
            disjoint(j2, j4, "J2 ∩ J4")?;
            covered(j2, &[j1, j3], "J2 ⊆ J1 ∪ J3")?;
            covered(j3, &[j2, j4], "J3 ⊆ J2 ∪ J4")?;
            Ok(EdgePartition::new(
                FamilyKind::PathFour,
                n,
                vec![
                    ("J'1".into(), meet(j1, j2)),
                    ("J'2".into(), meet(j2, j3)),
                    ("J'3".into(), meet(j3, j4)),
                    ("J''1".into(), diff(j1, j2)),
                    ("J''4".into(), diff(j4, j3)),
                ],
            ))
        }
        [j1, j2, j3] => {
            disjoint(j1, j3, "J1 ∩ J3")?;
            covered(j2, &[j1, j3], "J2 ⊆ J1 ∪ J3")?;
            Ok(EdgePartition::new(
                FamilyKind::PathThree,
                n,
                vec![
                    ("J'1".into(), meet(j1, j2)),
                    ("J'2".into(), meet(j2, j3)),
                    ("J''1".into(), diff(j1, j2)),
                    ("J''3".into(), diff(j3, j2)),
                ],
            ))
        }
        _ => Err(Error::Hypothesis(format!(
            "a path family has three or four edges, got {}",
            sets.len()
        ))),
    }
}

/// Blocks `J'_1, J''_1, J'_2, J''_3, J''_2` of three edges with
/// `J_1 ∩ J_3 = ∅`, listed in the order used by [`three_edge_order`].
pub fn three_edge_partition(j1: &[usize], j2: &[usize], j3: &[usize], n: usize) -> Result<EdgePartition> {
    let (j1, j2, j3) = (to_set(j1, n, "J1")?, to_set(j2, n, "J2")?, to_set(j3, n, "J3")?);
    disjoint(&j1, &j3, "J1 ∩ J3")?;
    let outer: BTreeSet<usize> = j1.union(&j3).copied().collect();
    Ok(EdgePartition::new(
        FamilyKind::ThreeEdge,
        n,
        vec![
            ("J'1".into(), meet(&j1, &j2)),
            ("J''1".into(), diff(&j1, &j2)),
            ("J'2".into(), meet(&j2, &j3)),
            ("J''3".into(), diff(&j3, &j2)),
            ("J''2".into(), diff(&j2, &outer)),
        ],
    ))
}

/// Variables block by block in the order `J'_1, J''_1, J'_2, J''_3, J''_2`,
/// then the remaining variables; earlier means larger, ascending index
/// within a block.
pub fn three_edge_order(j1: &[usize], j2: &[usize], j3: &[usize], n: usize) -> Result<VariableOrder> {
    let part = three_edge_partition(j1, j2, j3, n)?;
    let mut order: Vec<usize> = part.blocks.iter().flat_map(|(_, vs)| vs.iter().copied()).collect();
    order.extend(part.remainder());
    VariableOrder::new(order, n)
}

/// Degree of a monomial restricted to each block, plus the remainder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDegrees {
    pub blocks: Vec<(String, u64)>,
    pub rest: u64,
}

impl BlockDegrees {
    pub fn get(&self, name: &str) -> u64 {
        self.blocks
            .iter()
            .find(|(b, _)| b == name)
            .map(|&(_, d)| d)
            .unwrap_or_else(|| panic!("no block named {name}"))
    }

    pub fn total(&self) -> u64 {
        self.blocks.iter().map(|(_, d)| d).sum::<u64>() + self.rest
    }
}

pub fn factor_degrees(part: &EdgePartition, m: &Monomial) -> Result<BlockDegrees> {
    if m.n() != part.n {
        return Err(Error::AmbientMismatch {
            left: part.n,
            right: m.n(),
        });
    }
    let deg = |vs: &[usize]| vs.iter().map(|&v| u64::from(m.exponent(v))).sum::<u64>();
    Ok(BlockDegrees {
        blocks: part.blocks.iter().map(|(name, vs)| (name.clone(), deg(vs))).collect(),
        rest: deg(&part.remainder()),
    })
}

impl fmt::Display for BlockDegrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, d) in &self.blocks {
            write!(f, "{name}:{d} ")?;
        }
        write!(f, "rest:{}", self.rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    #[test]
    fn sunflower_examples() {
        let p = validate_sunflower(&[vec![0, 1], vec![0, 2]], &[3], 4).unwrap();
        assert_eq!(p.block("B"), Some(&[0][..]));
        assert_eq!(p.block("A1"), Some(&[1][..]));
        assert_eq!(p.block("K"), Some(&[3][..]));
        assert!(validate_sunflower(&[vec![0, 1], vec![1, 2], vec![0, 2]], &[], 3).is_err());
        let err = validate_sunflower(&[vec![0, 1], vec![0, 2]], &[2], 4).unwrap_err();
        assert!(err.to_string().contains("K meets J2"));
    }

    #[test]
    fn path_family_examples() {
        let p = validate_path_family(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]], 5).unwrap();
        assert_eq!(p.kind, FamilyKind::PathFour);
        assert_eq!(p.block("J'2"), Some(&[2][..]));
        let err = validate_path_family(&[vec![0, 1], vec![1, 2], vec![2, 3, 4], vec![4, 5]], 6).unwrap_err();
        assert!(err.to_string().contains("J3 ⊆ J2 ∪ J4"), "{err}");
        assert!(validate_path_family(&[vec![0], vec![1], vec![2], vec![3]], 4).is_err());
        let three = validate_path_family(&[vec![0, 1], vec![1, 2], vec![2, 3]], 4).unwrap();
        assert_eq!(three.kind, FamilyKind::PathThree);
        let err = validate_path_family(&[vec![0, 1], vec![1, 2, 3], vec![3, 4]], 5).unwrap_err();
        assert!(err.to_string().contains("J2 ⊆ J1 ∪ J3"));
    }

    #[test]
    fn three_edge_order_examples() {
        let o = three_edge_order(&[0, 1], &[1, 2, 3], &[3, 4], 5).unwrap();
        assert_eq!(o.to_string(), "x2 > x1 > x4 > x5 > x3");
        let o = three_edge_order(&[0], &[1], &[2], 3).unwrap();
        assert_eq!(o.to_string(), "x1 > x3 > x2");
        assert!(three_edge_order(&[0, 1], &[1], &[1, 2], 3).is_err());
        let o = three_edge_order(&[0], &[1], &[2], 5).unwrap();
        assert_eq!(o.to_string(), "x1 > x3 > x2 > x4 > x5");
    }

    #[test]
    fn factor_degree_examples() {
        let p = validate_sunflower(&[vec![0, 1], vec![0, 2]], &[3], 4).unwrap();
        let d = factor_degrees(&p, &m("x1*x2*x4", 4)).unwrap();
        assert_eq!((d.get("A1"), d.get("A2"), d.get("B"), d.get("K"), d.rest), (1, 0, 1, 1, 0));
        let d = factor_degrees(&p, &Monomial::one(4)).unwrap();
        assert_eq!(d.total(), 0);
        let q = validate_path_family(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]], 5).unwrap();
        let d = factor_degrees(&q, &m("x2*x4", 5)).unwrap();
        assert_eq!(
            (d.get("J'1"), d.get("J'2"), d.get("J'3"), d.get("J''1"), d.get("J''4")),
            (1, 0, 1, 0, 0)
        );
        assert!(factor_degrees(&q, &m("x1", 3)).is_err());
    }
}
