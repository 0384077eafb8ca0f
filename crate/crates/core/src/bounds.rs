//! Desk-scale limits shared by every bounded operation.
//!
//! Each limit has a default and may be overridden through an environment
//! variable named `MIDK_BOUND_<NAME>`.

use std::env;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Cap on the product of generator counts in `intersect` and `multiply`.
    pub product: usize,
    /// Cap on `d - min generator degree` in `component`.
    pub component_window: u64,
    /// Cap on the support size for the all-orders weak polymatroid search.
    pub weakly_search: usize,
    /// Cap on `|G(I)|` for the linear-quotients backtracking search.
    pub lq_search: usize,
    /// Cap on the size of the lcm closure processed by `betti_table`.
    pub betti_lcm: usize,
    /// Cap on `|G(I)|` for the Taylor-complex Euler characteristic.
    pub taylor: usize,
    /// Cap on edge count for the special-cycle search.
    pub edges: usize,
    /// Cap on vertex count for the special-cycle search.
    pub vertices: usize,
    /// Cap on the number of candidate vectors visited by `minimal_kcovers`.
    pub cover_nodes: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            product: 1_000_000,
            component_window: 6,
            weakly_search: 8,
            lq_search: 14,
            betti_lcm: 4096,
            taylor: 16,
            edges: 10,
            vertices: 12,
            cover_nodes: 50_000_000,
        }
    }
}

const VARS: [&str; 9] = [
    "PRODUCT",
    "COMPONENT_WINDOW",
    "WEAKLY_SEARCH",
    "LQ_SEARCH",
    "BETTI_LCM",
    "TAYLOR",
    "EDGES",
    "VERTICES",
    "COVER_NODES",
];

impl Bounds {
    /// Defaults overridden by any `MIDK_BOUND_*` variables that are set.
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|key| env::var(key).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let mut bounds = Self::default();
        for name in VARS {
            let key = format!("MIDK_BOUND_{name}");
            let Some(raw) = lookup(&key) else { continue };
            let value: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{key}={raw:?} is not a non-negative integer")))?;
            match name {
                "PRODUCT" => bounds.product = value,
                "COMPONENT_WINDOW" => bounds.component_window = value as u64,
                "WEAKLY_SEARCH" => bounds.weakly_search = value,
                "LQ_SEARCH" => bounds.lq_search = value,
                "BETTI_LCM" => bounds.betti_lcm = value,
                "TAYLOR" => bounds.taylor = value,
                "EDGES" => bounds.edges = value,
                "VERTICES" => bounds.vertices = value,
                "COVER_NODES" => bounds.cover_nodes = value,
                _ => unreachable!(),
            }
        }
        Ok(bounds)
    }
}

pub(crate) fn ensure(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::BoundExceeded { what, value, limit })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_overrides_single_field() {
        let b = Bounds::from_lookup(|k| (k == "MIDK_BOUND_LQ_SEARCH").then(|| "9".to_string())).unwrap();
        assert_eq!(b.lq_search, 9);
        assert_eq!(b.product, Bounds::default().product);
    }

    #[test]
    fn malformed_value_is_rejected() {
        let err = Bounds::from_lookup(|k| (k == "MIDK_BOUND_EDGES").then(|| "ten".to_string()));
        assert!(matches!(err, Err(Error::Parse(_))));
    }
}
