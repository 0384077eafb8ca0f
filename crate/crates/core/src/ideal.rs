//! Monomial ideals stored by their minimal generating set `G(I)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::{ensure, Bounds};
use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};

/// A monomial ideal in `n` variables, held as the divisibility antichain of
/// its minimal generators in canonical order. The zero ideal has no
/// generators; the unit ideal is generated by `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    n: usize,
    generators: Vec<Vec<u32>>,
}

/// `{"n": 3, "generators": [[2, 0, 0], [1, 1, 0]]}`; reading minimalizes.
impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            n: self.n,
            generators: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        Self::from_exponents(w.n, w.generators).map_err(serde::de::Error::custom)
    }
}

impl MonomialIdeal {
    /// Reduces an arbitrary generating list to `G(I)`.
    pub fn minimalize(gens: impl IntoIterator<Item = Monomial>, n: usize) -> Result<Self> {
        let mut all: Vec<Monomial> = Vec::new();
        for g in gens {
            if g.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: g.n() });
            }
            all.push(g);
        }
        all.sort();
        all.dedup();
        // A proper divisor has strictly smaller degree, so it sorts earlier.
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        for g in all {
            if !kept.iter().any(|h| h.divides_unchecked(&g)) {
                kept.push(g);
            }
        }
        Ok(Self { n, gens: kept })
    }

    pub fn from_exponents(n: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        Self::minimalize(rows.into_iter().map(Monomial::new), n)
    }

    /// Parses a comma-separated list of rendered monomials, e.g. `x1^2, x1*x2`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let gens = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| Monomial::parse(t, n))
            .collect::<Result<Vec<_>>>()?;
        Self::minimalize(gens, n)
    }

    pub fn zero(n: usize) -> Self {
        Self { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn principal(m: Monomial) -> Self {
        Self { n: m.n(), gens: vec![m] }
    }

    /// `𝔪 = (x1, ..., xn)`.
    pub fn maximal_ideal(n: usize) -> Self {
        Self {
            n,
            gens: (0..n).map(|i| Monomial::var(i, n)).collect(),
        }
    }

    /// All monomials of degree `a` supported on the 0-based variable set `vars`.
    pub fn veronese(vars: &[usize], a: u32, n: usize) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::EmptySupport);
        }
        if a == 0 {
            return Err(Error::ZeroPower);
        }
        if let Some(&bad) = vars.iter().find(|&&v| v >= n) {
            return Err(Error::VariableOutOfRange { index: bad + 1, n });
        }
        let vars: BTreeSet<usize> = vars.iter().copied().collect();
        let vars: Vec<usize> = vars.into_iter().collect();
        Self::minimalize(monomials_of_degree(&vars, a, n), n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// Same as [`is_zero`](Self::is_zero): no generators.
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_generator(&self, m: &Monomial) -> bool {
        self.gens.binary_search(m).is_ok()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.gens.first().map(Monomial::degree)
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.gens.last().map(Monomial::degree)
    }

    /// Returns the common degree, or the first pair of distinct degrees.
    pub fn equigenerated_degree(&self) -> Result<Option<u64>> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) if lo != hi => Err(Error::NotEquigenerated { first: lo, second: hi }),
            (lo, _) => Ok(lo),
        }
    }

    fn same_ambient(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::AmbientMismatch { left: self.n, right: n })
        }
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        self.same_ambient(m.n())?;
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// `I ⊆ J` by checking every generator of `I`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.same_ambient(other.n)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.intersect_capped(other, Bounds::default().product)
    }

    /// `G(I ∩ J)` as the minimal pairwise lcms.
    pub fn intersect_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        self.same_ambient(other.n)?;
        ensure("generator pair count", self.len().saturating_mul(other.len()), cap)?;
        let lcms = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.lcm(v)))
            .collect::<Result<Vec<_>>>()?;
        Self::minimalize(lcms, self.n)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.multiply_capped(other, Bounds::default().product)
    }

    pub fn multiply_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        self.same_ambient(other.n)?;
        ensure("generator pair count", self.len().saturating_mul(other.len()), cap)?;
        let products = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.mul(v)))
            .collect::<Result<Vec<_>>>()?;
        Self::minimalize(products, self.n)
    }

    /// `I^k`; `I^0` is the unit ideal.
    pub fn power(&self, k: u32) -> Result<Self> {
        self.power_capped(k, Bounds::default().product)
    }

    pub fn power_capped(&self, k: u32, cap: usize) -> Result<Self> {
        let mut acc = Self::unit(self.n);
        for _ in 0..k {
            acc = acc.multiply_capped(self, cap)?;
        }
        Ok(acc)
    }

    pub fn component(&self, d: u64) -> Result<Self> {
        self.component_with_window(d, Bounds::default().component_window)
    }

    /// `I_<d>`: the ideal generated by the degree-`d` monomials of `I`.
    pub fn component_with_window(&self, d: u64, window: u64) -> Result<Self> {
        let Some(lo) = self.min_degree() else {
            return Ok(Self::zero(self.n));
        };
        if d < lo {
            return Ok(Self::zero(self.n));
        }
        ensure("component degree window", (d - lo) as usize, window as usize)?;
        let all_vars: Vec<usize> = (0..self.n).collect();
        let mut out = BTreeSet::new();
        for g in self.gens.iter().filter(|g| g.degree() <= d) {
            let rest = u32::try_from(d - g.degree()).map_err(|_| Error::Overflow)?;
            for z in monomials_of_degree(&all_vars, rest, self.n) {
                out.insert(g.mul(&z)?);
            }
        }
        // Equal-degree monomials are already an antichain.
        Ok(Self {
            n: self.n,
            gens: out.into_iter().collect(),
        })
    }

    /// `I : m`.
    pub fn colon(&self, m: &Monomial) -> Result<Self> {
        self.same_ambient(m.n())?;
        Self::minimalize(self.gens.iter().map(|g| g.colon_unchecked(m)), self.n)
    }

    /// 0-based indices of variables dividing some generator.
    pub fn support(&self) -> BTreeSet<usize> {
        self.gens.iter().flat_map(|g| g.support().collect::<Vec<_>>()).collect()
    }

    /// Divides every generator by their common gcd; returns `(gcd, I / gcd)`.
    pub fn strip_gcd(&self) -> (Monomial, Self) {
        let Some(first) = self.gens.first() else {
            return (Monomial::one(self.n), self.clone());
        };
        let w = self.gens[1..]
            .iter()
            .fold(first.clone(), |acc, g| acc.gcd(g).expect("same ambient"));
        let gens = self.gens.iter().map(|g| g.colon_unchecked(&w)).collect();
        // Dividing by a common factor preserves both the antichain and the order.
        (w, Self { n: self.n, gens })
    }

    /// Relabels variables by `perm` (variable `i` becomes `perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self::minimalize(self.gens.iter().map(|g| g.permute(perm)), self.n).expect("same ambient")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}
