//! Monomials as dense exponent vectors.
//!
//! Variables are 0-indexed internally and rendered 1-indexed (`x1..xn`).
//! The `Ord` impl is the canonical generator order used everywhere: total
//! degree first, then lexicographic with `x1 > x2 > ... > xn`, so `x1^2`
//! precedes `x1*x2` precedes `x2^2`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// The variable with 0-based index `i`.
    pub fn var(i: usize, n: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Self { exps }
    }

    /// Builds a monomial from `(variable, exponent)` pairs with 1-based indices.
    pub fn from_powers(n: usize, powers: &[(usize, u32)]) -> Result<Self> {
        let mut exps = vec![0u32; n];
        for &(var, e) in powers {
            if var == 0 || var > n {
                return Err(Error::VariableOutOfRange { index: var, n });
            }
            exps[var - 1] = exps[var - 1].checked_add(e).ok_or(Error::Overflow)?;
        }
        Ok(Self { exps })
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// 0-based indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub(crate) fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    /// `self | other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(self.zip_with(other, |a, b| a.max(b)))
    }

    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(self.zip_with(other, |a, b| a.min(b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { exps })
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Self) -> Result<Option<Self>> {
        self.same_ambient(other)?;
        if !other.divides_unchecked(self) {
            return Ok(None);
        }
        Ok(Some(self.zip_with(other, |a, b| a - b)))
    }

    /// `self / gcd(self, other)`; the generator of `(self) : other`.
    pub(crate) fn colon_unchecked(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.saturating_sub(b))
    }

    /// `x_i * self / x_j` (0-based indices), or `None` when `x_j` does not
    /// divide `self`. With `i == j` this is `self`.
    pub fn exchange(&self, i: usize, j: usize) -> Result<Option<Self>> {
        if self.exps[j] == 0 {
            return Ok(None);
        }
        let mut exps = self.exps.clone();
        exps[j] -= 1;
        exps[i] = exps[i].checked_add(1).ok_or(Error::Overflow)?;
        Ok(Some(Self { exps }))
    }

    /// Relabels variables: the exponent of variable `i` moves to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut exps = vec![0; self.n()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Self { exps }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        Self {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Parses the human rendering, e.g. `x1^2*x3` or `1`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one(n));
        }
        let mut powers = Vec::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let body = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("factor {factor:?} does not start with 'x'")))?;
            let (var, exp) = match body.split_once('^') {
                Some((v, e)) => (v, e),
                None => (body, "1"),
            };
            let var: usize = var
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable index in {factor:?}")))?;
            let exp: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
            powers.push((var, exp));
        }
        Self::from_powers(n, &powers)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A variable, 0-based internally; serialized and displayed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0 as u64 + 1)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = u64::deserialize(d)?;
        if raw == 0 {
            return Err(serde::de::Error::custom("variable indices start at 1"));
        }
        Ok(Var(raw as usize - 1))
    }
}

/// All monomials of total degree `d` in the given 0-based variables.
pub(crate) fn monomials_of_degree(vars: &[usize], d: u32, n: usize) -> Vec<Monomial> {
    fn rec(vars: &[usize], d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars {
            [] => {
                if d == 0 {
                    out.push(Monomial::new(cur.clone()));
                }
            }
            [last] => {
                cur[*last] = d;
                out.push(Monomial::new(cur.clone()));
                cur[*last] = 0;
            }
            [first, rest @ ..] => {
                for e in (0..=d).rev() {
                    cur[*first] = e;
                    rec(rest, d - e, cur, out);
                }
                cur[*first] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut vec![0; n], &mut out);
    out
}
