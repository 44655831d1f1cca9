//! Isomorphism-type data for finite abelian groups.
//!
//! A concrete group is given either as an arbitrary list of cyclic orders
//! ([`CyclicDecomposition`]) or in invariant factor form
//! ([`InvariantFactorForm`], `n_{i+1} | n_i`). An abelian p-group of order
//! `p^n` is a partition of `n` ([`PGroupPartition`]); the prime stays
//! symbolic unless one is attached.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Prime factorisation `p -> e` of `n >= 1`, by trial division.
pub fn factorize(n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut rest = n;
    let mut p = 2u64;
    while p <= rest / p {
        while rest.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        *out.entry(rest).or_insert(0) += 1;
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).get(&n) == Some(&1)
}

fn checked_prime_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::overflow(format!("{p}^{e}")))
}

/// Cyclic orders `Z_{n_1} + ... + Z_{n_k}` in any order; empty is the trivial
/// group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct CyclicDecomposition {
    orders: Vec<u64>,
}

impl CyclicDecomposition {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidInput(format!(
                "cyclic orders must be at least 2, got {bad}"
            )));
        }
        Ok(CyclicDecomposition { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Primary data of the group: for each prime, the multiset of exponents of
    /// its prime-power cyclic summands, as a partition.
    pub fn primary_parts(&self) -> BTreeMap<u64, PGroupPartition> {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in &self.orders {
            for (p, e) in factorize(n) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        by_prime
            .into_iter()
            .map(|(p, parts)| (p, PGroupPartition::from_unsorted(parts)))
            .collect()
    }
}

impl TryFrom<Vec<u64>> for CyclicDecomposition {
    type Error = Error;

    fn try_from(orders: Vec<u64>) -> Result<Self> {
        CyclicDecomposition::new(orders)
    }
}

impl From<CyclicDecomposition> for Vec<u64> {
    fn from(g: CyclicDecomposition) -> Vec<u64> {
        g.orders
    }
}

impl From<InvariantFactorForm> for CyclicDecomposition {
    fn from(g: InvariantFactorForm) -> Self {
        CyclicDecomposition { orders: g.factors }
    }
}

/// `Z_{n_1} + ... + Z_{n_k}` with every `n_i >= 2` and `n_{i+1} | n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct InvariantFactorForm {
    factors: Vec<u64>,
}

impl InvariantFactorForm {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidInput(format!(
                "invariant factors must be at least 2, got {bad}"
            )));
        }
        if let Some(w) = factors.windows(2).find(|w| w[0] % w[1] != 0) {
            return Err(Error::InvalidInput(format!(
                "invariant factors must form a divisibility chain: {} does not divide {}",
                w[1], w[0]
            )));
        }
        Ok(InvariantFactorForm { factors })
    }

    pub fn trivial() -> Self {
        InvariantFactorForm {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of invariant factors (the minimal number of generators).
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> FactoredOrder {
        let mut order = FactoredOrder::one();
        for &n in &self.factors {
            for (p, e) in factorize(n) {
                order.add(p, u128::from(e));
            }
        }
        order
    }
}

impl TryFrom<Vec<u64>> for InvariantFactorForm {
    type Error = Error;

    fn try_from(factors: Vec<u64>) -> Result<Self> {
        InvariantFactorForm::new(factors)
    }
}

impl From<InvariantFactorForm> for Vec<u64> {
    fn from(g: InvariantFactorForm) -> Vec<u64> {
        g.factors
    }
}

impl fmt::Display for InvariantFactorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.factors)
    }
}

impl fmt::Display for CyclicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.orders)
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str("]")
}

/// An abelian p-group `Z_{p^a_1} + ... + Z_{p^a_k}`, `a_1 >= ... >= a_k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PGroupPartition {
    parts: Vec<u32>,
    /// Concrete prime, if one is attached; arithmetic never depends on it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
}

impl PGroupPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(PGroupPartition { parts, prime: None })
    }

    /// Sorts the parts decreasingly and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&a| a > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PGroupPartition { parts, prime: None }
    }

    /// `(t+1, 1^(n-t-1))`, the group `Z_{p^(t+1)} + Z_p^(n-t-1)`.
    pub fn hook(n: u32, t: u32) -> Result<Self> {
        if t >= n {
            return Err(Error::Domain(format!(
                "need 0 <= t < n, got t = {t}, n = {n}"
            )));
        }
        let mut parts = vec![t + 1];
        parts.extend(std::iter::repeat_n(1, (n - t - 1) as usize));
        Ok(PGroupPartition { parts, prime: None })
    }

    /// `(1^n)`, the elementary abelian group of order `p^n`.
    pub fn elementary(n: u32) -> Self {
        PGroupPartition {
            parts: vec![1; n as usize],
            prime: None,
        }
    }

    pub fn with_prime(mut self, p: u64) -> Self {
        self.prime = Some(p);
        self
    }

    pub fn symbolic(mut self) -> Self {
        self.prime = None;
        self
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of cyclic summands `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Invariant factors `p^a_1, ..., p^a_k` at the prime `p`.
    pub fn at_prime(&self, p: u64) -> Result<InvariantFactorForm> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let factors = self
            .parts
            .iter()
            .map(|&a| checked_prime_power(p, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(InvariantFactorForm { factors })
    }
}

impl fmt::Display for PGroupPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// `n = a_1 + ... + a_k`, so the group has order `p^n`.
pub fn order_exponent(g: &PGroupPartition) -> u32 {
    g.parts.iter().sum()
}

/// Group order as prime exponents; never expanded to an integer.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactoredOrder(BTreeMap<u64, u128>);

impl FactoredOrder {
    pub fn one() -> Self {
        FactoredOrder(BTreeMap::new())
    }

    /// Multiplies by `p^e`; zero exponents leave the value unchanged.
    pub fn add(&mut self, p: u64, e: u128) {
        if e > 0 {
            *self.0.entry(p).or_insert(0) += e;
        }
    }

    pub fn checked_add(&mut self, p: u64, e: u128) -> Result<()> {
        if e > 0 {
            let slot = self.0.entry(p).or_insert(0);
            *slot = slot
                .checked_add(e)
                .ok_or_else(|| Error::overflow(format!("exponent of {p}")))?;
        }
        Ok(())
    }

    pub fn exponent(&self, p: u64) -> u128 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u128)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }
}

impl fmt::Display for FactoredOrder {
    /// `2^3 · 3`; `1` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" · ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Invariant factor form of an arbitrary cyclic decomposition: `n_j` is the
/// product over primes of the `j`-th largest prime-power summand.
pub fn canonicalize(g: &CyclicDecomposition) -> Result<InvariantFactorForm> {
    recompose(&g.primary_parts())
}

/// Splits each invariant factor into its p-parts.
pub fn primary_decompose(g: &InvariantFactorForm) -> BTreeMap<u64, PGroupPartition> {
    CyclicDecomposition::from(g.clone()).primary_parts()
}

/// Inverse of [`primary_decompose`]: multiplies the `j`-th parts of every
/// prime together.
pub fn recompose(parts: &BTreeMap<u64, PGroupPartition>) -> Result<InvariantFactorForm> {
    let k = parts.values().map(PGroupPartition::len).max().unwrap_or(0);
    let mut factors = vec![1u64; k];
    for (&p, partition) in parts {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        for (slot, &a) in factors.iter_mut().zip(&partition.parts) {
            *slot = slot
                .checked_mul(checked_prime_power(p, a)?)
                .ok_or_else(|| Error::overflow("invariant factor"))?;
        }
    }
    Ok(InvariantFactorForm { factors })
}

/// All partitions of `n` in reverse-lexicographic order, starting at `(n)`.
pub fn partitions(n: u32) -> Partitions {
    Partitions {
        current: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// Iterator returned by [`partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = PGroupPartition;

    fn next(&mut self) -> Option<PGroupPartition> {
        let out = self.current.take()?;
        // Successor: decrement the rightmost part above 1 and refill greedily.
        if let Some(i) = out.iter().rposition(|&a| a > 1) {
            let mut next = out[..i].to_vec();
            let v = out[i] - 1;
            let mut rest: u32 = out[i + 1..].iter().sum::<u32>() + v + 1;
            while rest > 0 {
                let part = v.min(rest);
                next.push(part);
                rest -= part;
            }
            self.current = Some(next);
        }
        Some(PGroupPartition {
            parts: out,
            prime: None,
        })
    }
}

/// A group as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// `4,2,2`
    Concrete(CyclicDecomposition),
    /// `p^3,p,p`
    Symbolic(PGroupPartition),
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts comma-separated cyclic orders, or `p`-powers such as
    /// `p^3,p,p` (in any order). The empty string is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let items = split_items(s);
        if !items.is_empty() && items.iter().all(|t| t.starts_with('p')) {
            let parts = items
                .iter()
                .map(|t| parse_p_power(t))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Symbolic(PGroupPartition::from_unsorted(parts)));
        }
        let orders = items
            .iter()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("'{t}' is not a cyclic order")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec::Concrete(CyclicDecomposition::new(orders)?))
    }
}

fn split_items(s: &str) -> Vec<&str> {
    let s = s.trim();
    if s.is_empty() {
        return Vec::new();
    }
    s.split(',').map(str::trim).collect()
}

fn parse_p_power(token: &str) -> Result<u32> {
    let bad = || Error::Parse(format!("'{token}' is not of the form p or p^e"));
    match token.strip_prefix('p').ok_or_else(bad)? {
        "" => Ok(1),
        rest => {
            let e: u32 = rest
                .strip_prefix('^')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            if e == 0 {
                return Err(bad());
            }
            Ok(e)
        }
    }
}

/// Parses a bare partition such as `3,1,1`; parts must be weakly decreasing.
pub fn parse_partition(s: &str) -> Result<PGroupPartition> {
    let parts = split_items(s)
        .iter()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("'{t}' is not a partition part")))
        })
        .collect::<Result<Vec<_>>>()?;
    PGroupPartition::new(parts)
}
