//! Exhaustive desk-scale verification.
//!
//! Everything here reports what it finds. Claims are checked by scanning all
//! partitions of `n` (all abelian groups of order `p^n`), and each case is
//! recorded as [`Status::Confirmed`] or [`Status::Counterexample`] together
//! with the full solution set, never just the first hit.
//!
//! The scans cover:
//!
//! - the order bound `|M^(c)(G)| <= p^witt(c+1, n)` and whether the elementary
//!   abelian group is its unique maximiser ([`bound_check`]);
//! - the classification of abelian p-groups with `|M^(c)(G)| = p^witt(c+1, n-t)`
//!   ([`theorem34_report`]);
//! - auxiliary inequalities: `i * b_i < b_{i+1}` ([`lemma_check`]),
//!   `t + j + 2 <= 2 (n-t-1) ... (n-t-j)` ([`inequality_iii_check`]), and the
//!   sandwich `a_k b_k <= e <= a_2 b_k` on the exponent ([`sandwich_check`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::abelian::{
    canonicalize, partitions, CyclicDecomposition, InvariantFactorForm, PGroupPartition,
};
use crate::hallbasis::witt;
use crate::multiplier::{multiplier_order_exponent, nilpotent_multiplier, MultiplierStructure};
use crate::oracle::{lyndon_count, schur_oracle};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Confirmed,
    Counterexample,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Confirmed
        } else {
            Status::Counterexample
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::Counterexample => "counterexample",
        })
    }
}

/// Which abelian p-groups of order `p^n` have `|M^(c)(G)| = p^target`, where
/// `target = witt(c+1, n-t)`, compared against the expected hook partition
/// `(t+1, 1^(n-t-1))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationCase {
    pub n: u32,
    pub c: u32,
    pub t: u32,
    pub target_exponent: u128,
    pub expected: PGroupPartition,
    pub solutions: Vec<PGroupPartition>,
    /// The expected partition is among the solutions.
    pub forward_holds: bool,
    /// Confirmed iff the solutions are exactly `{expected}`.
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InequalityName {
    /// Upper sandwich bound `e <= a_2 b_k`.
    I,
    /// Lower sandwich bound `a_k b_k <= e`.
    II,
    /// `t + j + 2 <= 2 (n-t-1) ... (n-t-j)`.
    III,
    /// `i b_i < b_{i+1}`.
    #[serde(rename = "lemma")]
    Lemma,
}

impl InequalityName {
    /// Whether `lhs rel rhs` holds for this inequality's relation.
    pub fn compare(self, lhs: &BigUint, rhs: &BigUint) -> bool {
        match self {
            InequalityName::Lemma => lhs < rhs,
            InequalityName::I | InequalityName::II | InequalityName::III => lhs <= rhs,
        }
    }

    pub fn relation(self) -> &'static str {
        match self {
            InequalityName::Lemma => "<",
            _ => "<=",
        }
    }
}

impl fmt::Display for InequalityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InequalityName::I => "I",
            InequalityName::II => "II",
            InequalityName::III => "III",
            InequalityName::Lemma => "lemma",
        })
    }
}

/// One evaluation of a named inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityFinding {
    pub name: InequalityName,
    pub parameters: BTreeMap<String, u64>,
    #[serde(with = "decimal")]
    pub lhs: BigUint,
    #[serde(with = "decimal")]
    pub rhs: BigUint,
    pub holds: bool,
}

impl InequalityFinding {
    fn new(name: InequalityName, parameters: &[(&str, u64)], lhs: BigUint, rhs: BigUint) -> Self {
        let holds = name.compare(&lhs, &rhs);
        InequalityFinding {
            name,
            parameters: parameters
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            lhs,
            rhs,
            holds,
        }
    }
}

/// Exact integers travel as decimal strings; they exceed every JSON number
/// width for large products.
mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Scan of all partitions of `n` against the bound `witt(c+1, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCase {
    pub n: u32,
    pub c: u32,
    pub bound: u128,
    pub max_found: u128,
    pub maximizers: Vec<PGroupPartition>,
    /// Partitions whose exponent exceeds the bound.
    pub violations: Vec<PGroupPartition>,
    pub partitions_scanned: u64,
    /// Confirmed iff there are no violations and `(1^n)` is the only maximiser
    /// and attains the bound.
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittCase {
    pub n: u32,
    pub d: u32,
    pub witt: u128,
    pub lyndon: u128,
    pub status: Status,
}

/// Class-one multiplier from the closed formula against the direct-product
/// oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurCase {
    pub group: CyclicDecomposition,
    pub invariant_factors: InvariantFactorForm,
    pub formula: MultiplierStructure,
    pub oracle: MultiplierStructure,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    Witt(WittCase),
    Schur(SchurCase),
    Bound(BoundCase),
    Classification(ClassificationCase),
    Inequality(InequalityFinding),
}

impl Case {
    pub fn status(&self) -> Status {
        match self {
            Case::Witt(c) => c.status,
            Case::Schur(c) => c.status,
            Case::Bound(c) => c.status,
            Case::Classification(c) => c.status,
            Case::Inequality(f) => Status::from_bool(f.holds),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub cases: u64,
    pub confirmed: u64,
    pub counterexamples: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: BTreeMap<String, u64>,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, parameters: &[(&str, u64)], cases: Vec<Case>) -> Self {
        let confirmed = cases
            .iter()
            .filter(|c| c.status() == Status::Confirmed)
            .count() as u64;
        let total = cases.len() as u64;
        VerificationReport {
            suite: suite.to_string(),
            parameters: parameters
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            cases,
            summary: Summary {
                cases: total,
                confirmed,
                counterexamples: total - confirmed,
            },
        }
    }

    pub fn is_clean(&self) -> bool {
        self.summary.counterexamples == 0
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Case> {
        self.cases
            .iter()
            .filter(|c| c.status() == Status::Counterexample)
    }
}

fn check_class(c: u32) -> Result<u32> {
    if c == 0 {
        return Err(Error::InvalidInput(
            "nilpotency class must be at least 1".into(),
        ));
    }
    c.checked_add(1).ok_or_else(|| Error::overflow("class + 1"))
}

/// `witt(c+1, n)`: the largest possible exponent `e` with `|M^(c)(G)| = p^e`
/// for `|G| = p^n`.
pub fn max_exponent(n: u32, c: u32) -> Result<u128> {
    witt(check_class(c)?, u64::from(n))
}

pub fn bound_case(n: u32, c: u32) -> Result<BoundCase> {
    let bound = max_exponent(n, c)?;
    let mut max_found = 0u128;
    let mut maximizers = Vec::new();
    let mut violations = Vec::new();
    let mut scanned = 0u64;
    for lambda in partitions(n) {
        scanned += 1;
        let e = multiplier_order_exponent(&lambda, c)?;
        if e > bound {
            violations.push(lambda.clone());
        }
        if e > max_found || maximizers.is_empty() {
            max_found = e;
            maximizers.clear();
            maximizers.push(lambda);
        } else if e == max_found {
            maximizers.push(lambda);
        }
    }
    let ok = violations.is_empty()
        && max_found == bound
        && maximizers == [PGroupPartition::elementary(n)];
    Ok(BoundCase {
        n,
        c,
        bound,
        max_found,
        maximizers,
        violations,
        partitions_scanned: scanned,
        status: Status::from_bool(ok),
    })
}

/// Checks the order bound and elementary-abelian maximality for order `p^n`.
pub fn bound_check(n: u32, c: u32) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Domain("bound check needs n >= 1".into()));
    }
    let case = bound_case(n, c)?;
    Ok(VerificationReport::new(
        "bound",
        &[("n", n.into()), ("c", c.into())],
        vec![Case::Bound(case)],
    ))
}

/// All partitions of `n` whose multiplier exponent at class `c` is `e`, in
/// the order of [`partitions`].
pub fn solutions(n: u32, c: u32, e: u128) -> Result<Vec<PGroupPartition>> {
    check_class(c)?;
    let mut out = Vec::new();
    for lambda in partitions(n) {
        if multiplier_order_exponent(&lambda, c)? == e {
            out.push(lambda);
        }
    }
    Ok(out)
}

pub fn classification_case(n: u32, c: u32, t: u32) -> Result<ClassificationCase> {
    let weight = check_class(c)?;
    if n == 0 || t >= n {
        return Err(Error::Domain(format!(
            "need n >= 1 and 0 <= t <= n-1, got n = {n}, t = {t}"
        )));
    }
    let target_exponent = witt(weight, u64::from(n - t))?;
    let expected = PGroupPartition::hook(n, t)?;
    let solutions = solutions(n, c, target_exponent)?;
    let forward_holds = solutions.contains(&expected);
    let status = Status::from_bool(solutions == [expected.clone()]);
    Ok(ClassificationCase {
        n,
        c,
        t,
        target_exponent,
        expected,
        solutions,
        forward_holds,
        status,
    })
}

/// One [`ClassificationCase`] per `0 <= t <= n-1`.
pub fn theorem34_report(n: u32, c: u32) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Domain("classification needs n >= 1".into()));
    }
    let cases = (0..n)
        .map(|t| classification_case(n, c, t).map(Case::Classification))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "thm34",
        &[("n", n.into()), ("c", c.into())],
        cases,
    ))
}

/// `i * witt(c+1, i)` against `witt(c+1, i+1)`.
pub fn lemma_check(i: u32, c: u32) -> Result<InequalityFinding> {
    let weight = check_class(c)?;
    if i == 0 {
        return Err(Error::Domain("lemma needs i >= 1".into()));
    }
    let b_i = witt(weight, u64::from(i))?;
    let b_next = witt(weight, u64::from(i) + 1)?;
    Ok(InequalityFinding::new(
        InequalityName::Lemma,
        &[("i", i.into()), ("c", c.into())],
        BigUint::from(i) * BigUint::from(b_i),
        BigUint::from(b_next),
    ))
}

/// `t + j + 2` against `2 * prod_{s=1..j} (n - t - s)`, on the domain
/// `n >= 3`, `0 <= t <= n-1`, `1 <= j < n-t-1`.
pub fn inequality_iii_check(n: u32, t: u32, j: u32) -> Result<InequalityFinding> {
    if n < 3 || t >= n || j == 0 || j + t + 1 >= n {
        return Err(Error::Domain(format!(
            "inequality III needs n >= 3, 0 <= t <= n-1, 1 <= j < n-t-1; got n = {n}, t = {t}, j = {j}"
        )));
    }
    let rhs = (1..=j).fold(BigUint::from(2u32), |acc, s| acc * (n - t - s));
    Ok(InequalityFinding::new(
        InequalityName::III,
        &[("n", n.into()), ("t", t.into()), ("j", j.into())],
        BigUint::from(t + j + 2),
        rhs,
    ))
}

/// Bounds (I) `e <= a_2 b_k` and (II) `a_k b_k <= e` on the exponent `e` of
/// `|M^(c)(G)|`, for a partition with `k >= 2` parts.
pub fn sandwich_check(
    lambda: &PGroupPartition,
    c: u32,
) -> Result<(InequalityFinding, InequalityFinding)> {
    let weight = check_class(c)?;
    let k = lambda.len();
    if k < 2 {
        return Err(Error::Domain("sandwich needs at least two parts".into()));
    }
    let parts = lambda.parts();
    let e = BigUint::from(multiplier_order_exponent(lambda, c)?);
    let b_k = BigUint::from(witt(weight, k as u64)?);
    let (a_2, a_k) = (parts[1], parts[k - 1]);
    let n: u32 = parts.iter().sum();
    let params = [
        ("n", u64::from(n)),
        ("c", u64::from(c)),
        ("k", k as u64),
        ("alpha_2", u64::from(a_2)),
        ("alpha_k", u64::from(a_k)),
    ];
    let upper = InequalityFinding::new(
        InequalityName::I,
        &params,
        e.clone(),
        BigUint::from(a_2) * &b_k,
    );
    let lower = InequalityFinding::new(InequalityName::II, &params, BigUint::from(a_k) * b_k, e);
    Ok((upper, lower))
}

/// Ranges for [`witt_suite`]: all `n <= max_n`, `d <= max_d`, plus
/// `n <= binary_max_n` at `d = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WittRange {
    pub max_n: u32,
    pub max_d: u32,
    pub binary_max_n: u32,
}

impl Default for WittRange {
    fn default() -> Self {
        WittRange {
            max_n: 12,
            max_d: 4,
            binary_max_n: 20,
        }
    }
}

/// Witt formula against Lyndon-word enumeration.
pub fn witt_suite(range: WittRange) -> Result<VerificationReport> {
    let mut grid = BTreeSet::new();
    for d in 1..=range.max_d {
        grid.extend((1..=range.max_n).map(|n| (d, n)));
    }
    grid.extend((1..=range.binary_max_n).map(|n| (2, n)));
    let cases = grid
        .into_iter()
        .map(|(d, n)| {
            let w = witt(n, u64::from(d))?;
            let l = lyndon_count(n, d)?;
            Ok(Case::Witt(WittCase {
                n,
                d,
                witt: w,
                lyndon: l,
                status: Status::from_bool(w == l),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "witt",
        &[
            ("max_n", range.max_n.into()),
            ("max_d", range.max_d.into()),
            ("binary_max_n", range.binary_max_n.into()),
        ],
        cases,
    ))
}

/// Primes used by [`schur_suite`].
pub const SCHUR_PRIMES: [u64; 3] = [2, 3, 5];

/// Every abelian group of order at most `max_order` whose order is a product
/// of 2, 3 and 5, written as primary cyclic summands prime by prime
/// (deliberately not in invariant factor form).
pub fn small_abelian_groups(max_order: u64) -> Vec<CyclicDecomposition> {
    fn exponents(max_order: u64, primes: &[u64]) -> Vec<Vec<u32>> {
        let Some((&p, rest)) = primes.split_first() else {
            return vec![Vec::new()];
        };
        let mut out = Vec::new();
        let mut power = 1u64;
        let mut e = 0u32;
        while power <= max_order {
            for mut tail in exponents(max_order / power, rest) {
                tail.insert(0, e);
                out.push(tail);
            }
            match power.checked_mul(p) {
                Some(next) => power = next,
                None => break,
            }
            e += 1;
        }
        out
    }

    let mut groups = Vec::new();
    for exps in exponents(max_order, &SCHUR_PRIMES) {
        let mut orders: Vec<Vec<u64>> = vec![Vec::new()];
        for (&p, &e) in SCHUR_PRIMES.iter().zip(&exps) {
            let mut next = Vec::new();
            for prefix in &orders {
                for lambda in partitions(e) {
                    let mut o = prefix.clone();
                    o.extend(lambda.parts().iter().map(|&a| p.pow(a)));
                    next.push(o);
                }
            }
            orders = next;
        }
        groups.extend(
            orders
                .into_iter()
                .map(|o| CyclicDecomposition::new(o).expect("prime powers are at least 2")),
        );
    }
    groups
}

pub fn schur_case(g: &CyclicDecomposition) -> Result<SchurCase> {
    let invariant_factors = canonicalize(g)?;
    let formula = nilpotent_multiplier(&invariant_factors, 1)?;
    let oracle = schur_oracle(g)?;
    let status = Status::from_bool(formula.is_isomorphic(&oracle)?);
    Ok(SchurCase {
        group: g.clone(),
        invariant_factors,
        formula,
        oracle,
        status,
    })
}

/// Class-one closed formula against the direct-product oracle on every group
/// from [`small_abelian_groups`].
pub fn schur_suite(max_order: u64) -> Result<VerificationReport> {
    let cases = small_abelian_groups(max_order)
        .iter()
        .map(|g| schur_case(g).map(Case::Schur))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "schur",
        &[("max_order", max_order)],
        cases,
    ))
}

/// [`bound_case`] for every `1 <= n <= max_n`, `1 <= c <= max_c`.
pub fn bound_suite(max_n: u32, max_c: u32) -> Result<VerificationReport> {
    let mut cases = Vec::new();
    for c in 1..=max_c {
        for n in 1..=max_n {
            cases.push(Case::Bound(bound_case(n, c)?));
        }
    }
    Ok(VerificationReport::new(
        "bound",
        &[("max_n", max_n.into()), ("max_c", max_c.into())],
        cases,
    ))
}

/// [`theorem34_report`] for every `1 <= n <= max_n`, `1 <= c <= max_c`.
pub fn thm34_suite(max_n: u32, max_c: u32) -> Result<VerificationReport> {
    let mut cases = Vec::new();
    for c in 1..=max_c {
        for n in 1..=max_n {
            cases.extend(theorem34_report(n, c)?.cases);
        }
    }
    Ok(VerificationReport::new(
        "thm34",
        &[("max_n", max_n.into()), ("max_c", max_c.into())],
        cases,
    ))
}

/// Ranges for [`inequality_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InequalityRanges {
    /// Lemma for `1 <= i <= lemma_max_i`.
    pub lemma_max_i: u32,
    /// Inequality III for `3 <= n <= iii_max_n` over its whole `(t, j)` domain.
    pub iii_max_n: u32,
    /// Sandwich bounds for every partition of `n <= sandwich_max_n` with at
    /// least two parts.
    pub sandwich_max_n: u32,
    pub max_c: u32,
}

impl Default for InequalityRanges {
    fn default() -> Self {
        InequalityRanges {
            lemma_max_i: 12,
            iii_max_n: 40,
            sandwich_max_n: 25,
            max_c: 4,
        }
    }
}

impl InequalityRanges {
    /// The same `max_n` for all three families.
    pub fn uniform(max_n: u32, max_c: u32) -> Self {
        InequalityRanges {
            lemma_max_i: max_n,
            iii_max_n: max_n,
            sandwich_max_n: max_n,
            max_c,
        }
    }
}

/// Evaluates every inequality in range and reports violations as
/// counterexamples; nothing is assumed to hold.
pub fn inequality_suite(ranges: InequalityRanges) -> Result<VerificationReport> {
    let mut cases = Vec::new();
    for c in 1..=ranges.max_c {
        for i in 1..=ranges.lemma_max_i {
            cases.push(Case::Inequality(lemma_check(i, c)?));
        }
    }
    for n in 3..=ranges.iii_max_n {
        for t in 0..n {
            for j in (1..n).take_while(|&j| j + t + 1 < n) {
                cases.push(Case::Inequality(inequality_iii_check(n, t, j)?));
            }
        }
    }
    for c in 1..=ranges.max_c {
        for n in 2..=ranges.sandwich_max_n {
            for lambda in partitions(n).filter(|l| l.len() >= 2) {
                let (upper, lower) = sandwich_check(&lambda, c)?;
                cases.push(Case::Inequality(upper));
                cases.push(Case::Inequality(lower));
            }
        }
    }
    Ok(VerificationReport::new(
        "inequalities",
        &[
            ("lemma_max_i", ranges.lemma_max_i.into()),
            ("iii_max_n", ranges.iii_max_n.into()),
            ("sandwich_max_n", ranges.sandwich_max_n.into()),
            ("max_c", ranges.max_c.into()),
        ],
        cases,
    ))
}
