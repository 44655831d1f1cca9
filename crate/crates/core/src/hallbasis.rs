//! Hall basic commutators and the Witt formula.
//!
//! Basic commutators of weight `k` are built from those of smaller weight:
//! `[a, b]` is basic when `wt(a) + wt(b) = k`, `a > b`, and, if `a = [s, t]`,
//! also `b >= t`. Commutators are totally ordered first by weight and then,
//! within a weight, recursively lexicographically (see [`BasicCommutator`]'s
//! `Ord` impl). The number of basic commutators of weight `n` on `d` letters is
//! given by [`witt`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default element cap for [`generate_hall_basis`].
pub const DEFAULT_ELEMENT_CAP: usize = 10_000_000;

/// A generator `x_i` of the free group, `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Letter(u32);

impl Letter {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidInput("letter indices start at 1".into()));
        }
        Ok(Letter(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Letter {
    type Error = Error;

    fn try_from(index: u32) -> Result<Self> {
        Letter::new(index)
    }
}

impl From<Letter> for u32 {
    fn from(letter: Letter) -> u32 {
        letter.0
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Node {
    Leaf(Letter),
    Bracket {
        left: BasicCommutator,
        right: BasicCommutator,
        weight: u32,
    },
}

/// A basic commutator: a letter, or a bracket of two basic commutators that
/// satisfies the ordering rules. Subtrees are shared, so cloning is cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicCommutator(Arc<Node>);

impl BasicCommutator {
    pub fn leaf(letter: Letter) -> Self {
        BasicCommutator(Arc::new(Node::Leaf(letter)))
    }

    /// Builds `[left, right]`, rejecting pairs that violate the basic
    /// commutator rules (`left > right`; `right >= t` when `left = [s, t]`).
    pub fn bracket(left: BasicCommutator, right: BasicCommutator) -> Result<Self> {
        if left <= right {
            return Err(Error::InvalidInput(format!(
                "[{left},{right}] is not basic: left operand must exceed right"
            )));
        }
        if let Some((_, t)) = left.split() {
            if right < *t {
                return Err(Error::InvalidInput(format!(
                    "[{left},{right}] is not basic: right operand is below {t}"
                )));
            }
        }
        Ok(Self::bracket_unchecked(left, right))
    }

    fn bracket_unchecked(left: BasicCommutator, right: BasicCommutator) -> Self {
        let weight = left.weight() + right.weight();
        BasicCommutator(Arc::new(Node::Bracket {
            left,
            right,
            weight,
        }))
    }

    pub fn weight(&self) -> u32 {
        match &*self.0 {
            Node::Leaf(_) => 1,
            Node::Bracket { weight, .. } => *weight,
        }
    }

    /// The letter, if this is a weight-one commutator.
    pub fn letter(&self) -> Option<Letter> {
        match &*self.0 {
            Node::Leaf(letter) => Some(*letter),
            Node::Bracket { .. } => None,
        }
    }

    /// The operands `(left, right)`, if this is a bracket.
    pub fn split(&self) -> Option<(&BasicCommutator, &BasicCommutator)> {
        match &*self.0 {
            Node::Leaf(_) => None,
            Node::Bracket { left, right, .. } => Some((left, right)),
        }
    }

    /// Largest letter index occurring in the commutator.
    pub fn max_letter(&self) -> u32 {
        match &*self.0 {
            Node::Leaf(letter) => letter.index(),
            Node::Bracket { left, right, .. } => left.max_letter().max(right.max_letter()),
        }
    }
}

/// Weight first; letters by index; brackets lexicographically by
/// `(left, right)`.
pub fn compare_commutators(a: &BasicCommutator, b: &BasicCommutator) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    a.weight()
        .cmp(&b.weight())
        .then_with(|| match (&*a.0, &*b.0) {
            (Node::Leaf(x), Node::Leaf(y)) => x.cmp(y),
            (Node::Leaf(_), Node::Bracket { .. }) => Ordering::Less,
            (Node::Bracket { .. }, Node::Leaf(_)) => Ordering::Greater,
            (
                Node::Bracket {
                    left: l1,
                    right: r1,
                    ..
                },
                Node::Bracket {
                    left: l2,
                    right: r2,
                    ..
                },
            ) => compare_commutators(l1, l2).then_with(|| compare_commutators(r1, r2)),
        })
}

impl Ord for BasicCommutator {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_commutators(self, other)
    }
}

impl PartialOrd for BasicCommutator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasicCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Leaf(letter) => write!(f, "x{}", letter.index()),
            Node::Bracket { left, right, .. } => write!(f, "[{left},{right}]"),
        }
    }
}

/// Canonical bracket notation, e.g. `[[x2,x1],x1]`.
pub fn render_commutator(c: &BasicCommutator) -> String {
    c.to_string()
}

impl FromStr for BasicCommutator {
    type Err = Error;

    /// Parses the notation produced by [`render_commutator`]. Whitespace is
    /// ignored; every bracket is checked against the basic commutator rules.
    fn from_str(s: &str) -> Result<Self> {
        let compact: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut parser = Parser {
            input: &compact,
            pos: 0,
        };
        let c = parser.commutator()?;
        if parser.pos != compact.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(c)
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.input.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn commutator(&mut self) -> Result<BasicCommutator> {
        match self.input.get(self.pos) {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.input.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.input[start..self.pos])
                    .map_err(|_| self.error("invalid letter"))?;
                let index = digits
                    .parse::<u32>()
                    .map_err(|_| self.error("invalid letter index"))?;
                Ok(BasicCommutator::leaf(Letter::new(index)?))
            }
            Some(b'[') => {
                self.pos += 1;
                let left = self.commutator()?;
                self.expect(b',')?;
                let right = self.commutator()?;
                self.expect(b']')?;
                BasicCommutator::bracket(left, right)
            }
            _ => Err(self.error("expected 'x' or '['")),
        }
    }
}

impl Serialize for BasicCommutator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BasicCommutator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The Möbius function: `1` at `1`, `0` if a square divides `m`, otherwise
/// `(-1)^s` for `s` distinct prime factors.
pub fn mobius(m: u64) -> Result<i8> {
    if m == 0 {
        return Err(Error::InvalidInput("mobius is undefined at 0".into()));
    }
    let mut rest = m;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p <= rest / p {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Number of basic commutators of weight `n` on `d` letters,
/// `(1/n) * sum_{m | n} mu(m) d^(n/m)`, computed exactly.
pub fn witt(n: u32, d: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidInput("weight must be at least 1".into()));
    }
    if d == 0 {
        return Ok(0);
    }
    let overflow = || Error::overflow(format!("witt({n}, {d})"));
    let base = i128::from(d);
    let mut sum: i128 = 0;
    for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
        let mu = mobius(u64::from(m))?;
        if mu == 0 {
            continue;
        }
        let term = base.checked_pow(n / m).ok_or_else(overflow)?;
        sum = if mu > 0 {
            sum.checked_add(term)
        } else {
            sum.checked_sub(term)
        }
        .ok_or_else(overflow)?;
    }
    let n = i128::from(n);
    if sum % n != 0 || sum < 0 {
        return Err(Error::Inconsistent(format!(
            "Möbius sum {sum} is not a non-negative multiple of {n}"
        )));
    }
    Ok((sum / n) as u128)
}

/// Basic commutators on `letters` generators, stratified by weight.
#[derive(Debug, Clone)]
pub struct HallBasis {
    letters: u32,
    max_weight: u32,
    per_weight: Vec<Vec<BasicCommutator>>,
}

impl HallBasis {
    pub fn letters(&self) -> u32 {
        self.letters
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Basic commutators of weight `k` (1-based), in increasing order.
    pub fn weight(&self, k: u32) -> &[BasicCommutator] {
        k.checked_sub(1)
            .and_then(|i| self.per_weight.get(i as usize))
            .map_or(&[], Vec::as_slice)
    }

    /// Layer sizes for weights `1..=max_weight`.
    pub fn counts(&self) -> Vec<usize> {
        self.per_weight.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.per_weight.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All commutators, weight by weight; strictly increasing.
    pub fn iter(&self) -> impl Iterator<Item = &BasicCommutator> {
        self.per_weight.iter().flatten()
    }
}

/// Generates all basic commutators of weight at most `max_weight` on `d`
/// letters, with the [`DEFAULT_ELEMENT_CAP`].
pub fn generate_hall_basis(d: u32, max_weight: u32) -> Result<HallBasis> {
    generate_hall_basis_capped(d, max_weight, DEFAULT_ELEMENT_CAP)
}

pub fn generate_hall_basis_capped(d: u32, max_weight: u32, cap: usize) -> Result<HallBasis> {
    if d == 0 || max_weight == 0 {
        return Err(Error::InvalidInput(
            "Hall basis needs at least one letter and weight".into(),
        ));
    }
    let too_big = Error::SizeLimit {
        what: "Hall basis",
        cap,
    };
    if d as usize > cap {
        return Err(too_big);
    }
    let mut per_weight: Vec<Vec<BasicCommutator>> = Vec::with_capacity(max_weight as usize);
    per_weight.push((1..=d).map(|i| BasicCommutator::leaf(Letter(i))).collect());
    let mut total = d as usize;

    for k in 2..=max_weight {
        let mut layer = Vec::new();
        // c_i > c_j forces wt(c_i) >= wt(c_j).
        for left_weight in k.div_ceil(2)..k {
            let right_weight = k - left_weight;
            let lefts = &per_weight[left_weight as usize - 1];
            let rights = &per_weight[right_weight as usize - 1];
            for left in lefts {
                let floor = left.split().map(|(_, t)| t);
                for right in rights {
                    if left <= right {
                        // rights is sorted; nothing further is smaller than left
                        break;
                    }
                    if floor.is_some_and(|t| right < t) {
                        continue;
                    }
                    if total == cap {
                        return Err(too_big);
                    }
                    total += 1;
                    layer.push(BasicCommutator::bracket_unchecked(
                        left.clone(),
                        right.clone(),
                    ));
                }
            }
        }
        layer.sort();
        per_weight.push(layer);
    }

    Ok(HallBasis {
        letters: d,
        max_weight,
        per_weight,
    })
}
