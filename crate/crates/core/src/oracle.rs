//! Brute-force cross-checks that share no code with the closed formulas.
//!
//! - Lyndon words of length `n` over `d` symbols are counted by enumeration;
//!   their number equals the number of basic commutators of weight `n`.
//! - The Schur multiplier (`c = 1`) of a direct sum of cyclic groups is built
//!   by peeling off one cyclic summand at a time with
//!   `M(A + B) = M(A) + M(B) + (A ⊗ B)`, using `M(cyclic) = 0` and
//!   `Z_m ⊗ Z_n = Z_gcd(m, n)`.

use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::CyclicDecomposition;
use crate::multiplier::{CyclicFactor, CyclicOrder, MultiplierStructure};
use crate::{Error, Result};

/// Default cap on the number of words [`lyndon_words`] may produce.
pub const DEFAULT_WORD_CAP: usize = 10_000_000;

/// A word over `{1..d}` strictly smaller than each of its proper rotations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LyndonWord(Vec<u32>);

impl LyndonWord {
    pub fn new(symbols: Vec<u32>) -> Result<Self> {
        if !is_lyndon(&symbols) {
            return Err(Error::InvalidInput(format!(
                "{symbols:?} is not a Lyndon word"
            )));
        }
        Ok(LyndonWord(symbols))
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }
}

/// Rotation test: `w` is Lyndon iff it is non-empty and every proper rotation
/// compares strictly greater. Quadratic, used to validate every generated word.
pub fn is_lyndon(w: &[u32]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|r| {
        let rotated = w[r..].iter().chain(&w[..r]);
        w.iter().cmp(rotated) == Ordering::Less
    })
}

/// Lyndon words of length at most `n`, in lexicographic order, by the
/// extend-and-increment successor rule.
struct LyndonSuccessors {
    word: Vec<u32>,
    n: usize,
    d: u32,
    done: bool,
}

impl LyndonSuccessors {
    fn new(n: usize, d: u32) -> Self {
        LyndonSuccessors {
            word: vec![1],
            n,
            d,
            done: n == 0 || d == 0,
        }
    }
}

impl Iterator for LyndonSuccessors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.word.clone();
        let period = self.word.len();
        while self.word.len() < self.n {
            let s = self.word[self.word.len() - period];
            self.word.push(s);
        }
        while self.word.last() == Some(&self.d) {
            self.word.pop();
        }
        match self.word.last_mut() {
            Some(last) => *last += 1,
            None => self.done = true,
        }
        Some(out)
    }
}

fn check_args(n: u32, d: u32) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput(
            "Lyndon words need positive length and alphabet".into(),
        ));
    }
    Ok(())
}

fn validated(n: u32, d: u32, cap: usize) -> impl Iterator<Item = Result<Vec<u32>>> {
    let mut emitted = 0usize;
    LyndonSuccessors::new(n as usize, d)
        .filter(move |w| w.len() == n as usize)
        .map(move |w| {
            if !is_lyndon(&w) {
                return Err(Error::Inconsistent(format!(
                    "generator produced non-Lyndon word {w:?}"
                )));
            }
            if emitted == cap {
                return Err(Error::SizeLimit {
                    what: "Lyndon words",
                    cap,
                });
            }
            emitted += 1;
            Ok(w)
        })
}

/// All Lyndon words of length exactly `n` over `d` symbols, lexicographically.
pub fn lyndon_words(n: u32, d: u32) -> Result<Vec<LyndonWord>> {
    lyndon_words_capped(n, d, DEFAULT_WORD_CAP)
}

pub fn lyndon_words_capped(n: u32, d: u32, cap: usize) -> Result<Vec<LyndonWord>> {
    check_args(n, d)?;
    validated(n, d, cap).map(|w| w.map(LyndonWord)).collect()
}

/// Number of Lyndon words of length `n` over `d` symbols, by enumeration.
pub fn lyndon_count(n: u32, d: u32) -> Result<u128> {
    lyndon_count_capped(n, d, DEFAULT_WORD_CAP)
}

pub fn lyndon_count_capped(n: u32, d: u32, cap: usize) -> Result<u128> {
    check_args(n, d)?;
    validated(n, d, cap).try_fold(0u128, |acc, w| w.map(|_| acc + 1))
}

/// `Z_m ⊗ Z_n = Z_gcd(m, n)`; `1` is the trivial group.
pub fn tensor_cyclic(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("cyclic orders must be positive".into()));
    }
    Ok(m.gcd(&n))
}

/// Schur multiplier of `Z_{n_1} + ... + Z_{n_k}` by repeated application of
/// the direct-product formula.
pub fn schur_oracle(g: &CyclicDecomposition) -> Result<MultiplierStructure> {
    let mut factors = Vec::new();
    let mut rest = g.orders();
    // M(Z_a + B) = M(B) + (Z_a ⊗ B), and ⊗ distributes over the summands of B.
    while let Some((&a, tail)) = rest.split_first() {
        for &b in tail {
            factors.push(CyclicFactor {
                order: CyclicOrder::Concrete(tensor_cyclic(a, b)?),
                multiplicity: 1,
            });
        }
        rest = tail;
    }
    Ok(MultiplierStructure::from_factors(factors))
}
