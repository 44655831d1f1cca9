//! c-nilpotent multipliers of finite abelian groups.
//!
//! For `G = Z_{n_1} + ... + Z_{n_k}` in invariant factor form with `k >= 2`,
//!
//! ```text
//! M^(c)(G) = Z_{n_2}^(b_2) + Z_{n_3}^(b_3 - b_2) + ... + Z_{n_k}^(b_k - b_{k-1})
//! ```
//!
//! where `b_i = witt(c + 1, i)`. Cyclic and trivial groups have trivial
//! multiplier.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{factorize, FactoredOrder, InvariantFactorForm, PGroupPartition};
use crate::hallbasis::witt;
use crate::{Error, Result};

/// Order of a cyclic summand: a concrete integer, or `p^e` for a symbolic
/// prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicOrder {
    Concrete(u64),
    PPower(u32),
}

impl fmt::Display for CyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicOrder::Concrete(n) => write!(f, "Z_{n}"),
            CyclicOrder::PPower(1) => f.write_str("Z_p"),
            CyclicOrder::PPower(e) => write!(f, "Z_{{p^{e}}}"),
        }
    }
}

/// `multiplicity` copies of the cyclic group of the given order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicFactor {
    pub order: CyclicOrder,
    pub multiplicity: u128,
}

impl fmt::Display for CyclicFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity == 1 {
            write!(f, "{}", self.order)
        } else {
            write!(f, "{}^({})", self.order, self.multiplicity)
        }
    }
}

/// A prime-power cyclic summand `Z_{p^exponent}`; `prime` is `None` for the
/// symbolic prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimaryCyclic {
    pub prime: Option<u64>,
    pub exponent: u32,
}

/// Direct sum of cyclic factors. The factor list keeps the shape it was built
/// with; compare values as groups through [`MultiplierStructure::primary`] or
/// [`MultiplierStructure::is_isomorphic`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplierStructure {
    factors: Vec<CyclicFactor>,
}

impl MultiplierStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Drops zero multiplicities and order-1 factors.
    pub fn from_factors(factors: impl IntoIterator<Item = CyclicFactor>) -> Self {
        MultiplierStructure {
            factors: factors
                .into_iter()
                .filter(|f| f.multiplicity > 0 && f.order != CyclicOrder::Concrete(1))
                .filter(|f| f.order != CyclicOrder::PPower(0))
                .collect(),
        }
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total number of cyclic summands.
    pub fn rank(&self) -> Result<u128> {
        self.factors.iter().try_fold(0u128, |acc, f| {
            acc.checked_add(f.multiplicity)
                .ok_or_else(|| Error::overflow("multiplier rank"))
        })
    }

    /// Multiset of prime-power summands.
    pub fn primary(&self) -> Result<BTreeMap<PrimaryCyclic, u128>> {
        let mut out: BTreeMap<PrimaryCyclic, u128> = BTreeMap::new();
        let mut push = |key: PrimaryCyclic, m: u128| -> Result<()> {
            let slot = out.entry(key).or_insert(0);
            *slot = slot
                .checked_add(m)
                .ok_or_else(|| Error::overflow("primary multiplicity"))?;
            Ok(())
        };
        for f in &self.factors {
            match f.order {
                CyclicOrder::Concrete(n) => {
                    for (p, e) in factorize(n) {
                        push(
                            PrimaryCyclic {
                                prime: Some(p),
                                exponent: e,
                            },
                            f.multiplicity,
                        )?;
                    }
                }
                CyclicOrder::PPower(e) => push(
                    PrimaryCyclic {
                        prime: None,
                        exponent: e,
                    },
                    f.multiplicity,
                )?,
            }
        }
        Ok(out)
    }

    pub fn is_isomorphic(&self, other: &MultiplierStructure) -> Result<bool> {
        Ok(self.primary()? == other.primary()?)
    }

    /// Order of a structure with concrete factors.
    pub fn order(&self) -> Result<FactoredOrder> {
        let mut order = FactoredOrder::one();
        for f in &self.factors {
            match f.order {
                CyclicOrder::Concrete(n) => {
                    for (p, e) in factorize(n) {
                        let e = u128::from(e)
                            .checked_mul(f.multiplicity)
                            .ok_or_else(|| Error::overflow("multiplier order"))?;
                        order.checked_add(p, e)?;
                    }
                }
                CyclicOrder::PPower(_) => {
                    return Err(Error::InvalidInput(
                        "structure has a symbolic prime; use p_exponent".into(),
                    ))
                }
            }
        }
        Ok(order)
    }

    /// Exponent `e` of the order `p^e` of a symbolic structure.
    pub fn p_exponent(&self) -> Result<u128> {
        self.factors.iter().try_fold(0u128, |acc, f| match f.order {
            CyclicOrder::PPower(e) => u128::from(e)
                .checked_mul(f.multiplicity)
                .and_then(|x| acc.checked_add(x))
                .ok_or_else(|| Error::overflow("multiplier order exponent")),
            CyclicOrder::Concrete(_) => Err(Error::InvalidInput(
                "structure has a concrete order; use order".into(),
            )),
        })
    }
}

impl fmt::Display for MultiplierStructure {
    /// `Z_2 ⊕ Z_2^(2)`; `trivial` for the zero group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("trivial");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// `b_1, ..., b_k` with `b_i = witt(c + 1, i)`.
pub fn b_sequence(c: u32, k: usize) -> Result<Vec<u128>> {
    check_class(c)?;
    let weight = c
        .checked_add(1)
        .ok_or_else(|| Error::overflow("class + 1"))?;
    (1..=k as u64).map(|i| witt(weight, i)).collect()
}

fn check_class(c: u32) -> Result<()> {
    if c == 0 {
        return Err(Error::InvalidInput(
            "nilpotency class must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Multiplicities `b_2, b_3 - b_2, ..., b_k - b_{k-1}` for `k` invariant
/// factors; empty when `k <= 1`.
fn multiplicities(c: u32, k: usize) -> Result<Vec<u128>> {
    check_class(c)?;
    if k <= 1 {
        return Ok(Vec::new());
    }
    let b = b_sequence(c, k)?;
    let mut out = vec![b[1]];
    for i in 2..k {
        out.push(b[i].checked_sub(b[i - 1]).ok_or_else(|| {
            Error::Inconsistent(format!(
                "b_{} = {} exceeds b_{} = {}",
                i,
                b[i - 1],
                i + 1,
                b[i]
            ))
        })?);
    }
    Ok(out)
}

/// `M^(c)(G)` for `G` in invariant factor form.
pub fn nilpotent_multiplier(g: &InvariantFactorForm, c: u32) -> Result<MultiplierStructure> {
    let m = multiplicities(c, g.rank())?;
    Ok(MultiplierStructure::from_factors(
        g.factors()
            .iter()
            .skip(1)
            .zip(m)
            .map(|(&n, multiplicity)| CyclicFactor {
                order: CyclicOrder::Concrete(n),
                multiplicity,
            }),
    ))
}

/// `M^(c)(G)` for the abelian p-group `G` with the given partition, with the
/// prime kept symbolic.
pub fn nilpotent_multiplier_p_group(g: &PGroupPartition, c: u32) -> Result<MultiplierStructure> {
    let m = multiplicities(c, g.len())?;
    Ok(MultiplierStructure::from_factors(
        g.parts()
            .iter()
            .skip(1)
            .zip(m)
            .map(|(&a, multiplicity)| CyclicFactor {
                order: CyclicOrder::PPower(a),
                multiplicity,
            }),
    ))
}

/// `e` with `|M^(c)(G)| = p^e`:
/// `a_2 b_2 + a_3 (b_3 - b_2) + ... + a_k (b_k - b_{k-1})`.
pub fn multiplier_order_exponent(g: &PGroupPartition, c: u32) -> Result<u128> {
    let m = multiplicities(c, g.len())?;
    g.parts()
        .iter()
        .skip(1)
        .zip(m)
        .try_fold(0u128, |acc, (&a, mult)| {
            u128::from(a)
                .checked_mul(mult)
                .and_then(|x| acc.checked_add(x))
                .ok_or_else(|| Error::overflow("multiplier order exponent"))
        })
}

/// `|M^(c)(G)|` as prime exponents.
pub fn multiplier_order(g: &InvariantFactorForm, c: u32) -> Result<FactoredOrder> {
    nilpotent_multiplier(g, c)?.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::primary_decompose;

    fn inv(v: &[u64]) -> InvariantFactorForm {
        InvariantFactorForm::new(v.to_vec()).unwrap()
    }

    fn part(v: &[u32]) -> PGroupPartition {
        PGroupPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn b_sequence_examples() {
        assert_eq!(b_sequence(1, 4).unwrap(), vec![0, 1, 3, 6]);
        assert_eq!(b_sequence(2, 3).unwrap(), vec![0, 2, 8]);
        for c in 1..8 {
            assert_eq!(b_sequence(c, 1).unwrap(), vec![0]);
        }
        assert!(b_sequence(1, 0).unwrap().is_empty());
        assert!(b_sequence(0, 3).is_err());
    }

    #[test]
    fn schur_shape_at_class_one() {
        let g = inv(&[8, 4, 2, 2]);
        let m = nilpotent_multiplier(&g, 1).unwrap();
        let shape: Vec<(CyclicOrder, u128)> = m
            .factors()
            .iter()
            .map(|f| (f.order, f.multiplicity))
            .collect();
        assert_eq!(
            shape,
            vec![
                (CyclicOrder::Concrete(4), 1),
                (CyclicOrder::Concrete(2), 2),
                (CyclicOrder::Concrete(2), 3)
            ]
        );
        assert_eq!(m.to_string(), "Z_4 ⊕ Z_2^(2) ⊕ Z_2^(3)");
    }

    #[test]
    fn cyclic_and_trivial_groups() {
        for c in 1..6 {
            assert!(nilpotent_multiplier(&inv(&[9]), c).unwrap().is_trivial());
            assert!(nilpotent_multiplier(&InvariantFactorForm::trivial(), c)
                .unwrap()
                .is_trivial());
            assert_eq!(multiplier_order_exponent(&part(&[2]), c).unwrap(), 0);
            assert_eq!(multiplier_order_exponent(&part(&[]), c).unwrap(), 0);
        }
        assert_eq!(
            nilpotent_multiplier(&inv(&[9]), 4).unwrap().to_string(),
            "trivial"
        );
    }

    #[test]
    fn elementary_abelian() {
        for n in 1..8u32 {
            for c in 1..5 {
                let g = PGroupPartition::elementary(n).at_prime(3).unwrap();
                let m = nilpotent_multiplier(&g, c).unwrap();
                let b = witt(c + 1, u64::from(n)).unwrap();
                let primary = m.primary().unwrap();
                if b == 0 {
                    assert!(primary.is_empty());
                } else {
                    let key = PrimaryCyclic {
                        prime: Some(3),
                        exponent: 1,
                    };
                    assert_eq!(primary, BTreeMap::from([(key, b)]));
                }
            }
        }
    }

    #[test]
    fn class_two_on_four_two() {
        let m = nilpotent_multiplier(&inv(&[4, 2]), 2).unwrap();
        assert_eq!(m.to_string(), "Z_2^(2)");
        assert_eq!(m.order().unwrap().exponent(2), 2);
        assert_eq!(multiplier_order_exponent(&part(&[2, 1]), 2).unwrap(), 2);
    }

    #[test]
    fn order_exponent_examples() {
        assert_eq!(
            multiplier_order_exponent(&part(&[1, 1, 1, 1]), 1).unwrap(),
            6
        );
        assert_eq!(multiplier_order_exponent(&part(&[2, 1, 1]), 1).unwrap(), 3);
        assert_eq!(multiplier_order_exponent(&part(&[1, 1, 1]), 2).unwrap(), 8);
        assert!(multiplier_order_exponent(&part(&[1, 1]), 0).is_err());
    }

    #[test]
    fn multiplier_order_examples() {
        let o = multiplier_order(&inv(&[8, 2, 2]), 1).unwrap();
        assert_eq!(o.to_string(), "2^3");
        assert!(multiplier_order(&inv(&[6]), 3).unwrap().is_one());
        let o = multiplier_order(&inv(&[7, 7]), 1).unwrap();
        assert_eq!(o.exponent(7), 1);
        assert_eq!(o.iter().count(), 1);
    }

    #[test]
    fn symbolic_structure() {
        let m = nilpotent_multiplier_p_group(&part(&[3, 1, 1]), 1).unwrap();
        assert_eq!(m.to_string(), "Z_p ⊕ Z_p^(2)");
        assert_eq!(m.p_exponent().unwrap(), 3);
        assert!(m.order().is_err());
        let m = nilpotent_multiplier_p_group(&part(&[3, 3]), 1).unwrap();
        assert_eq!(m.to_string(), "Z_{p^3}");
    }

    #[test]
    fn mixed_primes_split_in_primary_form() {
        // [12, 6] at c = 1 is Z_6 = Z_2 + Z_3
        let m = nilpotent_multiplier(&inv(&[12, 6]), 1).unwrap();
        let primary = m.primary().unwrap();
        assert_eq!(primary.len(), 2);
        assert_eq!(m.order().unwrap().to_string(), "2 · 3");
        assert_eq!(primary_decompose(&inv(&[12, 6])).len(), 2);
    }

    #[test]
    fn from_factors_normalizes() {
        let m = MultiplierStructure::from_factors([
            CyclicFactor {
                order: CyclicOrder::Concrete(1),
                multiplicity: 4,
            },
            CyclicFactor {
                order: CyclicOrder::Concrete(5),
                multiplicity: 0,
            },
        ]);
        assert!(m.is_trivial());
    }
}
