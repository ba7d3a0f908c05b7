//! Symbolic values: exact ℚ-combinations of products of admissible MZV symbols.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_traits::{One, Signed, Zero};

use crate::algebra::{product_linear, IndexCombination, Product};
use crate::index::Index;
use crate::Rational;

/// A product `ζ(k¹)⋯ζ(kᵐ)` of admissible symbols, stored as a sorted multiset.
///
/// The empty multiset is the constant 1; `ζ(∅) = 1` is never stored as a factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MzvMonomial(Vec<Index>);

impl MzvMonomial {
    pub fn one() -> Self {
        MzvMonomial(Vec::new())
    }

    /// The symbol `ζ(k)`. Panics unless `k` is admissible.
    pub fn zeta(k: Index) -> Self {
        assert!(k.is_admissible(), "ζ({k}) needs an admissible index");
        if k.is_empty() {
            MzvMonomial::one()
        } else {
            MzvMonomial(vec![k])
        }
    }

    pub fn factors(&self) -> &[Index] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of ζ factors.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(Index::weight).sum()
    }

    /// Multiset union.
    pub fn mul(&self, other: &MzvMonomial) -> MzvMonomial {
        let mut factors = Vec::with_capacity(self.0.len() + other.0.len());
        factors.extend_from_slice(&self.0);
        factors.extend_from_slice(&other.0);
        factors.sort();
        MzvMonomial(factors)
    }
}

impl Ord for MzvMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MzvMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MzvMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let run = self.0[i..].iter().take_while(|k| **k == self.0[i]).count();
            if !first {
                f.write_str("·")?;
            }
            write!(f, "ζ({})", self.0[i])?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            first = false;
            i += run;
        }
        Ok(())
    }
}

/// Exact ℚ-linear combination of [`MzvMonomial`]s; zero coefficients are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MzvExpr {
    terms: BTreeMap<MzvMonomial, Rational>,
}

impl MzvExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(MzvMonomial::one(), c)
    }

    pub fn term(m: MzvMonomial, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    /// `ζ(k)` for admissible `k`.
    pub fn zeta(k: Index) -> Self {
        Self::term(MzvMonomial::zeta(k), Rational::one())
    }

    /// `Σ c·ζ(k)` over a combination of admissible indices.
    pub fn from_combination(a: &IndexCombination) -> Self {
        let mut out = Self::zero();
        for (k, c) in a.iter() {
            out.add_term(MzvMonomial::zeta(k.clone()), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MzvMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &MzvMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_part(&self) -> Rational {
        self.coefficient(&MzvMonomial::one())
    }

    pub fn add_term(&mut self, m: MzvMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MzvExpr, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, q) in &other.terms {
            self.add_term(m.clone(), q * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> MzvExpr {
        let mut out = MzvExpr::zero();
        out.add_scaled(self, c);
        out
    }

    /// Product with monomials multiplied as multisets (no flattening).
    pub fn mul(&self, other: &MzvExpr) -> MzvExpr {
        let mut out = MzvExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// True when every monomial has at most one factor.
    pub fn is_depth_one(&self) -> bool {
        self.terms.keys().all(|m| m.degree() <= 1)
    }

    /// The common weight of all monomials, if there is one. `None` for zero.
    pub fn homogeneous_weight(&self) -> Option<usize> {
        let mut weights = self.terms.keys().map(MzvMonomial::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn flatten(&self) -> MzvExpr {
        flatten_products(self)
    }
}

impl Add for &MzvExpr {
    type Output = MzvExpr;
    fn add(self, rhs: &MzvExpr) -> MzvExpr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &MzvExpr {
    type Output = MzvExpr;
    fn sub(self, rhs: &MzvExpr) -> MzvExpr {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &MzvExpr {
    type Output = MzvExpr;
    fn neg(self) -> MzvExpr {
        self.scaled(&-Rational::one())
    }
}

impl Mul for &MzvExpr {
    type Output = MzvExpr;
    fn mul(self, rhs: &MzvExpr) -> MzvExpr {
        MzvExpr::mul(self, rhs)
    }
}

/// `q·ζ(…)` terms joined by signs; constants print as the bare rational.
impl fmt::Display for MzvExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{}·{m}", c.abs())?;
            }
        }
        Ok(())
    }
}

static FLATTEN_MEMO: LazyLock<RwLock<HashMap<MzvMonomial, Arc<MzvExpr>>>> =
    LazyLock::new(Default::default);

/// Rewrites products of symbols as single symbols using
/// `ζ(k)ζ(l) = ζ(k * l)`. The output is depth one and numerically equal to the input.
pub fn flatten_products(e: &MzvExpr) -> MzvExpr {
    let mut out = MzvExpr::zero();
    for (m, c) in e.iter() {
        if m.degree() <= 1 {
            out.add_term(m.clone(), c.clone());
        } else {
            out.add_scaled(&flatten_monomial(m), c);
        }
    }
    out
}

fn flatten_monomial(m: &MzvMonomial) -> Arc<MzvExpr> {
    if let Some(hit) = FLATTEN_MEMO.read().unwrap().get(m) {
        return Arc::clone(hit);
    }
    let mut acc = IndexCombination::from_index(Index::empty());
    for factor in m.factors() {
        acc = product_linear(
            &acc,
            &IndexCombination::from_index(factor.clone()),
            Product::Stuffle,
        );
    }
    // Stuffles of admissible indices stay admissible.
    let result = Arc::new(MzvExpr::from_combination(&acc));
    FLATTEN_MEMO
        .write()
        .unwrap()
        .entry(m.clone())
        .or_insert_with(|| Arc::clone(&result));
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(parts: &[u32]) -> MzvExpr {
        MzvExpr::zeta(Index::new(parts.to_vec()))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn zeta_of_empty_is_one() {
        assert_eq!(MzvExpr::zeta(Index::empty()), MzvExpr::one());
    }

    #[test]
    fn flatten_examples() {
        let lhs = &z(&[2]) * &z(&[3]);
        assert_eq!(lhs.to_string(), "1·ζ(2)·ζ(3)");
        let expected = &(&z(&[2, 3]) + &z(&[3, 2])) + &z(&[5]);
        assert_eq!(flatten_products(&lhs), expected);

        let single = z(&[2, 1]).scaled(&q(-3, 7));
        assert_eq!(flatten_products(&single), single);

        let square = &z(&[2]) * &z(&[2]);
        assert_eq!(square.to_string(), "1·ζ(2)^2");
        assert_eq!(
            flatten_products(&square),
            &z(&[2, 2]).scaled(&q(2, 1)) + &z(&[4])
        );
    }

    #[test]
    fn arithmetic_normalizes() {
        let e = &z(&[3]) - &z(&[3]);
        assert!(e.is_zero());
        assert_eq!(e.to_string(), "0");
        let e = &MzvExpr::constant(q(1, 2)) - &z(&[2]).scaled(&q(1, 2));
        assert_eq!(e.to_string(), "1/2-1/2·ζ(2)");
        assert_eq!(e.homogeneous_weight(), None);
        assert_eq!(z(&[2, 1]).homogeneous_weight(), Some(3));
    }
}
