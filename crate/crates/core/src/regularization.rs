//! The stuffle and shuffle regularizations `ζ^•(k;T)` as polynomials in `T`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{product, IndexCombination, Product};
use crate::expr::{flatten_products, MzvExpr};
use crate::index::Index;
use crate::Rational;

/// A polynomial in `T` with [`MzvExpr`] coefficients. Zero coefficients are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RegPolynomial {
    coeffs: BTreeMap<u32, MzvExpr>,
}

impl RegPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(MzvExpr::one())
    }

    pub fn constant(e: MzvExpr) -> Self {
        Self::monomial(0, e)
    }

    /// The polynomial `T`.
    pub fn t() -> Self {
        Self::monomial(1, MzvExpr::one())
    }

    /// `e·T^j`.
    pub fn monomial(j: u32, e: MzvExpr) -> Self {
        let mut out = Self::zero();
        out.add_coefficient(j, &e);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coefficient(&self, j: u32) -> MzvExpr {
        self.coeffs.get(&j).cloned().unwrap_or_default()
    }

    pub fn leading_coefficient(&self) -> MzvExpr {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero coefficients by ascending `T`-exponent.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &MzvExpr)> {
        self.coeffs.iter().map(|(&j, e)| (j, e))
    }

    pub fn add_coefficient(&mut self, j: u32, e: &MzvExpr) {
        self.add_coefficient_scaled(j, e, &Rational::one());
    }

    pub fn add_coefficient_scaled(&mut self, j: u32, e: &MzvExpr, c: &Rational) {
        if e.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(j).or_default();
        slot.add_scaled(e, c);
        if slot.is_zero() {
            self.coeffs.remove(&j);
        }
    }

    pub fn add_scaled(&mut self, other: &RegPolynomial, c: &Rational) {
        for (j, e) in other.iter() {
            self.add_coefficient_scaled(j, e, c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> RegPolynomial {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &RegPolynomial) -> RegPolynomial {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// Multiplies by `T`.
    pub fn shift(&self) -> RegPolynomial {
        RegPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&j, e)| (j + 1, e.clone()))
                .collect(),
        }
    }

    /// Multiplies every coefficient by the scalar expression `e`.
    pub fn mul_expr(&self, e: &MzvExpr) -> RegPolynomial {
        let mut out = Self::zero();
        for (j, c) in self.iter() {
            out.add_coefficient(j, &c.mul(e));
        }
        out
    }

    pub fn mul(&self, other: &RegPolynomial) -> RegPolynomial {
        poly_multiply(self, other)
    }

    /// Applies [`flatten_products`] coefficientwise.
    pub fn flatten(&self) -> RegPolynomial {
        let mut out = Self::zero();
        for (j, e) in self.iter() {
            out.add_coefficient(j, &flatten_products(e));
        }
        out
    }

    /// Constant term, `p(0)`.
    pub fn at_zero(&self) -> MzvExpr {
        self.coefficient(0)
    }
}

/// Convolution in `T`; coefficient monomials multiply as multisets.
pub fn poly_multiply(p: &RegPolynomial, q: &RegPolynomial) -> RegPolynomial {
    let mut out = RegPolynomial::zero();
    for (i, a) in p.iter() {
        for (j, b) in q.iter() {
            out.add_coefficient(i + j, &a.mul(b));
        }
    }
    out
}

/// Renders `Σ_j (c_j)·T^j` from the top degree down; single-term coefficients lose
/// their parentheses and a constant polynomial prints as its coefficient.
impl fmt::Display for RegPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (&j, e)) in self.coeffs.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if e.len() == 1 {
                write!(f, "{e}")?;
            } else {
                write!(f, "({e})")?;
            }
            match j {
                0 => {}
                1 => f.write_str("·T")?,
                _ => write!(f, "·T^{j}")?,
            }
        }
        Ok(())
    }
}

type RegularizeMemo = HashMap<(Index, Product), Arc<RegPolynomial>>;

static REGULARIZE_MEMO: LazyLock<RwLock<RegularizeMemo>> = LazyLock::new(Default::default);

/// `ζ^•(k;T)`, memoized on `(k, •)`.
///
/// Admissible indices map to the constant `ζ(k)`. Otherwise write `k = (1, k')`
/// and expand `(1)•k'`: it contains `k` with coefficient `b(k)` and every other
/// term has fewer leading ones, so the homomorphism property
/// `T·ζ^•(k') = ζ^•((1)•k')` solves for `ζ^•(k;T)`.
pub fn regularize(k: &Index, which: Product) -> RegPolynomial {
    (*regularize_shared(k, which, true)).clone()
}

/// Same result as [`regularize`] computed without consulting or filling the memo table.
pub fn regularize_uncached(k: &Index, which: Product) -> RegPolynomial {
    (*regularize_shared(k, which, false)).clone()
}

fn regularize_shared(k: &Index, which: Product, memo: bool) -> Arc<RegPolynomial> {
    let key = (k.clone(), which);
    if memo {
        if let Some(hit) = REGULARIZE_MEMO.read().unwrap().get(&key) {
            return Arc::clone(hit);
        }
    }
    let result = Arc::new(regularize_step(k, which, memo));
    if memo {
        REGULARIZE_MEMO
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&result));
    }
    result
}

fn regularize_step(k: &Index, which: Product, memo: bool) -> RegPolynomial {
    if k.is_admissible() {
        return RegPolynomial::constant(MzvExpr::zeta(k.clone()));
    }
    if k.parts() == [1] {
        return RegPolynomial::t();
    }
    let (_, tail) = k.split_first().expect("non-admissible index is nonempty");
    let mut expansion = product(&Index::new(vec![1]), &tail, which);
    let c = expansion.coefficient(k);
    assert_eq!(
        c,
        Rational::from_integer(BigInt::from(k.leading_ones_count())),
        "coefficient of ({k}) in (1){}({tail}) must equal b(k)",
        which.symbol()
    );
    expansion.add_term(k.clone(), -c.clone());

    let mut out = regularize_shared(&tail, which, memo).shift();
    for (l, cl) in expansion.iter() {
        out.add_scaled(&regularize_shared(l, which, memo), &-cl.clone());
    }
    out.scaled(&c.recip())
}

/// Linear extension of [`regularize`].
pub fn regularize_linear(a: &IndexCombination, which: Product) -> RegPolynomial {
    let mut out = RegPolynomial::zero();
    for (k, c) in a.iter() {
        out.add_scaled(&regularize_shared(k, which, true), c);
    }
    out
}

/// `Σ_{j=0}^{b(k)} ζ^•(k^j;0)·T^j/j!`, the leading-ones expansion of `ζ^•(k;T)`.
pub fn leading_ones_expansion(k: &Index, which: Product) -> RegPolynomial {
    let split = k.leading_ones();
    let mut out = RegPolynomial::zero();
    let mut factorial = BigInt::one();
    for j in 0..=split.ones {
        if j > 0 {
            factorial *= BigInt::from(j);
        }
        let constant = regularize(&split.truncated(j), which).at_zero();
        out.add_coefficient_scaled(
            j as u32,
            &constant,
            &Rational::new(BigInt::one(), factorial.clone()),
        );
    }
    out
}
