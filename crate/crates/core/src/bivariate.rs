//! The bivariate polynomials `ζ_{x,y}^•(k;T)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{IndexCombination, Product};
use crate::expr::{flatten_products, MzvExpr};
use crate::index::Index;
use crate::regularization::{poly_multiply, regularize, RegPolynomial};
use crate::Rational;

/// Exponents `(a, b, j)` of the monomial `x^a y^b T^j`.
pub type XyTExponent = (u32, u32, u32);

/// A polynomial in `x`, `y`, `T` with [`MzvExpr`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<XyTExponent, MzvExpr>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial((0, 0, 0), MzvExpr::one())
    }

    pub fn monomial(exp: XyTExponent, e: MzvExpr) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, &e, &Rational::one());
        out
    }

    /// `x^a y^b · p(T)`.
    pub fn from_reg(a: u32, b: u32, p: &RegPolynomial) -> Self {
        let mut out = Self::zero();
        for (j, e) in p.iter() {
            out.add_term((a, b, j), e, &Rational::one());
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

    /// Nonzero terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (XyTExponent, &MzvExpr)> {
        self.terms.iter().map(|(&exp, e)| (exp, e))
    }

    /// Exact coefficient of `x^a y^b T^j`.
    pub fn coefficient(&self, a: u32, b: u32, j: u32) -> MzvExpr {
        self.terms.get(&(a, b, j)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: XyTExponent, e: &MzvExpr, c: &Rational) {
        if e.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        slot.add_scaled(e, c);
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add_scaled(&mut self, other: &BivariatePolynomial, c: &Rational) {
        for (exp, e) in other.iter() {
            self.add_term(exp, e, c);
        }
    }

    pub fn sub(&self, other: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn mul(&self, other: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = Self::zero();
        for ((a1, b1, j1), e1) in self.iter() {
            for ((a2, b2, j2), e2) in other.iter() {
                out.add_term((a1 + a2, b1 + b2, j1 + j2), &e1.mul(e2), &Rational::one());
            }
        }
        out
    }

    /// Multiplies by `(x+y)^m`.
    pub fn mul_x_plus_y_pow(&self, m: u32) -> BivariatePolynomial {
        let mut out = Self::zero();
        for ((a, b, j), e) in self.iter() {
            let mut binom = BigInt::one();
            for i in 0..=m {
                out.add_term(
                    (a + i, b + m - i, j),
                    e,
                    &Rational::from_integer(binom.clone()),
                );
                binom = binom * BigInt::from(m - i) / BigInt::from(i + 1);
            }
        }
        out
    }

    /// Exchanges `x` and `y`.
    pub fn swap_xy(&self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, j), e)| ((b, a, j), e.clone()))
                .collect(),
        }
    }

    /// Applies [`flatten_products`] to every coefficient.
    pub fn flatten(&self) -> BivariatePolynomial {
        let mut out = Self::zero();
        for (exp, e) in self.iter() {
            out.add_term(exp, &flatten_products(e), &Rational::one());
        }
        out
    }

    /// Substitutes exact rationals for `x` and `y`.
    pub fn specialize(&self, x0: &Rational, y0: &Rational) -> RegPolynomial {
        specialize(self, x0, y0)
    }

    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, _, j)| j).max()
    }
}

/// Renders `Σ (c)·x^a·y^b·T^j`, ordered by `a` descending, then `j` descending.
impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(x, _), (y, _)| y.0.cmp(&x.0).then(y.2.cmp(&x.2)).then(y.1.cmp(&x.1)));
        for (n, (&(a, b, j), e)) in ordered.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if e.len() == 1 {
                write!(f, "{e}")?;
            } else {
                write!(f, "({e})")?;
            }
            for (name, exp) in [("x", a), ("y", b), ("T", j)] {
                match exp {
                    0 => {}
                    1 => write!(f, "·{name}")?,
                    _ => write!(f, "·{name}^{exp}")?,
                }
            }
        }
        Ok(())
    }
}

type ZetaXyMemo = HashMap<(Index, Product), Arc<BivariatePolynomial>>;

static ZETA_XY_MEMO: LazyLock<RwLock<ZetaXyMemo>> = LazyLock::new(Default::default);

/// `ζ_{x,y}^•(k;T) = Σ_{i=0}^{r} x^{k₁+⋯+kᵢ} y^{k_{i+1}+⋯+k_r} ζ^•(kᵢ,…,k₁;T) ζ^•(k_{i+1},…,k_r;T)`.
///
/// Coefficients keep the products as two-factor monomials; call
/// [`BivariatePolynomial::flatten`] for a depth-one canonical form.
pub fn zeta_xy(k: &Index, which: Product) -> BivariatePolynomial {
    let key = (k.clone(), which);
    if let Some(hit) = ZETA_XY_MEMO.read().unwrap().get(&key) {
        return (**hit).clone();
    }
    let mut out = BivariatePolynomial::zero();
    let total = k.weight() as u32;
    for i in 0..=k.depth() {
        let (prefix, suffix) = k.split_at(i);
        let a = prefix.weight() as u32;
        let summand = poly_multiply(
            &regularize(&prefix.reversed(), which),
            &regularize(&suffix, which),
        );
        out.add_scaled(
            &BivariatePolynomial::from_reg(a, total - a, &summand),
            &Rational::one(),
        );
    }
    ZETA_XY_MEMO
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::new(out.clone()));
    out
}

/// Linear extension of [`zeta_xy`].
pub fn zeta_xy_linear(a: &IndexCombination, which: Product) -> BivariatePolynomial {
    let mut out = BivariatePolynomial::zero();
    for (k, c) in a.iter() {
        out.add_scaled(&zeta_xy(k, which), c);
    }
    out
}

/// Substitutes exact rationals for `x`, `y` and collects by powers of `T`.
pub fn specialize(p: &BivariatePolynomial, x0: &Rational, y0: &Rational) -> RegPolynomial {
    let mut out = RegPolynomial::zero();
    for ((a, b), j, e) in p.iter().map(|((a, b, j), e)| ((a, b), j, e)) {
        let weight =
            num_traits::pow(x0.clone(), a as usize) * num_traits::pow(y0.clone(), b as usize);
        out.add_coefficient_scaled(j, e, &weight);
    }
    out
}

/// Exact coefficient of `x^a y^b T^j`.
pub fn coefficient(p: &BivariatePolynomial, a: u32, b: u32, j: u32) -> MzvExpr {
    p.coefficient(a, b, j)
}
