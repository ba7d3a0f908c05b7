//! The series `A(u)`, `A_{x,y}(u)` and the maps `ρ`, `ρ_{x,y}`.
//!
//! `A(u) = exp(Σ_{n≥2} (−1)ⁿ/n·ζ(n)·uⁿ)` is expanded through the derivative
//! recurrence `n·aₙ = Σ_{m=2}^{n} (−1)^m ζ(m)·a_{n−m}`. The bivariate series
//! replaces `ζ(n)` by `ζ(n)(xⁿ+yⁿ)/(x+y)ⁿ`; its coefficients are kept over the
//! explicit denominator `(x+y)ⁿ`, which is the only denominator that occurs.
//!
//! `ρ` is defined by `ρ(e^{Tu}) = A(u)e^{Tu}`, that is
//! `ρ(T^j) = j!·Σ_{i=0}^{j} a_{j−i}·T^i/i!`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bivariate::BivariatePolynomial;
use crate::expr::MzvExpr;
use crate::index::Index;
use crate::regularization::RegPolynomial;
use crate::Rational;

/// Coefficients `a₀, a₁, …, a_{n_max}` of `A(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACoefficients {
    a: Vec<MzvExpr>,
}

impl ACoefficients {
    pub fn get(&self, n: usize) -> &MzvExpr {
        &self.a[n]
    }

    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    pub fn as_slice(&self) -> &[MzvExpr] {
        &self.a
    }
}

fn zeta_n(n: usize) -> MzvExpr {
    MzvExpr::zeta(Index::new(vec![n as u32]))
}

fn signed(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

static A_TABLE: LazyLock<RwLock<Vec<MzvExpr>>> =
    LazyLock::new(|| RwLock::new(vec![MzvExpr::one()]));
static A_XY_TABLE: LazyLock<RwLock<Vec<RationalFnCoeff>>> =
    LazyLock::new(|| RwLock::new(vec![RationalFnCoeff::one()]));

/// `a₀ … a_{n_max}`; the table is extended on demand and shared.
pub fn a_coefficients(n_max: usize) -> ACoefficients {
    {
        let table = A_TABLE.read().unwrap();
        if table.len() > n_max {
            return ACoefficients {
                a: table[..=n_max].to_vec(),
            };
        }
    }
    let mut table = A_TABLE.write().unwrap();
    while table.len() <= n_max {
        let n = table.len();
        let mut sum = MzvExpr::zero();
        for m in 2..=n {
            sum.add_scaled(&zeta_n(m).mul(&table[n - m]), &signed(m));
        }
        table.push(sum.scaled(&Rational::new(BigInt::one(), BigInt::from(n))));
    }
    ACoefficients {
        a: table[..=n_max].to_vec(),
    }
}

/// `ρ(p)`, extended linearly with the coefficients of `p` treated as scalars.
pub fn apply_rho(p: &RegPolynomial) -> RegPolynomial {
    let Some(deg) = p.degree() else {
        return RegPolynomial::zero();
    };
    let a = a_coefficients(deg as usize);
    let mut out = RegPolynomial::zero();
    for (j, c) in p.iter() {
        let j_fact = factorial(j);
        for i in 0..=j {
            let a_ji = a.get((j - i) as usize);
            if a_ji.is_zero() {
                continue;
            }
            let weight = Rational::new(j_fact.clone(), factorial(i));
            out.add_coefficient_scaled(i, &c.mul(a_ji), &weight);
        }
    }
    out
}

/// A polynomial in `x`, `y` with [`MzvExpr`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XyPoly {
    terms: BTreeMap<(u32, u32), MzvExpr>,
}

impl XyPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, MzvExpr::one())
    }

    pub fn monomial(a: u32, b: u32, e: MzvExpr) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, &e, &Rational::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &MzvExpr)> {
        self.terms.iter().map(|(&k, e)| (k, e))
    }

    pub fn coefficient(&self, a: u32, b: u32) -> MzvExpr {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, a: u32, b: u32, e: &MzvExpr, c: &Rational) {
        if e.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        slot.add_scaled(e, c);
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add_scaled(&mut self, other: &XyPoly, c: &Rational) {
        for ((a, b), e) in other.iter() {
            self.add_term(a, b, e, c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> XyPoly {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &XyPoly) -> XyPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn mul(&self, other: &XyPoly) -> XyPoly {
        let mut out = Self::zero();
        for ((a1, b1), e1) in self.iter() {
            for ((a2, b2), e2) in other.iter() {
                out.add_term(a1 + a2, b1 + b2, &e1.mul(e2), &Rational::one());
            }
        }
        out
    }

    /// `(x+y)^m`.
    pub fn x_plus_y_pow(m: u32) -> XyPoly {
        let mut out = Self::zero();
        let mut binom = BigInt::one();
        for i in 0..=m {
            out.add_term(
                i,
                m - i,
                &MzvExpr::one(),
                &Rational::from_integer(binom.clone()),
            );
            binom = binom * BigInt::from(m - i) / BigInt::from(i + 1);
        }
        out
    }

    /// Exact quotient by `(x+y)`, or `None` if `(x+y)` does not divide.
    pub fn div_x_plus_y(&self) -> Option<XyPoly> {
        // Work degree by degree: a homogeneous p of degree d equals (x+y)·q with
        // q_{d−1} = p_d and q_{a−1} = p_a − q_a (coefficients of x^a), remainder p_0 − q_0.
        let mut by_degree: BTreeMap<u32, BTreeMap<u32, MzvExpr>> = BTreeMap::new();
        for ((a, b), e) in self.iter() {
            by_degree.entry(a + b).or_default().insert(a, e.clone());
        }
        let mut out = XyPoly::zero();
        for (d, coeffs) in by_degree {
            if d == 0 {
                return None;
            }
            let mut carry = MzvExpr::zero();
            for a in (1..=d).rev() {
                let p_a = coeffs.get(&a).cloned().unwrap_or_default();
                let q = &p_a - &carry;
                out.add_term(a - 1, d - a, &q, &Rational::one());
                carry = q;
            }
            let p_0 = coeffs.get(&0).cloned().unwrap_or_default();
            if p_0 != carry {
                return None;
            }
        }
        Some(out)
    }

    /// Substitutes exact rationals for `x`, `y`.
    pub fn specialize(&self, x0: &Rational, y0: &Rational) -> MzvExpr {
        let mut out = MzvExpr::zero();
        for ((a, b), e) in self.iter() {
            out.add_scaled(
                e,
                &(num_traits::pow(x0.clone(), a as usize)
                    * num_traits::pow(y0.clone(), b as usize)),
            );
        }
        out
    }
}

impl fmt::Display for XyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((a, b), e)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({e})")?;
            for (name, exp) in [("x", *a), ("y", *b)] {
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

/// `numerator / (x+y)^denom_power`, kept unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFnCoeff {
    pub numerator: XyPoly,
    pub denom_power: u32,
}

impl RationalFnCoeff {
    pub fn one() -> Self {
        RationalFnCoeff {
            numerator: XyPoly::one(),
            denom_power: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Value at a point with `x0 + y0 ≠ 0`.
    pub fn specialize(&self, x0: &Rational, y0: &Rational) -> MzvExpr {
        let s = x0 + y0;
        assert!(!s.is_zero(), "x + y vanishes at the specialization point");
        let denom = num_traits::pow(s, self.denom_power as usize);
        self.numerator.specialize(x0, y0).scaled(&denom.recip())
    }

    /// Cancels common factors of `(x+y)` between numerator and denominator.
    pub fn reduced(&self) -> RationalFnCoeff {
        let mut out = self.clone();
        while out.denom_power > 0 {
            match out.numerator.div_x_plus_y() {
                Some(q) => {
                    out.numerator = q;
                    out.denom_power -= 1;
                }
                None => break,
            }
        }
        out
    }
}

/// Coefficients of `A_{x,y}(u)`; entry `n` has denominator `(x+y)ⁿ`.
pub fn a_coefficients_xy(n_max: usize) -> Vec<RationalFnCoeff> {
    {
        let table = A_XY_TABLE.read().unwrap();
        if table.len() > n_max {
            return table[..=n_max].to_vec();
        }
    }
    let mut table = A_XY_TABLE.write().unwrap();
    while table.len() <= n_max {
        let n = table.len();
        let mut numerator = XyPoly::zero();
        for m in 2..=n {
            // ζ(m)(x^m + y^m) / (x+y)^m times a_{n−m} / (x+y)^{n−m}
            let mut b_m = XyPoly::monomial(m as u32, 0, zeta_n(m));
            b_m.add_term(0, m as u32, &zeta_n(m), &Rational::one());
            numerator.add_scaled(&b_m.mul(&table[n - m].numerator), &signed(m));
        }
        table.push(RationalFnCoeff {
            numerator: numerator.scaled(&Rational::new(BigInt::one(), BigInt::from(n))),
            denom_power: n as u32,
        });
    }
    table[..=n_max].to_vec()
}

/// `ρ_{x,y}(p) = q / (x+y)^m`, with `q` a polynomial and `m = deg_T(p)`.
pub fn apply_rho_xy(p: &BivariatePolynomial) -> (BivariatePolynomial, u32) {
    let Some(m) = p.degree_t() else {
        return (BivariatePolynomial::zero(), 0);
    };
    let a = a_coefficients_xy(m as usize);
    let mut out = BivariatePolynomial::zero();
    for ((xa, yb, j), c) in p.iter() {
        let j_fact = factorial(j);
        for i in 0..=j {
            let coeff = &a[(j - i) as usize];
            if coeff.is_zero() {
                continue;
            }
            let weight = Rational::new(j_fact.clone(), factorial(i));
            let lifted = coeff
                .numerator
                .mul(&XyPoly::x_plus_y_pow(m - coeff.denom_power));
            for ((na, nb), e) in lifted.iter() {
                out.add_term((xa + na, yb + nb, i), &c.mul(e), &weight);
            }
        }
    }
    (out, m)
}
