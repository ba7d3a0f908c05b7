use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rational;

/// Working precision in bits for a target of `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * 3.33).ceil() as u32 + 32
}

/// Binary fixed-point real: the value is `mantissa / 2^bits`.
///
/// Precision is absolute, which matches how residuals are judged. Both operands
/// of a binary operation must carry the same precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mantissa: BigInt,
    bits: u32,
}

fn rounded_div(n: &BigInt, d: &BigInt) -> BigInt {
    // half away from zero; d > 0
    let twice: BigInt = n.abs() * 2u32 + d;
    let q = twice.div_floor(&(d * 2u32));
    if n.is_negative() {
        -q
    } else {
        q
    }
}

fn round_shift(n: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return n.clone();
    }
    rounded_div(n, &(BigInt::from(1) << shift))
}

impl BigFloat {
    pub fn zero(bits: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        Self::from_integer(1, bits)
    }

    pub fn from_integer(n: i64, bits: u32) -> Self {
        BigFloat {
            mantissa: BigInt::from(n) << bits,
            bits,
        }
    }

    /// Nearest representable value to `q`.
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let scaled: BigInt = q.numer() << bits;
        BigFloat {
            mantissa: rounded_div(&scaled, q.denom()),
            bits,
        }
    }

    /// Parses a plain decimal such as `-1.25` or `3`.
    pub fn parse_decimal(text: &str, bits: u32) -> Option<Self> {
        let text = text.trim();
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        Some(Self::from_rational(&Rational::new(numer, denom), bits))
    }

    pub fn precision(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            bits: self.bits,
        }
    }

    /// Rescales to another precision, rounding when precision drops.
    pub fn with_precision(&self, bits: u32) -> Self {
        let mantissa = match bits.cmp(&self.bits) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa << (bits - self.bits),
            Ordering::Less => round_shift(&self.mantissa, self.bits - bits),
        };
        BigFloat { mantissa, bits }
    }

    pub fn div_int(&self, d: u64) -> Self {
        assert!(d > 0, "division by zero");
        BigFloat {
            mantissa: rounded_div(&self.mantissa, &BigInt::from(d)),
            bits: self.bits,
        }
    }

    pub fn div_bigint(&self, d: &BigInt) -> Self {
        assert!(d.is_positive(), "division by a non-positive integer");
        BigFloat {
            mantissa: rounded_div(&self.mantissa, d),
            bits: self.bits,
        }
    }

    /// Halves exactly when possible, otherwise rounds.
    pub fn half(&self) -> Self {
        self.div_int(2)
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        BigFloat {
            mantissa: rounded_div(&(&self.mantissa * q.numer()), q.denom()),
            bits: self.bits,
        }
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), BigInt::from(1) << self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let len = self.mantissa.bits() as i64;
        let drop = (len - 62).max(0);
        let top = (&self.mantissa >> drop as usize).to_f64().unwrap_or(0.0);
        let exponent = drop - self.bits as i64;
        // split the scaling so intermediate powers stay finite
        let half = exponent / 2;
        top * 2f64.powi(half as i32) * 2f64.powi((exponent - half) as i32)
    }

    /// Decimal string with exactly `decimals` digits after the point, rounded.
    pub fn to_decimal_string(&self, decimals: u32) -> String {
        let scale = num_traits::pow(BigInt::from(10), decimals as usize);
        let scaled = rounded_div(&(&self.mantissa * scale), &(BigInt::from(1) << self.bits));
        let negative = scaled.sign() == Sign::Minus;
        let mut digits = scaled.abs().to_string();
        if digits.len() <= decimals as usize {
            digits = format!(
                "{}{digits}",
                "0".repeat(decimals as usize + 1 - digits.len())
            );
        }
        let split = digits.len() - decimals as usize;
        let (int_part, frac_part) = digits.split_at(split);
        let sign = if negative { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// `|self| < 10^{-exp}`.
    pub fn abs_below_pow10(&self, exp: u32) -> bool {
        let lhs = self.mantissa.abs() * num_traits::pow(BigInt::from(10), exp as usize);
        lhs < (BigInt::from(1) << self.bits)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "mixed-precision arithmetic");
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        self.check(rhs);
        BigFloat {
            mantissa: &self.mantissa + &rhs.mantissa,
            bits: self.bits,
        }
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self.check(rhs);
        BigFloat {
            mantissa: &self.mantissa - &rhs.mantissa,
            bits: self.bits,
        }
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        self.check(rhs);
        BigFloat {
            mantissa: round_shift(&(&self.mantissa * &rhs.mantissa), self.bits),
            bits: self.bits,
        }
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mantissa: -&self.mantissa,
            bits: self.bits,
        }
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.bits == other.bits).then(|| self.mantissa.cmp(&other.mantissa))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decimals = f.precision().unwrap_or((self.bits as f64 / 3.33) as usize) as u32;
        f.write_str(&self.to_decimal_string(decimals))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_round_trip_and_rounding() {
        let x = BigFloat::from_rational(&q(1, 3), 100);
        assert_eq!(x.to_decimal_string(10), "0.3333333333");
        let y = BigFloat::from_rational(&q(-2, 3), 100);
        assert_eq!(y.to_decimal_string(5), "-0.66667");
        assert_eq!(
            BigFloat::from_rational(&q(5, 4), 4).to_decimal_string(0),
            "1"
        );
        assert_eq!(
            BigFloat::from_rational(&q(-3, 2), 4).to_decimal_string(0),
            "-2"
        );
        assert_eq!(BigFloat::from_integer(0, 8).to_decimal_string(3), "0.000");
    }

    #[test]
    fn rounded_division_is_symmetric() {
        for n in -20i64..=20 {
            for d in 1i64..=7 {
                let got = rounded_div(&BigInt::from(n), &BigInt::from(d));
                let expected = ((n as f64) / (d as f64)).round() as i64;
                assert_eq!(got, BigInt::from(expected), "{n}/{d}");
            }
        }
    }

    #[test]
    fn arithmetic() {
        let bits = 120;
        let a = BigFloat::from_rational(&q(3, 2), bits);
        let b = BigFloat::from_rational(&q(-1, 4), bits);
        assert_eq!((&a * &b).to_rational(), q(-3, 8));
        assert_eq!((&a + &b).to_rational(), q(5, 4));
        assert_eq!((&a - &b).to_rational(), q(7, 4));
        assert_eq!(a.div_int(3).to_rational(), q(1, 2));
        assert_eq!(a.mul_rational(&q(2, 3)).to_rational(), q(1, 1));
        assert!((a.to_f64() - 1.5).abs() < 1e-15);
        assert!((BigFloat::from_rational(&q(1, 1_000_000), 400).to_f64() - 1e-6).abs() < 1e-20);
    }

    #[test]
    fn parse_decimal_forms() {
        let bits = 80;
        assert_eq!(
            BigFloat::parse_decimal("-1.25", bits)
                .unwrap()
                .to_rational(),
            q(-5, 4)
        );
        assert_eq!(
            BigFloat::parse_decimal("3", bits).unwrap().to_rational(),
            q(3, 1)
        );
        assert_eq!(
            BigFloat::parse_decimal(".5", bits).unwrap().to_rational(),
            q(1, 2)
        );
        assert!(BigFloat::parse_decimal("1.2.3", bits).is_none());
        assert!(BigFloat::parse_decimal("", bits).is_none());
        let x = BigFloat::from_rational(&q(22, 7), bits);
        let s = x.to_decimal_string(20);
        let y = BigFloat::parse_decimal(&s, bits).unwrap();
        assert!((&x - &y).abs_below_pow10(20));
    }

    #[test]
    fn precision_changes() {
        let x = BigFloat::from_rational(&q(1, 3), 64);
        let y = x.with_precision(128);
        assert_eq!(y.with_precision(64), x);
        assert!(BigFloat::from_rational(&q(1, 1000), 64).abs_below_pow10(2));
        assert!(!BigFloat::from_rational(&q(1, 10), 64).abs_below_pow10(2));
    }
}
