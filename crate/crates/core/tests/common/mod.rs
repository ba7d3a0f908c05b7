//! Independent reference implementations used by several test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mzv_core::{BigFloat, Index, IndexCombination, Rational, Word};
use num_bigint::BigInt;

pub const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628";
pub const LN2: &str =
    "0.69314718055994530941723212145817656807550013436025525412068000949339362196";

pub fn idx(parts: &[u32]) -> Index {
    Index::new(parts.to_vec())
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn combo(terms: &[(i64, &[u32])]) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for &(c, parts) in terms {
        out.add_term(idx(parts), q(c));
    }
    out
}

fn word_letters(k: &Index) -> Vec<u8> {
    let mut out = Vec::new();
    for &p in k.parts() {
        out.extend(std::iter::repeat_n(0u8, p as usize - 1));
        out.push(1);
    }
    out
}

fn letters_to_index(w: &[u8]) -> Index {
    let mut parts = Vec::new();
    let mut run = 1;
    for &a in w {
        if a == 1 {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    Index::new(parts)
}

/// Shuffle product by enumerating every position subset of the merged word.
pub fn shuffle_oracle(k: &Index, l: &Index) -> IndexCombination {
    let (u, v) = (word_letters(k), word_letters(l));
    let n = u.len() + v.len();
    let mut counts: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut merged = Vec::with_capacity(n);
        for pos in 0..n {
            if mask >> pos & 1 == 1 {
                merged.push(u[i]);
                i += 1;
            } else {
                merged.push(v[j]);
                j += 1;
            }
        }
        *counts.entry(merged).or_default() += 1;
    }
    let mut out = IndexCombination::zero();
    for (w, c) in counts {
        out.add_term(letters_to_index(&w), q(c));
    }
    out
}

/// Stuffle product through the first-letter recursion
/// `(a,k')*(b,l') = (a, k'*l) + (b, k*l') + (a+b, k'*l')`.
pub fn stuffle_oracle(k: &Index, l: &Index) -> IndexCombination {
    fn go(k: &[u32], l: &[u32]) -> BTreeMap<Vec<u32>, i64> {
        let mut out = BTreeMap::new();
        if k.is_empty() || l.is_empty() {
            out.insert([k, l].concat(), 1);
            return out;
        }
        let mut prepend = |head: u32, tail: BTreeMap<Vec<u32>, i64>| {
            for (w, c) in tail {
                let mut full = vec![head];
                full.extend(w);
                *out.entry(full).or_insert(0) += c;
            }
        };
        prepend(k[0], go(&k[1..], l));
        prepend(l[0], go(k, &l[1..]));
        prepend(k[0] + l[0], go(&k[1..], &l[1..]));
        out
    }
    let mut out = IndexCombination::zero();
    for (parts, c) in go(k.parts(), l.parts()) {
        out.add_term(Index::new(parts), q(c));
    }
    out
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let mut out = BigInt::from(1);
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Number of quasi-shuffles of sequences of lengths `r` and `s`.
pub fn delannoy(r: u64, s: u64) -> BigInt {
    (0..=r.min(s))
        .map(|k| binomial(r, k) * binomial(s, k) * (BigInt::from(1) << k))
        .sum()
}

pub fn constant(text: &str, bits: u32) -> BigFloat {
    BigFloat::parse_decimal(text, bits).expect("valid constant")
}

/// `π²/6` at the given precision.
pub fn zeta2_oracle(bits: u32) -> BigFloat {
    let pi = constant(PI, bits);
    (&pi * &pi).div_int(6)
}

/// `Li₂(1/2) = π²/12 − (log 2)²/2`.
pub fn li2_half_oracle(bits: u32) -> BigFloat {
    let pi = constant(PI, bits);
    let l = constant(LN2, bits);
    &(&pi * &pi).div_int(12) - &(&l * &l).half()
}

pub fn word(letters: &[u8]) -> Word {
    Word::new(letters.to_vec())
}
