//! Iterated integrals at 1/2 and the split of `ζ(w)` into products of them.
//!
//! `G_w(x) = I(0; a₁…a_n; x)` with `a₁` outermost, `ω₀ = dt/t`, `ω₁ = dt/(1−t)`.
//! Its Taylor coefficients are built by prepending letters to the empty word
//! (`G_ε = 1`): prepending 0 maps `c_N ↦ c_N/N`, prepending 1 maps
//! `c ↦ (Σ_{M<N} c_M)/N`. Everything is carried as `e_N = c_N·2^{−N}`, so the
//! value at 1/2 is `Σ e_N` and the terms decay geometrically.

use num_bigint::BigInt;

use super::bigfloat::{bits_for_digits, BigFloat};
use crate::error::{MzvError, Result};
use crate::index::{Index, Word};
use crate::Rational;

/// Consecutive sub-threshold terms required before the series is cut.
const QUIET_RUN: usize = 10;
/// Extra decimal digits below the target that a term must reach to count as quiet.
const TERM_MARGIN_DIGITS: u32 = 5;

/// Result of [`eval_series_word_detailed`].
#[derive(Clone, Debug)]
pub struct SeriesEvaluation {
    pub value: BigFloat,
    /// `N*`: index of the last retained term.
    pub terms_used: usize,
    /// Four times the last retained term, a bound on the discarded tail.
    pub tail_bound: BigFloat,
}

/// The scaled coefficients `e_0 … e_n` of `G_w` at 1/2.
pub fn series_terms(w: &Word, bits: u32, n: usize) -> Result<Vec<BigFloat>> {
    if !w.is_index_encodable() {
        return Err(MzvError::DivergentWord(w.to_string()));
    }
    let mut e = vec![BigFloat::zero(bits); n + 1];
    e[0] = BigFloat::one(bits);
    for &letter in w.letters().iter().rev() {
        let mut next = vec![BigFloat::zero(bits); n + 1];
        match letter {
            0 => {
                for (m, slot) in next.iter_mut().enumerate().skip(1) {
                    *slot = e[m].div_int(m as u64);
                }
            }
            _ => {
                // running = Σ_{M<m} e_M 2^{M−m}
                let mut running = BigFloat::zero(bits);
                for m in 1..=n {
                    running = (&running + &e[m - 1]).half();
                    next[m] = running.div_int(m as u64);
                }
            }
        }
        e = next;
    }
    Ok(e)
}

/// `Σ_{N ≤ n} e_N`, a fixed-length truncation of `G_w(1/2)`.
pub fn eval_series_word_with_terms(w: &Word, bits: u32, n: usize) -> Result<BigFloat> {
    let terms = series_terms(w, bits, n)?;
    Ok(terms.iter().fold(BigFloat::zero(bits), |acc, t| &acc + t))
}

/// `G_w(1/2)` with absolute error below `10^{−digits}`.
pub fn eval_series_word(w: &Word, digits: u32) -> Result<BigFloat> {
    eval_series_word_detailed(w, digits).map(|s| s.value)
}

/// Like [`eval_series_word`] and also reports the cut-off point.
///
/// Terms are accumulated until `QUIET_RUN` consecutive ones fall below
/// `10^{−digits−5}`; the tail beyond is bounded by four times the last term.
pub fn eval_series_word_detailed(w: &Word, digits: u32) -> Result<SeriesEvaluation> {
    let bits = bits_for_digits(digits);
    if w.is_empty() {
        return Ok(SeriesEvaluation {
            value: BigFloat::one(bits),
            terms_used: 0,
            tail_bound: BigFloat::zero(bits),
        });
    }
    let threshold = digits + TERM_MARGIN_DIGITS;
    let mut n = ((threshold as f64) * std::f64::consts::LOG2_10).ceil() as usize + 4 * w.len() + 32;
    loop {
        let terms = series_terms(w, bits, n)?;
        // c_N vanishes below the word length, so quiet runs only count from there.
        let mut run = 0;
        for (m, term) in terms.iter().enumerate().skip(w.len()) {
            if term.abs_below_pow10(threshold) {
                run += 1;
                if run == QUIET_RUN {
                    let value = terms[..=m]
                        .iter()
                        .fold(BigFloat::zero(bits), |acc, t| &acc + t);
                    let tail_bound = term
                        .abs()
                        .mul_rational(&Rational::from_integer(BigInt::from(4)));
                    return Ok(SeriesEvaluation {
                        value,
                        terms_used: m,
                        tail_bound,
                    });
                }
            } else {
                run = 0;
            }
        }
        n *= 2;
    }
}

/// Path-composition split at 1/2 of an admissible word `w = a₁…a_n`.
///
/// Returns `(u_k, v_k)` for `k = 0..=n` with `v_k = a_{k+1}…a_n` and
/// `u_k = (1−a_k)…(1−a₁)`, so that `ζ(w) = Σ_k G_{u_k}(1/2)·G_{v_k}(1/2)`.
pub fn holder_split(w: &Word) -> Result<Vec<(Word, Word)>> {
    let letters = w.letters();
    let admissible = letters.is_empty() || (letters[0] == 0 && letters[letters.len() - 1] == 1);
    if !admissible {
        return Err(MzvError::NotAdmissible(w.to_string()));
    }
    Ok((0..=letters.len())
        .map(|k| {
            let u: Vec<u8> = letters[..k].iter().rev().map(|&a| 1 - a).collect();
            let v = letters[k..].to_vec();
            (Word::new(u), Word::new(v))
        })
        .collect())
}

/// Precision of [`eval_truncated_sum`]; far finer than its truncation error.
pub const TRUNCATED_SUM_DIGITS: u32 = 30;

/// The defining nested sum with `m₁ ≤ n`.
///
/// A low-accuracy cross-check only: the truncation error decays like `1/n`
/// times `(log n)^{r−1}` for depth `r`.
pub fn eval_truncated_sum(k: &Index, n: u64) -> Result<BigFloat> {
    if !k.is_admissible() {
        return Err(MzvError::NotAdmissible(k.to_string()));
    }
    let bits = bits_for_digits(TRUNCATED_SUM_DIGITS);
    let parts = k.parts();
    let r = parts.len();
    // acc[i] = Σ over m ≥ m_{i+1} > … > m_r ≥ 1 of Π_{j>i} m_j^{−k_j}; acc[r] = 1.
    let mut acc = vec![BigFloat::zero(bits); r + 1];
    acc[r] = BigFloat::one(bits);
    for m in 1..=n {
        // outermost first so each level sees the previous m's inner sums
        for i in 0..r {
            let power = num_traits::pow(BigInt::from(m), parts[i] as usize);
            acc[i] = &acc[i] + &acc[i + 1].div_bigint(&power);
        }
    }
    Ok(acc.swap_remove(0))
}
