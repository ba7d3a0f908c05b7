//! Arbitrary-precision evaluation of admissible MZVs and symbolic expressions.

mod bigfloat;
mod cache;
mod series;

use std::collections::HashMap;
use std::sync::RwLock;

pub use bigfloat::{bits_for_digits, BigFloat};
pub use cache::{EvalCache, CACHE_ENV};
pub use series::{
    eval_series_word, eval_series_word_detailed, eval_series_word_with_terms, eval_truncated_sum,
    holder_split, series_terms, SeriesEvaluation, TRUNCATED_SUM_DIGITS,
};

use crate::error::{MzvError, Result};
use crate::expr::MzvExpr;
use crate::index::{Index, Word};

/// Default precision for verification sweeps.
pub const DEFAULT_DIGITS: u32 = 40;
/// Extra digits carried while summing the split series.
const GUARD_DIGITS: u32 = 10;
/// Extra digits kept in stored decimal strings beyond the requested precision.
const STORED_EXTRA_DIGITS: u32 = 5;

/// Evaluates MZV symbols through the Hölder split, backed by an [`EvalCache`].
///
/// Every value passes through its stored decimal form, so cold and warm runs
/// return bit-identical results.
#[derive(Debug, Default)]
pub struct Evaluator {
    cache: EvalCache,
    values: RwLock<HashMap<(Index, u32), BigFloat>>,
    words: RwLock<HashMap<(Word, u32), BigFloat>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: EvalCache) -> Self {
        Evaluator {
            cache,
            ..Self::default()
        }
    }

    pub fn cache(&self) -> &EvalCache {
        &self.cache
    }

    pub fn save(&self) -> Result<()> {
        self.cache.save()
    }

    /// `ζ(k)` with absolute error below `10^{−digits}`, at `bits_for_digits(digits)`.
    pub fn eval_index(&self, k: &Index, digits: u32) -> Result<BigFloat> {
        if !k.is_admissible() {
            return Err(MzvError::NotAdmissible(k.to_string()));
        }
        let bits = bits_for_digits(digits);
        if k.is_empty() {
            return Ok(BigFloat::one(bits));
        }
        let key = (k.clone(), digits);
        if let Some(v) = self.values.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let text = match self.cache.get(k, digits) {
            Some(text) => text,
            None => {
                let text = self
                    .eval_index_fresh(k, digits)?
                    .to_decimal_string(digits + STORED_EXTRA_DIGITS);
                self.cache.insert(k, digits, text.clone());
                text
            }
        };
        let value = BigFloat::parse_decimal(&text, bits).ok_or_else(|| MzvError::CacheValue {
            key: EvalCache::key(k, digits),
            value: text.clone(),
        })?;
        self.values.write().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// Recomputes `ζ(k)` without consulting any cache.
    pub fn eval_index_fresh(&self, k: &Index, digits: u32) -> Result<BigFloat> {
        if !k.is_admissible() {
            return Err(MzvError::NotAdmissible(k.to_string()));
        }
        let working = digits + GUARD_DIGITS;
        let bits = bits_for_digits(working);
        let mut total = BigFloat::zero(bits);
        for (u, v) in holder_split(&k.to_word())? {
            let gu = self.word_value(&u, working)?;
            let gv = self.word_value(&v, working)?;
            total = &total + &(&gu * &gv);
        }
        Ok(total.with_precision(bits_for_digits(digits)))
    }

    fn word_value(&self, w: &Word, digits: u32) -> Result<BigFloat> {
        let key = (w.clone(), digits);
        if let Some(v) = self.words.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let value = eval_series_word(w, digits)?;
        self.words.write().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// `Σ q·Π ζ(factor)` over the terms of `e`.
    pub fn eval_expr(&self, e: &MzvExpr, digits: u32) -> Result<BigFloat> {
        let bits = bits_for_digits(digits);
        let mut total = BigFloat::zero(bits);
        for (m, c) in e.iter() {
            let mut term = BigFloat::one(bits);
            for factor in m.factors() {
                term = &term * &self.eval_index(factor, digits)?;
            }
            total = &total + &term.mul_rational(c);
        }
        Ok(total)
    }
}
