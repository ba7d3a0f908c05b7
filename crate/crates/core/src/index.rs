//! Indices, their zero-one words, and enumeration by weight.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{MzvError, Result};

/// A finite sequence of positive integers `(k₁,…,k_r)`; the empty index is allowed.
///
/// Indices order by weight, then depth, then lexicographically on parts.
/// Every canonical form in the crate relies on this order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Index(Vec<u32>);

impl Index {
    /// Builds an index, panicking if a part is zero.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p >= 1),
            "index parts must be positive: {parts:?}"
        );
        Index(parts)
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// The index `({1}^b)`.
    pub fn ones(b: usize) -> Self {
        Index(vec![1; b])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Empty, or first component greater than one.
    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&k| k > 1)
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.weight());
        for &k in &self.0 {
            letters.extend(std::iter::repeat_n(0, k as usize - 1));
            letters.push(1);
        }
        Word(letters)
    }

    /// Splits `k = ({1}^b, l)` with `l` admissible.
    pub fn leading_ones(&self) -> LeadingOnes {
        let b = self.0.iter().take_while(|&&p| p == 1).count();
        LeadingOnes {
            ones: b,
            rest: Index(self.0[b..].to_vec()),
        }
    }

    /// Number of leading ones, `b(k)`.
    pub fn leading_ones_count(&self) -> usize {
        self.0.iter().take_while(|&&p| p == 1).count()
    }

    pub fn reversed(&self) -> Index {
        Index(self.0.iter().rev().copied().collect())
    }

    /// `(k₁,…,k_r, part)`.
    pub fn pushed(&self, part: u32) -> Index {
        assert!(part >= 1);
        let mut parts = Vec::with_capacity(self.0.len() + 1);
        parts.extend_from_slice(&self.0);
        parts.push(part);
        Index(parts)
    }

    /// `(part, k₁,…,k_r)`.
    pub fn prepended(&self, part: u32) -> Index {
        assert!(part >= 1);
        let mut parts = Vec::with_capacity(self.0.len() + 1);
        parts.push(part);
        parts.extend_from_slice(&self.0);
        Index(parts)
    }

    /// Splits off the last part: `(k₁,…,k_{r−1})` and `k_r`.
    pub fn split_last(&self) -> Option<(Index, u32)> {
        self.0
            .split_last()
            .map(|(&last, init)| (Index(init.to_vec()), last))
    }

    /// Splits off the first part: `k₁` and `(k₂,…,k_r)`.
    pub fn split_first(&self) -> Option<(u32, Index)> {
        self.0
            .split_first()
            .map(|(&first, tail)| (first, Index(tail.to_vec())))
    }

    /// Prefix `(k₁,…,k_i)` and suffix `(k_{i+1},…,k_r)`.
    pub fn split_at(&self, i: usize) -> (Index, Index) {
        let (head, tail) = self.0.split_at(i);
        (Index(head.to_vec()), Index(tail.to_vec()))
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Index(parts)
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.depth().cmp(&other.depth()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for Index {
    fn from(parts: Vec<u32>) -> Self {
        Index::new(parts)
    }
}

impl<const N: usize> From<[u32; N]> for Index {
    fn from(parts: [u32; N]) -> Self {
        Index::new(parts.to_vec())
    }
}

/// Renders `k1,k2,...,kr`, or `()` for the empty index.
impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for Index {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        parse_index(s)
    }
}

/// Parses `"k1,k2,...,kr"` or the literal `"()"`.
///
/// A surrounding pair of parentheses is tolerated, so `"(2,1)"` also parses.
pub fn parse_index(text: &str) -> Result<Index> {
    let trimmed = text.trim();
    let body = match trimmed.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(inner) => inner.trim(),
        None => trimmed,
    };
    if body.is_empty() {
        if trimmed == "()" {
            return Ok(Index::empty());
        }
        return Err(MzvError::ParseIndex {
            input: text.to_string(),
            token: String::new(),
        });
    }
    body.split(',')
        .map(|token| {
            let token = token.trim();
            match token.parse::<u32>() {
                Ok(k) if k >= 1 => Ok(k),
                _ => Err(MzvError::ParseIndex {
                    input: text.to_string(),
                    token: token.to_string(),
                }),
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Index)
}

/// Result of [`Index::leading_ones`]: `k = ({1}^ones, rest)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingOnes {
    pub ones: usize,
    pub rest: Index,
}

impl LeadingOnes {
    /// `k^j = ({1}^{b−j}, l)` for `0 ≤ j ≤ b`.
    pub fn truncated(&self, j: usize) -> Index {
        assert!(j <= self.ones, "j = {j} exceeds b = {}", self.ones);
        Index::ones(self.ones - j).concat(&self.rest)
    }

    pub fn reassemble(&self) -> Index {
        self.truncated(0)
    }
}

/// A zero-one word. Letter 0 stands for `dt/t`, letter 1 for `dt/(1−t)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        assert!(
            letters.iter().all(|&a| a <= 1),
            "word letters must be 0 or 1"
        );
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Empty or ending in 1.
    pub fn is_index_encodable(&self) -> bool {
        self.0.last().is_none_or(|&a| a == 1)
    }

    pub fn to_index(&self) -> Result<Index> {
        if !self.is_index_encodable() {
            return Err(MzvError::NotIndexEncodable(self.to_string()));
        }
        let mut parts = Vec::with_capacity(self.0.iter().filter(|&&a| a == 1).count());
        let mut run = 0u32;
        for &a in &self.0 {
            run += 1;
            if a == 1 {
                parts.push(run);
                run = 0;
            }
        }
        Ok(Index(parts))
    }
}

impl From<Vec<u8>> for Word {
    fn from(letters: Vec<u8>) -> Self {
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

pub fn index_to_word(k: &Index) -> Word {
    k.to_word()
}

pub fn word_to_index(w: &Word) -> Result<Index> {
    w.to_index()
}

pub fn reverse_index(k: &Index) -> Index {
    k.reversed()
}

/// Lazily enumerates all compositions of `weight`.
///
/// Order: by depth ascending, and within one depth lexicographically
/// descending, so weight 3 yields `(3), (2,1), (1,2), (1,1,1)`.
pub fn enumerate_indices(weight: usize) -> Compositions {
    Compositions {
        weight,
        current: if weight == 0 {
            Some(Vec::new())
        } else {
            Some(vec![weight as u32])
        },
    }
}

/// All indices of weight `0..=max_weight`, in enumeration order.
pub fn indices_up_to(max_weight: usize) -> impl Iterator<Item = Index> {
    (0..=max_weight).flat_map(enumerate_indices)
}

/// Iterator returned by [`enumerate_indices`].
#[derive(Clone, Debug)]
pub struct Compositions {
    weight: usize,
    current: Option<Vec<u32>>,
}

impl Compositions {
    fn successor(&self, parts: &[u32]) -> Option<Vec<u32>> {
        let depth = parts.len();
        if depth == 0 {
            return None;
        }
        // Rightmost position (other than the last) that can give away a unit.
        if let Some(i) = (0..depth - 1).rev().find(|&i| parts[i] > 1) {
            let mut next = parts[..=i].to_vec();
            next[i] -= 1;
            let suffix_len = depth - i - 1;
            let suffix_sum: u32 = parts[i + 1..].iter().sum::<u32>() + 1;
            next.push(suffix_sum - (suffix_len as u32 - 1));
            next.extend(std::iter::repeat_n(1, suffix_len - 1));
            return Some(next);
        }
        // Depth exhausted: first composition of the next depth.
        if depth < self.weight {
            let mut next = vec![(self.weight - depth) as u32];
            next.extend(std::iter::repeat_n(1, depth));
            return Some(next);
        }
        None
    }
}

impl Iterator for Compositions {
    type Item = Index;

    fn next(&mut self) -> Option<Index> {
        let parts = self.current.take()?;
        self.current = self.successor(&parts);
        Some(Index(parts))
    }
}
