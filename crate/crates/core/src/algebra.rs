//! Formal ℚ-linear combinations of indices and the stuffle and shuffle products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{MzvError, Result};
use crate::index::{parse_index, Index, Word};
use crate::Rational;

/// Selects one of the two products on indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Product {
    /// Harmonic (quasi-shuffle) product `*`.
    Stuffle,
    /// Shuffle product `ш` on zero-one words.
    Shuffle,
}

impl Product {
    pub const ALL: [Product; 2] = [Product::Stuffle, Product::Shuffle];

    pub fn symbol(self) -> &'static str {
        match self {
            Product::Stuffle => "*",
            Product::Shuffle => "ш",
        }
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Product::Stuffle => "stuffle",
            Product::Shuffle => "shuffle",
        })
    }
}

impl FromStr for Product {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "stuffle" | "harmonic" | "*" => Ok(Product::Stuffle),
            "shuffle" | "sha" | "ш" => Ok(Product::Shuffle),
            _ => Err(MzvError::UnknownProduct(s.to_string())),
        }
    }
}

/// An element of the ℚ-span of indices. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IndexCombination {
    terms: BTreeMap<Index, Rational>,
}

impl IndexCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: Index, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_index(k: Index) -> Self {
        Self::single(k, Rational::one())
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

    pub fn coefficient(&self, k: &Index) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical index order.
    pub fn iter(&self) -> impl Iterator<Item = (&Index, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, k: Index, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
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

    pub fn add_scaled(&mut self, other: &IndexCombination, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, q) in &other.terms {
            self.add_term(k.clone(), q * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> IndexCombination {
        let mut out = IndexCombination::zero();
        out.add_scaled(self, c);
        out
    }

    /// Appends `part` to every index in the support.
    pub fn push_part(&self, part: u32) -> IndexCombination {
        IndexCombination {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.pushed(part), c.clone()))
                .collect(),
        }
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl FromIterator<(Index, Rational)> for IndexCombination {
    fn from_iter<I: IntoIterator<Item = (Index, Rational)>>(iter: I) -> Self {
        let mut out = IndexCombination::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl From<Index> for IndexCombination {
    fn from(k: Index) -> Self {
        IndexCombination::from_index(k)
    }
}

/// `ca·a + cb·b`.
pub fn combine(
    a: &IndexCombination,
    b: &IndexCombination,
    ca: &Rational,
    cb: &Rational,
) -> IndexCombination {
    let mut out = a.scaled(ca);
    out.add_scaled(b, cb);
    out
}

/// Writes a signed sum of `q·(k)` terms, or `0`.
impl fmt::Display for IndexCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if k.is_empty() {
                write!(f, "{}·()", c.abs())?;
            } else {
                write!(f, "{}·({k})", c.abs())?;
            }
        }
        Ok(())
    }
}

impl FromStr for IndexCombination {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        parse_combination(s)
    }
}

/// Parses the text produced by `Display`; a missing coefficient means 1.
pub fn parse_combination(text: &str) -> Result<IndexCombination> {
    let fail = |reason: &str| MzvError::ParseCombination {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(IndexCombination::zero());
    }
    if compact.is_empty() {
        return Err(fail("empty input"));
    }

    let mut out = IndexCombination::zero();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let negative = matches!(rest.chars().next(), Some('-' | '−'));
        rest = rest
            .strip_prefix('+')
            .or_else(|| rest.strip_prefix('-'))
            .or_else(|| rest.strip_prefix('−'))
            .unwrap_or(rest);
        let open = rest
            .find('(')
            .ok_or_else(|| fail("term without an index"))?;
        let close = rest[open..]
            .find(')')
            .map(|p| p + open)
            .ok_or_else(|| fail("unbalanced parenthesis"))?;
        let coeff_text = rest[..open].trim_end_matches(['·', '*']);
        let mut coeff = if coeff_text.is_empty() {
            Rational::one()
        } else {
            parse_rational(coeff_text).ok_or_else(|| fail("bad coefficient"))?
        };
        if negative {
            coeff = -coeff;
        }
        let k = parse_index(&rest[open..=close])?;
        out.add_term(k, coeff);
        rest = &rest[close + 1..];
        if !(rest.is_empty() || rest.starts_with(['+', '-', '−'])) {
            return Err(fail("expected '+' or '-' between terms"));
        }
    }
    Ok(out)
}

/// Parses `p` or `p/q` with an optional sign.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

type StuffleKey = (Index, Index);
type ShuffleTable = BTreeMap<Word, BigInt>;
type ShuffleKey = (Word, Word);

static STUFFLE_MEMO: LazyLock<RwLock<HashMap<StuffleKey, Arc<IndexCombination>>>> =
    LazyLock::new(Default::default);
static SHUFFLE_MEMO: LazyLock<RwLock<HashMap<ShuffleKey, Arc<ShuffleTable>>>> =
    LazyLock::new(Default::default);

/// Stuffle product `k * l` by the right recursion
/// `(k*l', l_s) + (k'*l, k_r) + (k'*l', k_r+l_s)`, memoized on the index pair.
pub fn stuffle(k: &Index, l: &Index) -> IndexCombination {
    (*stuffle_shared(k, l)).clone()
}

fn stuffle_shared(k: &Index, l: &Index) -> Arc<IndexCombination> {
    let key = (k.clone(), l.clone());
    if let Some(hit) = STUFFLE_MEMO.read().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let result = Arc::new(stuffle_step(k, l));
    STUFFLE_MEMO
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&result));
    result
}

fn stuffle_step(k: &Index, l: &Index) -> IndexCombination {
    let (Some((k_init, k_last)), Some((l_init, l_last))) = (k.split_last(), l.split_last()) else {
        // One side is empty.
        return IndexCombination::from_index(if k.is_empty() { l.clone() } else { k.clone() });
    };
    let one = Rational::one();
    let mut out = stuffle_shared(k, &l_init).push_part(l_last);
    out.add_scaled(&stuffle_shared(&k_init, l).push_part(k_last), &one);
    out.add_scaled(
        &stuffle_shared(&k_init, &l_init).push_part(k_last + l_last),
        &one,
    );
    out
}

/// Shuffle product `k ш l`: interleave `φ(k)` and `φ(l)` and read the words back as indices.
pub fn shuffle(k: &Index, l: &Index) -> IndexCombination {
    let table = shuffle_words(&k.to_word(), &l.to_word());
    table
        .iter()
        .map(|(w, count)| {
            let index = w
                .to_index()
                .expect("interleavings of index-encodable words end in 1");
            (index, Rational::from_integer(count.clone()))
        })
        .collect()
}

/// Word shuffle with multiplicities, memoized on the word pair.
pub fn shuffle_words(u: &Word, v: &Word) -> Arc<ShuffleTable> {
    let key = (u.clone(), v.clone());
    if let Some(hit) = SHUFFLE_MEMO.read().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let result = Arc::new(shuffle_words_step(u, v));
    SHUFFLE_MEMO
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&result));
    result
}

fn shuffle_words_step(u: &Word, v: &Word) -> ShuffleTable {
    if u.is_empty() || v.is_empty() {
        let w = if u.is_empty() { v.clone() } else { u.clone() };
        return BTreeMap::from([(w, BigInt::one())]);
    }
    // (a·u') ш (b·v') = a·(u' ш b·v') + b·(a·u' ш v')
    let (a, u_tail) = (u.letters()[0], Word::new(u.letters()[1..].to_vec()));
    let (b, v_tail) = (v.letters()[0], Word::new(v.letters()[1..].to_vec()));
    let mut out = ShuffleTable::new();
    for (lead, sub) in [
        (a, shuffle_words(&u_tail, v)),
        (b, shuffle_words(u, &v_tail)),
    ] {
        for (w, count) in sub.iter() {
            let mut letters = Vec::with_capacity(w.len() + 1);
            letters.push(lead);
            letters.extend_from_slice(w.letters());
            *out.entry(Word::new(letters)).or_insert_with(BigInt::zero) += count;
        }
    }
    out
}

/// `k • l` for the chosen product.
pub fn product(k: &Index, l: &Index, which: Product) -> IndexCombination {
    match which {
        Product::Stuffle => stuffle(k, l),
        Product::Shuffle => shuffle(k, l),
    }
}

/// Bilinear extension of [`product`].
pub fn product_linear(
    a: &IndexCombination,
    b: &IndexCombination,
    which: Product,
) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for (k, ck) in a.iter() {
        for (l, cl) in b.iter() {
            out.add_scaled(&product(k, l, which), &(ck * cl));
        }
    }
    out
}
