//! Mult-indices, words over `{x, y}`, and the column order used by elimination.
//!
//! A mult-index `(k_1, ..., k_r)` corresponds to the word `z_{k_1} ... z_{k_r}`
//! with `z_k = x^{k-1} y`. Words are stored as length-tagged bit strings with
//! `x = 0`, `y = 1` and the first letter in the most significant position, so
//! the integer code of a word `a_1 ... a_k` is `1 + sum a_i 2^{k-i}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest word degree a [`Word`] can hold.
pub const MAX_WORD_DEGREE: u32 = 63;

/// Largest weight for which a [`ColumnTable`] can be built.
pub const MAX_SYSTEM_WEIGHT: u32 = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    Y,
}

/// A word over `{x, y}`; `x = 0`, `y = 1`, first letter most significant.
///
/// Ordering is by degree first, then by code, which is the canonical term
/// order for dumps.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };
    pub const X: Word = Word { len: 1, bits: 0 };
    pub const Y: Word = Word { len: 1, bits: 1 };

    /// Builds a word from its raw bit pattern. Bits above `len` must be clear.
    pub fn from_bits(bits: u64, len: u32) -> Self {
        assert!(
            len <= MAX_WORD_DEGREE,
            "word degree {len} exceeds {MAX_WORD_DEGREE}"
        );
        debug_assert!(len == 64 || bits >> len == 0);
        Word {
            len: len as u8,
            bits,
        }
    }

    /// `z_k = x^{k-1} y`.
    pub fn z(k: u32) -> Self {
        assert!(k >= 1, "z_k needs k >= 1");
        Word::from_bits(1, k)
    }

    /// `y^n`.
    pub fn y_power(n: u32) -> Self {
        if n == 0 {
            return Word::EMPTY;
        }
        Word::from_bits((1u64 << n) - 1, n)
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.len as u32
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// The integer code `1 + sum a_i 2^{k-i}`; unique among words of one degree.
    #[inline]
    pub fn code(self) -> u64 {
        1 + self.bits
    }

    /// Letter at 0-based position `i`.
    #[inline]
    pub fn letter(self, i: u32) -> Letter {
        debug_assert!(i < self.degree());
        if (self.bits >> (self.degree() - 1 - i)) & 1 == 1 {
            Letter::Y
        } else {
            Letter::X
        }
    }

    pub fn first(self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.letter(0))
    }

    pub fn last(self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.letter(self.degree() - 1))
    }

    #[inline]
    pub fn concat(self, other: Word) -> Word {
        let len = self.degree() + other.degree();
        assert!(
            len <= MAX_WORD_DEGREE,
            "word degree {len} exceeds {MAX_WORD_DEGREE}"
        );
        Word {
            len: len as u8,
            bits: (self.bits << other.len) | other.bits,
        }
    }

    /// The first `n` letters.
    #[inline]
    pub fn prefix(self, n: u32) -> Word {
        debug_assert!(n <= self.degree());
        Word {
            len: n as u8,
            bits: self.bits >> (self.degree() - n),
        }
    }

    /// Everything after the first `n` letters.
    #[inline]
    pub fn suffix_from(self, n: u32) -> Word {
        debug_assert!(n <= self.degree());
        let len = self.degree() - n;
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        Word {
            len: len as u8,
            bits: self.bits & mask,
        }
    }

    /// True iff the word is empty or ends in `y`, i.e. it is a product of z-letters.
    pub fn is_z_form(self) -> bool {
        self.is_empty() || self.bits & 1 == 1
    }

    /// True iff the word is empty or lies in `x{x,y}*y`.
    pub fn is_admissible(self) -> bool {
        self.is_empty() || (self.bits & 1 == 1 && self.letter(0) == Letter::X)
    }

    /// Number of leading `y` letters.
    pub fn leading_ys(self) -> u32 {
        if self.is_empty() {
            return 0;
        }
        let shifted = self.bits << (64 - self.degree());
        shifted.leading_ones().min(self.degree())
    }

    pub fn parse_letters(s: &str) -> Result<Word> {
        let mut w = Word::EMPTY;
        for ch in s.chars() {
            let letter = match ch {
                'x' => Word::X,
                'y' => Word::Y,
                _ => return Err(Error::InvalidIndex(format!("letter `{ch}` in word `{s}`"))),
            };
            w = w.concat(letter);
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for i in 0..self.degree() {
            f.write_str(match self.letter(i) {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A mult-index `(k_1, ..., k_r)` of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultIndex(Vec<u32>);

impl MultIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(format!("{parts:?} has a zero part")));
        }
        Ok(MultIndex(parts))
    }

    /// Panicking constructor for literals in code and tests.
    pub fn from_parts(parts: &[u32]) -> Self {
        MultIndex::new(parts.to_vec()).expect("mult-index parts must be positive")
    }

    pub fn empty() -> Self {
        MultIndex(Vec::new())
    }

    /// `(1, ..., 1)` with `n` ones.
    pub fn ones(n: u32) -> Self {
        MultIndex(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&k| k >= 2)
    }

    /// Every part is 2 or 3. The empty index counts as Hoffman (weight 0).
    pub fn is_hoffman(&self) -> bool {
        self.0.iter().all(|&k| k == 2 || k == 3)
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&k| k == 1)
    }

    /// `z_{k_1} ... z_{k_r}`.
    pub fn to_word(&self) -> Word {
        self.0
            .iter()
            .fold(Word::EMPTY, |w, &k| w.concat(Word::z(k)))
    }

    /// Inverse of [`MultIndex::to_word`].
    pub fn from_word(w: Word) -> Result<Self> {
        if !w.is_z_form() {
            return Err(Error::NotZForm(w.to_string()));
        }
        let mut parts = Vec::new();
        let mut run = 0u32;
        for i in 0..w.degree() {
            run += 1;
            if w.letter(i) == Letter::Y {
                parts.push(run);
                run = 0;
            }
        }
        Ok(MultIndex(parts))
    }

    /// Code of the associated word, used as a stable key for all compositions.
    pub fn code(&self) -> u64 {
        self.to_word().code()
    }
}

impl fmt::Display for MultIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for MultIndex {
    type Err = Error;

    /// Parses `3,1`, `(3,1)` or an empty string for the empty index.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if trimmed.is_empty() || trimmed == "∅" {
            return Ok(MultIndex::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidIndex(format!("`{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        MultIndex::new(parts)
    }
}

/// All compositions of `k` (or only the admissible ones), in ascending word-code order.
pub fn enumerate_indices(k: u32, admissible_only: bool) -> Vec<MultIndex> {
    if k == 0 {
        return vec![MultIndex::empty()];
    }
    assert!(k <= MAX_WORD_DEGREE, "weight {k} exceeds {MAX_WORD_DEGREE}");
    // Words of degree k ending in y; admissible ones also start with x.
    let upper = if admissible_only {
        1u64 << (k - 1)
    } else {
        1u64 << k
    };
    (1..upper)
        .step_by(2)
        .map(|bits| MultIndex::from_word(Word::from_bits(bits, k)).expect("ends in y"))
        .collect()
}

/// Hoffman mult-indices (all parts in `{2, 3}`) of weight `k`, optionally of depth `r`,
/// in lexicographic order.
pub fn hoffman_indices(k: u32, depth: Option<usize>) -> Vec<MultIndex> {
    fn extend(rest: u32, parts: &mut Vec<u32>, out: &mut Vec<MultIndex>) {
        if rest == 0 {
            out.push(MultIndex(parts.clone()));
            return;
        }
        for part in [2, 3] {
            if part <= rest {
                parts.push(part);
                extend(rest - part, parts, out);
                parts.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(k, &mut Vec::new(), &mut out);
    if let Some(r) = depth {
        out.retain(|m| m.depth() == r);
    }
    out
}

/// The elimination column order for one weight.
///
/// Columns are grouped into depth blocks with deeper blocks first; inside a
/// block the non-Hoffman indices precede the Hoffman ones, and each of the two
/// sub-blocks is sorted lexicographically descending. Column ids are 1-based
/// positions in this order.
#[derive(Clone, Debug)]
pub struct ColumnTable {
    weight: u32,
    order: Vec<MultIndex>,
    /// Indexed by `word.bits() >> 1` of the admissible word of weight `weight`.
    id_by_word: Vec<u32>,
    /// `blocks[r]` = id range of depth `r` (empty range when there are none).
    blocks: Vec<std::ops::Range<u32>>,
}

impl ColumnTable {
    pub fn build(k: u32) -> Result<Self> {
        if !(2..=MAX_SYSTEM_WEIGHT).contains(&k) {
            return Err(Error::WeightOutOfRange {
                weight: k,
                min: 2,
                max: MAX_SYSTEM_WEIGHT,
            });
        }
        let mut by_depth: Vec<Vec<MultIndex>> = vec![Vec::new(); k as usize];
        for m in enumerate_indices(k, true) {
            by_depth[m.depth()].push(m);
        }
        let mut order = Vec::with_capacity(1 << (k - 2));
        let mut blocks = vec![0..0; k as usize];
        for r in (1..k as usize).rev() {
            let (mut hoffman, mut other): (Vec<_>, Vec<_>) =
                by_depth[r].drain(..).partition(MultIndex::is_hoffman);
            other.sort_by(|a, b| b.cmp(a));
            hoffman.sort_by(|a, b| b.cmp(a));
            let start = order.len() as u32 + 1;
            order.extend(other);
            order.extend(hoffman);
            blocks[r] = start..order.len() as u32 + 1;
        }
        let mut id_by_word = vec![0u32; 1 << (k - 2)];
        for (pos, m) in order.iter().enumerate() {
            id_by_word[(m.to_word().bits() >> 1) as usize] = pos as u32 + 1;
        }
        Ok(ColumnTable {
            weight: k,
            order,
            id_by_word,
            blocks,
        })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The index at 1-based column `id`.
    pub fn index(&self, id: u32) -> &MultIndex {
        &self.order[id as usize - 1]
    }

    pub fn order(&self) -> &[MultIndex] {
        &self.order
    }

    pub fn id_of(&self, m: &MultIndex) -> Option<u32> {
        if m.weight() != self.weight || !m.is_admissible() || m.is_empty() {
            return None;
        }
        self.id_of_word(m.to_word())
    }

    /// Column id of an admissible word of this table's weight.
    #[inline]
    pub fn id_of_word(&self, w: Word) -> Option<u32> {
        if w.degree() != self.weight || !w.is_admissible() {
            return None;
        }
        Some(self.id_by_word[(w.bits() >> 1) as usize])
    }

    /// Id range of the depth-`r` block; empty when `r` is out of range.
    pub fn depth_block(&self, r: usize) -> std::ops::Range<u32> {
        self.blocks.get(r).cloned().unwrap_or(0..0)
    }

    pub fn depth_of(&self, id: u32) -> usize {
        self.index(id).depth()
    }

    pub fn is_hoffman(&self, id: u32) -> bool {
        self.index(id).is_hoffman()
    }

    /// Depth order: `i < j` implies `depth(K_i) >= depth(K_j)`.
    pub fn satisfies_depth_order(&self) -> bool {
        let n = self.order.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.order[i].depth() >= self.order[j].depth()))
    }

    /// Hoffman order: inside equal depth, no Hoffman index precedes a non-Hoffman one.
    pub fn satisfies_hoffman_order(&self) -> bool {
        let n = self.order.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let (a, b) = (&self.order[i], &self.order[j]);
                a.depth() != b.depth() || !(a.is_hoffman() && !b.is_hoffman())
            })
        })
    }

    /// The column dump: `# weight k` then `<id> <k_1>,<k_2>,...` per line.
    pub fn dump(&self) -> String {
        let mut out = format!("# weight {}\n", self.weight);
        for (pos, m) in self.order.iter().enumerate() {
            out.push_str(&format!("{} {}\n", pos + 1, m));
        }
        out
    }

    /// Map from index to id, for callers that want owned lookups.
    pub fn to_map(&self) -> HashMap<MultIndex, u32> {
        self.order
            .iter()
            .enumerate()
            .map(|(pos, m)| (m.clone(), pos as u32 + 1))
            .collect()
    }
}
