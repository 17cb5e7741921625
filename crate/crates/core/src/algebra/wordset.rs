use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::index::{MultIndex, Word};

/// Support of a mod-2 combination of words: a sorted, duplicate-free word list.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2WordSet {
    words: Vec<Word>,
}

impl Gf2WordSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(w: Word) -> Self {
        Gf2WordSet { words: vec![w] }
    }

    /// Reduces a list of words with multiplicity mod 2.
    pub fn from_parity(mut words: Vec<Word>) -> Self {
        words.sort_unstable();
        let mut out = Vec::with_capacity(words.len());
        let mut i = 0;
        while i < words.len() {
            let mut j = i + 1;
            while j < words.len() && words[j] == words[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(words[i]);
            }
            i = j;
        }
        Gf2WordSet { words: out }
    }

    /// Builds from words already sorted and unique.
    pub(crate) fn from_sorted_unique(words: Vec<Word>) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Gf2WordSet { words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        self.words.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: Word) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    /// Symmetric difference.
    pub fn xor(&self, other: &Gf2WordSet) -> Gf2WordSet {
        let (a, b) = (&self.words, &other.words);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Gf2WordSet { words: out }
    }

    /// `w * self`: prepends `w` to each member. Order is preserved.
    pub fn prefixed(&self, w: Word) -> Gf2WordSet {
        Gf2WordSet {
            words: self.words.iter().map(|&v| w.concat(v)).collect(),
        }
    }

    /// The members as mult-indices; fails on a word ending in x.
    pub fn indices(&self) -> Result<Vec<MultIndex>> {
        self.words
            .iter()
            .map(|&w| MultIndex::from_word(w))
            .collect()
    }
}

impl fmt::Display for Gf2WordSet {
    /// Members as sorted `k_1,...,k_r` lists joined by ` + `; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<String> = self
            .words
            .iter()
            .map(|&w| match MultIndex::from_word(w) {
                Ok(m) => m.to_string(),
                Err(_) => w.to_string(),
            })
            .collect();
        items.sort();
        f.write_str(&items.join(" + "))
    }
}

impl fmt::Debug for Gf2WordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// An integer combination of words with no zero coefficients stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct IntWordPoly {
    terms: BTreeMap<Word, i64>,
}

impl IntWordPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(w: Word, c: i64) -> Self {
        let mut p = IntWordPoly::new();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &IntWordPoly, scale: i64) {
        for (&w, &c) in &other.terms {
            self.add_term(w, c * scale);
        }
    }

    pub fn prefixed(&self, w: Word) -> IntWordPoly {
        IntWordPoly {
            terms: self.terms.iter().map(|(&v, &c)| (w.concat(v), c)).collect(),
        }
    }

    pub fn coefficient(&self, w: Word) -> i64 {
        self.terms.get(&w).copied().unwrap_or(0)
    }

    /// Terms in canonical (degree, code) order.
    pub fn iter(&self) -> impl Iterator<Item = (Word, i64)> + '_ {
        self.terms.iter().map(|(&w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn mod2(&self) -> Gf2WordSet {
        Gf2WordSet::from_sorted_unique(
            self.terms
                .iter()
                .filter(|(_, &c)| c.rem_euclid(2) == 1)
                .map(|(&w, _)| w)
                .collect(),
        )
    }
}

impl fmt::Debug for IntWordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let items: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        f.write_str(&items.join(" + "))
    }
}
