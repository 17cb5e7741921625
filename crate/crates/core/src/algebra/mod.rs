//! Shuffle and stuffle products and shuffle regularization.
//!
//! Production arithmetic is mod 2 throughout: products accumulate by symmetric
//! difference and the sign `(-1)^n` of the regularization vanishes. The exact
//! integer versions exist for cross-checking at small degree.

mod shuffle;
mod stuffle;
mod wordset;

use std::sync::Arc;

use dashmap::DashMap;

pub use shuffle::{shuffle_gf2, shuffle_int, ShuffleMemo};
pub use stuffle::{stuffle_gf2, stuffle_int};
pub use wordset::{Gf2WordSet, IntWordPoly};

use crate::error::{Error, Result};
use crate::index::{MultIndex, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Shuffle,
    Stuffle,
}

/// Splits a z-form word as `y^n z_N` with `z_N` empty or starting with `x`.
fn split_leading_ys(w: Word) -> Result<(u32, Word)> {
    if !w.is_z_form() {
        return Err(Error::NotZForm(w.to_string()));
    }
    let n = w.leading_ys();
    Ok((n, w.suffix_from(n)))
}

/// Integer regularization `reg(y^n z_N) = (-1)^n x (y^n ⧢ z_{N'})` where `z_N = x z_{N'}`.
pub fn regularize_int(w: Word) -> Result<IntWordPoly> {
    let (n, rest) = split_leading_ys(w)?;
    if n == 0 {
        return Ok(IntWordPoly::monomial(w, 1));
    }
    if rest.is_empty() {
        return Ok(IntWordPoly::new());
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let mut out = IntWordPoly::new();
    out.add_scaled(
        &shuffle_int(Word::y_power(n), rest.suffix_from(1)).prefixed(Word::X),
        sign,
    );
    Ok(out)
}

/// Applies [`regularize_int`] termwise.
pub fn regularize_poly_int(p: &IntWordPoly) -> Result<IntWordPoly> {
    let mut out = IntWordPoly::new();
    for (w, c) in p.iter() {
        out.add_scaled(&regularize_int(w)?, c);
    }
    Ok(out)
}

/// Shared state for mod-2 products: the shuffle memo and a regularization cache.
///
/// One instance serves one weight run; both caches are safe to share across
/// worker threads.
#[derive(Debug)]
pub struct WordAlgebra {
    shuffles: ShuffleMemo,
    regularized: DashMap<Word, Arc<Gf2WordSet>>,
}

impl WordAlgebra {
    pub fn new(memo_max_degree: u32) -> Self {
        WordAlgebra {
            shuffles: ShuffleMemo::new(memo_max_degree),
            regularized: DashMap::new(),
        }
    }

    pub fn for_weight(k: u32) -> Self {
        WordAlgebra::new(k.div_ceil(2))
    }

    pub fn shuffle_memo(&self) -> &ShuffleMemo {
        &self.shuffles
    }

    pub fn shuffle(&self, u: Word, v: Word) -> Arc<Gf2WordSet> {
        self.shuffles.shuffle(u, v)
    }

    /// Mod-2 regularization of one z-form word. The result consists of admissible words.
    pub fn regularize(&self, w: Word) -> Result<Arc<Gf2WordSet>> {
        let (n, rest) = split_leading_ys(w)?;
        if n == 0 {
            return Ok(Arc::new(Gf2WordSet::singleton(w)));
        }
        if rest.is_empty() {
            return Ok(Arc::new(Gf2WordSet::new()));
        }
        if let Some(hit) = self.regularized.get(&w) {
            return Ok(Arc::clone(hit.value()));
        }
        let value = Arc::new(
            self.shuffles
                .shuffle(Word::y_power(n), rest.suffix_from(1))
                .prefixed(Word::X),
        );
        Ok(self.regularized.entry(w).or_insert(value).value().clone())
    }

    /// Termwise regularization of a mod-2 combination, XOR-accumulated.
    pub fn regularize_set(&self, s: &Gf2WordSet) -> Result<Gf2WordSet> {
        let mut terms = Vec::new();
        for w in s.iter() {
            if w.leading_ys() == 0 {
                terms.push(w);
            } else {
                terms.extend(self.regularize(w)?.iter());
            }
        }
        Ok(Gf2WordSet::from_parity(terms))
    }

    /// The unregularized mod-2 product `z_K ⧢ z_L` or `z_K * z_L`.
    pub fn product(&self, kind: ProductKind, k: &MultIndex, l: &MultIndex) -> Gf2WordSet {
        match kind {
            ProductKind::Shuffle => (*self.shuffle(k.to_word(), l.to_word())).clone(),
            ProductKind::Stuffle => stuffle_gf2(k, l),
        }
    }

    /// `reg(z_K ⧢ z_L)` or `reg(z_K * z_L)` mod 2.
    pub fn reg_product(
        &self,
        kind: ProductKind,
        k: &MultIndex,
        l: &MultIndex,
    ) -> Result<Gf2WordSet> {
        match kind {
            ProductKind::Shuffle => self.regularize_set(&self.shuffle(k.to_word(), l.to_word())),
            ProductKind::Stuffle => self.regularize_set(&stuffle_gf2(k, l)),
        }
    }
}

/// Mod-2 regularization of a single word with a throwaway context.
pub fn regularize_word_gf2(w: Word) -> Result<Gf2WordSet> {
    let algebra = WordAlgebra::for_weight(w.degree());
    Ok((*algebra.regularize(w)?).clone())
}

/// `reg` of a mod-2 product with a throwaway context.
pub fn reg_product_gf2(kind: ProductKind, k: &MultIndex, l: &MultIndex) -> Result<Gf2WordSet> {
    WordAlgebra::for_weight(k.weight() + l.weight()).reg_product(kind, k, l)
}
