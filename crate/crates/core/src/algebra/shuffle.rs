//! Shuffle product of words, exact over the integers and mod 2.

use std::sync::Arc;

use dashmap::DashMap;

use super::wordset::{Gf2WordSet, IntWordPoly};
use crate::index::Word;

/// Exact integer shuffle `u ⧢ v`, by dynamic programming over suffix pairs.
pub fn shuffle_int(u: Word, v: Word) -> IntWordPoly {
    let (m, n) = (u.degree() as usize, v.degree() as usize);
    let width = n + 1;
    // cell (i, j) holds u[i..] ⧢ v[j..]
    let mut grid: Vec<IntWordPoly> = vec![IntWordPoly::new(); (m + 1) * width];
    grid[m * width + n] = IntWordPoly::monomial(Word::EMPTY, 1);
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            if i == m && j == n {
                continue;
            }
            let mut cell = IntWordPoly::new();
            if i < m {
                let a = u.suffix_from(i as u32).prefix(1);
                cell.add_scaled(&grid[(i + 1) * width + j].prefixed(a), 1);
            }
            if j < n {
                let b = v.suffix_from(j as u32).prefix(1);
                cell.add_scaled(&grid[i * width + j + 1].prefixed(b), 1);
            }
            grid[i * width + j] = cell;
        }
    }
    grid.swap_remove(0)
}

/// Memoized mod-2 shuffle.
///
/// Products whose total degree is at most `max_degree` are computed by the
/// letter recursion and cached; larger ones are split at `l = floor(t / 2)`:
///
/// `a_1..a_m ⧢ b_1..b_n = sum_{i+j=l} (a_1..a_i ⧢ b_1..b_j)(a_{i+1}..a_m ⧢ b_{j+1}..b_n)`
///
/// and both halves come from the cache. Keys are unordered word pairs; any
/// word over `{x, y}` may appear in a key. The cache is sharded, so many
/// threads may read and insert concurrently.
#[derive(Debug)]
pub struct ShuffleMemo {
    max_degree: u32,
    cache: DashMap<(Word, Word), Arc<Gf2WordSet>>,
}

impl ShuffleMemo {
    pub fn new(max_degree: u32) -> Self {
        ShuffleMemo {
            max_degree: max_degree.max(1),
            cache: DashMap::new(),
        }
    }

    /// Memo sized for products of total degree `k`: caches up to `ceil(k / 2)`.
    pub fn for_weight(k: u32) -> Self {
        ShuffleMemo::new(k.div_ceil(2))
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.len()
    }

    pub fn shuffle(&self, u: Word, v: Word) -> Arc<Gf2WordSet> {
        if u.is_empty() {
            return Arc::new(Gf2WordSet::singleton(v));
        }
        if v.is_empty() {
            return Arc::new(Gf2WordSet::singleton(u));
        }
        let total = u.degree() + v.degree();
        if total <= self.max_degree {
            self.cached(u, v)
        } else {
            Arc::new(self.split(u, v, total / 2))
        }
    }

    fn cached(&self, u: Word, v: Word) -> Arc<Gf2WordSet> {
        let key = if u <= v { (u, v) } else { (v, u) };
        if let Some(hit) = self.cache.get(&key) {
            return Arc::clone(hit.value());
        }
        // au ⧢ bv = a(u ⧢ bv) + b(au ⧢ v)
        let (a, rest_u) = (u.prefix(1), u.suffix_from(1));
        let (b, rest_v) = (v.prefix(1), v.suffix_from(1));
        let left = self.shuffle(rest_u, v).prefixed(a);
        let right = self.shuffle(u, rest_v).prefixed(b);
        let value = Arc::new(left.xor(&right));
        self.cache.entry(key).or_insert(value).value().clone()
    }

    fn split(&self, u: Word, v: Word, l: u32) -> Gf2WordSet {
        let (m, n) = (u.degree(), v.degree());
        let mut terms = Vec::new();
        for i in l.saturating_sub(n)..=l.min(m) {
            let j = l - i;
            let head = self.shuffle(u.prefix(i), v.prefix(j));
            let tail = self.shuffle(u.suffix_from(i), v.suffix_from(j));
            terms.reserve(head.len() * tail.len());
            for h in head.iter() {
                for t in tail.iter() {
                    terms.push(h.concat(t));
                }
            }
        }
        Gf2WordSet::from_parity(terms)
    }
}

/// Mod-2 shuffle with a fresh memo sized for `deg u + deg v`.
pub fn shuffle_gf2(u: Word, v: Word) -> Gf2WordSet {
    let memo = ShuffleMemo::for_weight(u.degree() + v.degree());
    (*memo.shuffle(u, v)).clone()
}
