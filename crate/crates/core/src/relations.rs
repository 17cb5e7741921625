//! Relation pair families and generation of binary EDS linear systems.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{Gf2WordSet, ProductKind, WordAlgebra};
use crate::error::{Error, Result};
use crate::index::{enumerate_indices, ColumnTable, MultIndex};
use crate::system::{Gf2Combination, LinearSystem, Row};

/// Which pairs `(K, L)` a system is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// All extended pairs: `K` admissible or all-ones, `L` admissible.
    Eds,
    /// Both components admissible.
    Fds,
    /// FDS pairs plus `(1) x mids(k-1)`.
    Mjpo,
    /// `{(3),(2,1)} x mids(k-3)`, `{(2)} x mids(k-2)` and `(1) x mids(k-1)`.
    Knt,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Eds, Family::Fds, Family::Mjpo, Family::Knt];

    pub fn name(self) -> &'static str {
        match self {
            Family::Eds => "eds",
            Family::Fds => "fds",
            Family::Mjpo => "mjpo",
            Family::Knt => "knt",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "eds" => Ok(Family::Eds),
            "fds" => Ok(Family::Fds),
            "mjpo" => Ok(Family::Mjpo),
            "knt" => Ok(Family::Knt),
            other => Err(Error::InvalidIndex(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairFamily {
    pub family: Family,
    pub weight: u32,
}

impl PairFamily {
    pub fn new(family: Family, weight: u32) -> Self {
        PairFamily { family, weight }
    }
}

pub type Pair = (MultIndex, MultIndex);

/// Admissible indices of weight `i`.
fn mids(i: u32) -> Vec<MultIndex> {
    enumerate_indices(i, true)
}

/// Admissible indices of weight `i` together with `(1, ..., 1)`.
fn emids(i: u32) -> Vec<MultIndex> {
    let mut out = mids(i);
    let ones = MultIndex::ones(i);
    if !out.contains(&ones) {
        out.push(ones);
    }
    out
}

fn product(lefts: &[MultIndex], rights: &[MultIndex], out: &mut Vec<Pair>) {
    for k in lefts {
        for l in rights {
            if !k.is_empty() && !l.is_empty() {
                out.push((k.clone(), l.clone()));
            }
        }
    }
}

/// Every pair of the family exactly once, ordered by `(weight K, code K, code L)`.
///
/// Pairs with an empty component give the zero relation and are left out.
pub fn enumerate_pairs(family: PairFamily) -> Vec<Pair> {
    let k = family.weight;
    let mut pairs = Vec::new();
    if k < 2 {
        return pairs;
    }
    match family.family {
        Family::Eds => {
            for i in 1..k {
                product(&emids(i), &mids(k - i), &mut pairs);
            }
        }
        Family::Fds => {
            for i in 1..k {
                product(&mids(i), &mids(k - i), &mut pairs);
            }
        }
        Family::Mjpo => {
            for i in 1..k {
                product(&mids(i), &mids(k - i), &mut pairs);
            }
            product(&emids(1), &mids(k - 1), &mut pairs);
        }
        Family::Knt => {
            if k >= 3 {
                let heads = [MultIndex::from_parts(&[3]), MultIndex::from_parts(&[2, 1])];
                product(&heads, &mids(k - 3), &mut pairs);
            }
            product(&[MultIndex::from_parts(&[2])], &mids(k - 2), &mut pairs);
            product(&emids(1), &mids(k - 1), &mut pairs);
        }
    }
    pairs.sort_by_cached_key(|(a, b)| (a.weight(), a.code(), b.code()));
    pairs.dedup();
    pairs
}

/// One binary EDS relation `reg(z_K * z_L) + reg(z_K ⧢ z_L)` with its originating pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub pair: Pair,
    /// Admissible words of weight `weight(K) + weight(L)`.
    pub support: Gf2WordSet,
}

impl Relation {
    pub fn indices(&self) -> Vec<MultIndex> {
        self.support
            .indices()
            .expect("regularized words are admissible")
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    pub fn to_combination(&self, columns: &ColumnTable) -> Gf2Combination {
        let ids = self
            .support
            .iter()
            .map(|w| {
                columns
                    .id_of_word(w)
                    .expect("relation term outside the column table")
            })
            .collect();
        Gf2Combination::from_ids(ids).expect("distinct words map to distinct columns")
    }
}

pub fn eds_relation_with(algebra: &WordAlgebra, k: &MultIndex, l: &MultIndex) -> Result<Relation> {
    let stuffle = algebra.reg_product(ProductKind::Stuffle, k, l)?;
    let shuffle = algebra.reg_product(ProductKind::Shuffle, k, l)?;
    Ok(Relation {
        pair: (k.clone(), l.clone()),
        support: stuffle.xor(&shuffle),
    })
}

/// Binary EDS relation of one pair with a throwaway product cache.
pub fn eds_relation(k: &MultIndex, l: &MultIndex) -> Result<Relation> {
    eds_relation_with(&WordAlgebra::for_weight(k.weight() + l.weight()), k, l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Worker threads for block generation.
    pub threads: usize,
    /// Largest total degree cached by the shuffle memo; `None` means `ceil(k / 2)`.
    pub memo_max_degree: Option<u32>,
    /// Number of independent pair blocks.
    pub blocks: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            threads: 1,
            memo_max_degree: None,
            blocks: 1,
        }
    }
}

/// Builds the binary system of a family at one weight.
///
/// The pair list is cut into `config.blocks` contiguous blocks that are
/// generated on a pool of `config.threads` workers and merged in block order,
/// so the output does not depend on either setting. Trivial relations are
/// dropped; duplicate rows are kept.
pub fn generate_system(family: PairFamily, config: &GeneratorConfig) -> Result<LinearSystem> {
    let k = family.weight;
    let columns = ColumnTable::build(k)?;
    let algebra = WordAlgebra::new(config.memo_max_degree.unwrap_or(k.div_ceil(2)));
    let pairs = enumerate_pairs(family);
    let blocks = config.blocks.max(1);
    let chunk = pairs.len().div_ceil(blocks).max(1);

    let build_block = |block: &[Pair]| -> Result<Vec<Row>> {
        let mut rows = Vec::with_capacity(block.len());
        for (a, b) in block {
            let rel = eds_relation_with(&algebra, a, b)?;
            if !rel.is_trivial() {
                rows.push(Row {
                    combination: rel.to_combination(&columns),
                    pair: Some(rel.pair),
                });
            }
        }
        Ok(rows)
    };

    let block_rows: Vec<Result<Vec<Row>>> = if config.threads <= 1 {
        pairs.chunks(chunk).map(build_block).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        pool.install(|| pairs.par_chunks(chunk).map(build_block).collect())
    };

    let mut rows = Vec::new();
    for block in block_rows {
        rows.extend(block?);
    }
    Ok(LinearSystem::new(columns, Some(family.family), rows))
}
