//! Conflict-driven Gaussian forward elimination.
//!
//! Columns are visited left to right. Column `j` gets a pivot directly when
//! some unused input row leads at `j`. Otherwise a conflict search walks the
//! existing pivots downward from `j`, building an assignment that kills every
//! pivot, until some unused row evaluates to a nonzero scalar; reducing that
//! row by the pivots between its lead and `j` yields a combination leading at
//! `j`. Input rows are never rewritten, only evaluated.
//!
//! [`generic`] runs over any [`Field`]; [`gf2`] is the bitset path used in
//! production; [`dense`] is an independent textbook oracle.

pub mod dense;
pub mod generic;
pub mod gf2;

use std::fmt::Debug;

pub use dense::{dense_eliminate_oracle, dense_rank, DenseResult, DENSE_ORACLE_MAX_COLUMNS};
pub use generic::{
    conflict_search, find_pivot, find_pivot_reordered, forward_eliminate_generic,
    reduce_with_evidence, Conflict, Pools,
};
pub use gf2::{forward_eliminate, forward_eliminate_rows, Gf2Eliminator};

use crate::system::Gf2Combination;

/// The operations the elimination needs from a scalar field.
pub trait Field: Copy + Eq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn neg(self) -> Self;
    fn mul(self, other: Self) -> Self;
    /// Multiplicative inverse; only called on nonzero elements.
    fn inv(self) -> Self;

    fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

/// The field with two elements: addition is XOR, multiplication is AND.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gf2(pub bool);

impl Field for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn add(self, other: Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn neg(self) -> Self {
        self
    }
    fn mul(self, other: Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn inv(self) -> Self {
        assert!(self.0, "inverse of zero");
        self
    }
}

/// A sparse linear combination over `F`, terms sorted by column and nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCombination<F: Field> {
    terms: Vec<(u32, F)>,
}

impl<F: Field> Default for FieldCombination<F> {
    fn default() -> Self {
        FieldCombination { terms: Vec::new() }
    }
}

impl<F: Field> FieldCombination<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sums repeated columns and drops zero coefficients.
    pub fn from_terms(mut terms: Vec<(u32, F)>) -> Self {
        terms.sort_by_key(|&(c, _)| c);
        let mut out: Vec<(u32, F)> = Vec::with_capacity(terms.len());
        for (c, v) in terms {
            match out.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = lv.add(v),
                _ => out.push((c, v)),
            }
        }
        out.retain(|&(_, v)| !v.is_zero());
        FieldCombination { terms: out }
    }

    pub fn terms(&self) -> &[(u32, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Column of the minimum variable with a nonzero coefficient.
    pub fn lead(&self) -> Option<u32> {
        self.terms.first().map(|&(c, _)| c)
    }

    /// [`Self::lead`], with the zero combination mapped to `n + 1`.
    pub fn ind(&self, n: u32) -> u32 {
        self.lead().unwrap_or(n + 1)
    }

    /// Coefficient of the leading term; zero for the zero combination.
    pub fn cf(&self) -> F {
        self.terms.first().map_or(F::zero(), |&(_, v)| v)
    }

    pub fn coefficient(&self, col: u32) -> F {
        match self.terms.binary_search_by_key(&col, |&(c, _)| c) {
            Ok(p) => self.terms[p].1,
            Err(_) => F::zero(),
        }
    }

    /// Value under `x_c = values[c]`.
    pub fn evaluate(&self, values: &[F]) -> F {
        self.terms
            .iter()
            .fold(F::zero(), |acc, &(c, v)| acc.add(v.mul(values[c as usize])))
    }

    /// Value with the leading term left out.
    pub fn evaluate_tail(&self, values: &[F]) -> F {
        self.terms
            .iter()
            .skip(1)
            .fold(F::zero(), |acc, &(c, v)| acc.add(v.mul(values[c as usize])))
    }

    pub fn support(&self) -> Vec<u32> {
        self.terms.iter().map(|&(c, _)| c).collect()
    }
}

impl FieldCombination<Gf2> {
    pub fn from_gf2(c: &Gf2Combination) -> Self {
        FieldCombination {
            terms: c.ids().iter().map(|&id| (id, Gf2::one())).collect(),
        }
    }

    pub fn to_gf2(&self) -> Gf2Combination {
        Gf2Combination::from_sorted_unchecked(self.support())
    }
}

/// One stored pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot<C> {
    pub combination: C,
    /// The input row this pivot consumed.
    pub source_row: usize,
    /// Columns of the earlier pivots subtracted from the source row, when tracked.
    pub reducers: Option<Vec<u32>>,
}

/// Sparse column-indexed pivot array over columns `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotSequence<C> {
    slots: Vec<Option<Pivot<C>>>,
}

pub type Gf2PivotSequence = PivotSequence<Gf2Combination>;

impl<C> PivotSequence<C> {
    pub fn new(n: usize) -> Self {
        PivotSequence {
            slots: (0..=n).map(|_| None).collect(),
        }
    }

    pub fn num_columns(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn get(&self, col: u32) -> Option<&Pivot<C>> {
        self.slots.get(col as usize).and_then(Option::as_ref)
    }

    pub fn combination(&self, col: u32) -> Option<&C> {
        self.get(col).map(|p| &p.combination)
    }

    pub fn has_pivot(&self, col: u32) -> bool {
        self.get(col).is_some()
    }

    pub(crate) fn insert(&mut self, col: u32, pivot: Pivot<C>) {
        let slot = &mut self.slots[col as usize];
        assert!(slot.is_none(), "column {col} already has a pivot");
        *slot = Some(pivot);
    }

    pub fn rank(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn corank(&self) -> usize {
        self.num_columns() - self.rank()
    }

    pub fn pivot_columns(&self) -> Vec<u32> {
        (1..self.slots.len() as u32)
            .filter(|&c| self.has_pivot(c))
            .collect()
    }

    pub fn pivotless_columns(&self) -> Vec<u32> {
        (1..self.slots.len() as u32)
            .filter(|&c| !self.has_pivot(c))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Pivot<C>)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(c, s)| s.as_ref().map(|p| (c as u32, p)))
    }

    /// Input rows consumed by pivots, in column order.
    pub fn source_rows(&self) -> Vec<usize> {
        self.iter().map(|(_, p)| p.source_row).collect()
    }

    pub fn map<D>(self, mut f: impl FnMut(C) -> D) -> PivotSequence<D> {
        PivotSequence {
            slots: self
                .slots
                .into_iter()
                .map(|s| {
                    s.map(|p| Pivot {
                        combination: f(p.combination),
                        source_row: p.source_row,
                        reducers: p.reducers,
                    })
                })
                .collect(),
        }
    }
}

impl Gf2PivotSequence {
    /// The pivot dump: `<column> <row> <ids...> 0` per pivot.
    pub fn dump(&self) -> String {
        let mut out = String::from("# column source_row support\n");
        for (c, p) in self.iter() {
            out.push_str(&format!("{c} {}", p.source_row + 1));
            for id in p.combination.ids() {
                out.push_str(&format!(" {id}"));
            }
            out.push_str(" 0\n");
        }
        out
    }
}

/// A suffix assignment produced by a conflict search.
///
/// `values[c]` is the value of `x_c` for `c >= frontier` (index 0 unused).
/// `target` is the column whose variable is 1; deficient columns and every
/// column after `target` hold zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment<F: Field> {
    pub values: Vec<F>,
    pub frontier: u32,
    pub target: u32,
}

/// Checks the output conditions of a conflict search: the frontier is at or
/// below the target, the target variable is one and later ones are zero, the
/// found row leads at the frontier (in the reordered view) and evaluates to a
/// nonzero scalar, and every pivot from the frontier up to the target
/// evaluates to zero.
pub fn check_conflict<F: Field>(
    row: &FieldCombination<F>,
    assignment: &Assignment<F>,
    pivots: &PivotSequence<FieldCombination<F>>,
) -> Result<(), String> {
    let (i, j) = (assignment.frontier, assignment.target);
    let n = pivots.num_columns() as u32;
    if i == 0 || i > j || j > n {
        return Err(format!("frontier {i} not in 1..={j}"));
    }
    if assignment.values[j as usize] != F::one() {
        return Err(format!("x_{j} is not one"));
    }
    let deficient = |c: u32| c < j && !pivots.has_pivot(c);
    if let Some(c) = (j + 1..=n)
        .chain((1..j).filter(|&c| deficient(c)))
        .find(|&c| !assignment.values[c as usize].is_zero())
    {
        return Err(format!("x_{c} should be zero"));
    }
    let first_live = row.terms().iter().map(|&(c, _)| c).find(|&c| !deficient(c));
    if first_live != Some(i) {
        return Err(format!("row leads at {first_live:?}, frontier is {i}"));
    }
    if row.evaluate(&assignment.values).is_zero() {
        return Err("row evaluates to zero".into());
    }
    for h in i..j {
        if let Some(p) = pivots.combination(h) {
            if !p.evaluate(&assignment.values).is_zero() {
                return Err(format!("pivot at {h} does not vanish"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EliminationOptions {
    /// Record which pivots each new pivot was reduced by.
    pub track_reducers: bool,
    /// Assert the conflict-search output conditions after every search.
    pub check_conflicts: bool,
}

impl Default for EliminationOptions {
    fn default() -> Self {
        EliminationOptions {
            track_reducers: false,
            check_conflicts: cfg!(debug_assertions),
        }
    }
}

/// Counters from one elimination run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EliminationStats {
    /// Pivots taken directly from a row leading at their column.
    pub direct: usize,
    /// Pivots obtained through a conflict search.
    pub conflicts: usize,
    /// Columns where the search failed.
    pub pivotless: usize,
}
