//! Quantities read off an eliminated system.

pub mod pipeline;
pub mod series;
pub mod tables;

use std::collections::BTreeSet;

pub use series::{expected_tables, SeriesTable, MAX_SERIES_WEIGHT};

use crate::elimination::{dense_rank, forward_eliminate, Gf2PivotSequence};
use crate::error::{Error, Result};
use crate::index::{ColumnTable, MultIndex};
use crate::relations::{Family, Pair};
use crate::system::{Gf2Combination, LinearSystem};

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank, corank and the per-depth split of one eliminated system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub weight: u32,
    pub family: Option<Family>,
    pub columns: usize,
    pub rank: usize,
    /// `columns - rank`.
    pub corank: usize,
    /// Indexed by depth `r`; entry 0 is unused.
    pub columns_by_depth: Vec<usize>,
    pub pivots_by_depth: Vec<usize>,
    /// `columns_by_depth[r] - pivots_by_depth[r]`.
    pub depth_dims: Vec<usize>,
    pub pivotless: Vec<MultIndex>,
}

impl DimensionReport {
    pub fn from_pivots(
        columns: &ColumnTable,
        family: Option<Family>,
        pivots: &Gf2PivotSequence,
    ) -> Self {
        let k = columns.weight();
        let depths = k as usize;
        let mut columns_by_depth = vec![0; depths];
        let mut pivots_by_depth = vec![0; depths];
        for r in 1..depths {
            let block = columns.depth_block(r);
            columns_by_depth[r] = block.len();
            pivots_by_depth[r] = block.filter(|&c| pivots.has_pivot(c)).count();
            assert_eq!(
                columns_by_depth[r] as u64,
                binomial(k as u64 - 2, r as u64 - 1),
                "depth {r} block size"
            );
        }
        let depth_dims: Vec<usize> = columns_by_depth
            .iter()
            .zip(&pivots_by_depth)
            .map(|(c, p)| c - p)
            .collect();
        let rank = pivots.rank();
        let corank = columns.len() - rank;
        assert_eq!(depth_dims.iter().sum::<usize>(), corank);
        DimensionReport {
            weight: k,
            family,
            columns: columns.len(),
            rank,
            corank,
            columns_by_depth,
            pivots_by_depth,
            depth_dims,
            pivotless: pivots
                .pivotless_columns()
                .into_iter()
                .map(|c| columns.index(c).clone())
                .collect(),
        }
    }

    /// Corank in depth `r`; zero outside the computed range.
    pub fn depth_dim(&self, r: usize) -> usize {
        self.depth_dims.get(r).copied().unwrap_or(0)
    }
}

/// Eliminates `sys` and reports its dimensions.
pub fn dimensions(sys: &LinearSystem) -> DimensionReport {
    let pivots = forward_eliminate(sys);
    DimensionReport::from_pivots(sys.columns(), sys.family(), &pivots)
}

/// Outcome of comparing the pivotless columns with the Hoffman indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoffmanCheck {
    pub passed: bool,
    /// Pivotless columns that are not Hoffman indices.
    pub extra: Vec<MultIndex>,
    /// Hoffman indices that received a pivot.
    pub covered: Vec<MultIndex>,
}

/// Passes iff the pivotless columns are exactly the Hoffman indices of the weight.
pub fn verify_hoffman_basis(report: &DimensionReport) -> HoffmanCheck {
    let pivotless: BTreeSet<&MultIndex> = report.pivotless.iter().collect();
    let hoffman = crate::index::hoffman_indices(report.weight, None);
    let hoffman_set: BTreeSet<&MultIndex> = hoffman.iter().collect();
    let extra: Vec<MultIndex> = pivotless
        .difference(&hoffman_set)
        .map(|&m| m.clone())
        .collect();
    let covered: Vec<MultIndex> = hoffman_set
        .difference(&pivotless)
        .map(|&m| m.clone())
        .collect();
    HoffmanCheck {
        passed: extra.is_empty() && covered.is_empty(),
        extra,
        covered,
    }
}

/// Writes `bzt(K)` in terms of pivotless columns by repeatedly replacing the
/// smallest column that has a pivot with the rest of that pivot. Once the
/// Hoffman basis check has passed, the result lies on Hoffman columns.
pub fn reduced_form(
    k: &MultIndex,
    columns: &ColumnTable,
    pivots: &Gf2PivotSequence,
) -> Result<Gf2Combination> {
    let id = columns.id_of(k).ok_or_else(|| {
        Error::InvalidIndex(format!(
            "{k} is not an admissible index of weight {}",
            columns.weight()
        ))
    })?;
    Ok(reduce_combination(
        &Gf2Combination::from_sorted_unchecked(vec![id]),
        pivots,
    ))
}

/// Applies the reduction of [`reduced_form`] to every term of a combination.
pub fn reduce_combination(c: &Gf2Combination, pivots: &Gf2PivotSequence) -> Gf2Combination {
    let mut pending: BTreeSet<u32> = c.ids().iter().copied().collect();
    let mut out = Vec::new();
    while let Some(col) = pending.pop_first() {
        match pivots.combination(col) {
            // bzt(col) = sum of the other pivot terms, all at larger columns
            Some(p) => {
                for &other in &p.ids()[1..] {
                    if !pending.remove(&other) {
                        pending.insert(other);
                    }
                }
            }
            None => out.push(col),
        }
    }
    Gf2Combination::from_sorted_unchecked(out)
}

/// Keeps only the terms of depth `depth`: the image in the depth-graded piece.
pub fn depth_graded(form: &Gf2Combination, columns: &ColumnTable, depth: usize) -> Gf2Combination {
    Gf2Combination::from_sorted_unchecked(
        form.ids()
            .iter()
            .copied()
            .filter(|&c| columns.depth_of(c) == depth)
            .collect(),
    )
}

/// Reduced form of `K` truncated to the depth of `K`.
pub fn graded_reduced_form(
    k: &MultIndex,
    columns: &ColumnTable,
    pivots: &Gf2PivotSequence,
) -> Result<Gf2Combination> {
    Ok(depth_graded(
        &reduced_form(k, columns, pivots)?,
        columns,
        k.depth(),
    ))
}

/// Renders a combination as `2,3 + 3,2` (or `0`).
pub fn format_combination(c: &Gf2Combination, columns: &ColumnTable) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = c
        .ids()
        .iter()
        .map(|&id| columns.index(id).to_string())
        .collect();
    parts.join(" + ")
}

/// One row of a relation basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisRelation {
    /// Position of the row in the input system.
    pub row: usize,
    pub pair: Option<Pair>,
}

/// The input rows consumed by pivots, in input order. They are linearly
/// independent and span the row space.
pub fn extract_relation_basis(sys: &LinearSystem, pivots: &Gf2PivotSequence) -> Vec<BasisRelation> {
    let mut rows = pivots.source_rows();
    rows.sort_unstable();
    rows.into_iter()
        .map(|row| BasisRelation {
            row,
            pair: sys.rows()[row].pair.clone(),
        })
        .collect()
}

/// Rank of the given rows of `sys` alone, by the dense oracle.
pub fn basis_rank(sys: &LinearSystem, basis: &[BasisRelation]) -> Result<usize> {
    let rows: Vec<Gf2Combination> = basis
        .iter()
        .map(|b| sys.rows()[b.row].combination.clone())
        .collect();
    Ok(dense_rank(&rows, sys.num_columns())?.rank)
}

/// The recurrence `e_k = e_{k-2} + e_{k-3}` checked against computed dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub family: Family,
    /// `(k, e_k)` in increasing `k`.
    pub values: Vec<(u32, usize)>,
    /// `(k, e_k - e_{k-2} - e_{k-3})` for every `k` with both predecessors present.
    pub differences: Vec<(u32, i64)>,
    /// Weights where the recurrence fails.
    pub exceptions: Vec<u32>,
    /// The exceptions the family is expected to have in this range, if a law is asserted.
    pub expected_exceptions: Option<Vec<u32>>,
}

impl LawReport {
    /// `None` when no law is asserted for the family.
    pub fn holds(&self) -> Option<bool> {
        self.expected_exceptions
            .as_ref()
            .map(|e| *e == self.exceptions)
    }
}

/// Known exception weights of the MJPO recurrence.
pub const MJPO_EXCEPTIONS: [u32; 2] = [7, 15];

pub fn fibonacci_law_check(family: Family, dims: &[(u32, usize)]) -> LawReport {
    let mut values = dims.to_vec();
    values.sort_unstable();
    let lookup = |k: u32| values.iter().find(|(w, _)| *w == k).map(|&(_, d)| d as i64);
    let mut differences = Vec::new();
    for &(k, e) in &values {
        if k < 3 {
            continue;
        }
        if let (Some(a), Some(b)) = (lookup(k - 2), lookup(k - 3)) {
            differences.push((k, e as i64 - a - b));
        }
    }
    let exceptions: Vec<u32> = differences
        .iter()
        .filter(|(_, d)| *d != 0)
        .map(|&(k, _)| k)
        .collect();
    let checked: Vec<u32> = differences.iter().map(|&(k, _)| k).collect();
    let expected_exceptions = match family {
        Family::Eds => Some(Vec::new()),
        Family::Mjpo => Some(
            MJPO_EXCEPTIONS
                .iter()
                .copied()
                .filter(|k| checked.contains(k))
                .collect(),
        ),
        Family::Fds | Family::Knt => None,
    };
    LawReport {
        family,
        values,
        differences,
        exceptions,
        expected_exceptions,
    }
}
