//! The elimination over an arbitrary [`Field`].

use super::{
    check_conflict, Assignment, EliminationOptions, EliminationStats, Field, FieldCombination,
    Pivot, PivotSequence,
};

type Pivots<F> = PivotSequence<FieldCombination<F>>;

/// Candidate rows bucketed by the column they lead at, ascending row ids per bucket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pools {
    buckets: Vec<Vec<usize>>,
}

impl Pools {
    fn from_leads(n: u32, leads: impl Iterator<Item = Option<u32>>) -> Self {
        let mut buckets = vec![Vec::new(); n as usize + 2];
        for (r, lead) in leads.enumerate() {
            if let Some(c) = lead {
                buckets[c as usize].push(r);
            }
        }
        Pools { buckets }
    }

    /// Rows bucketed by their smallest column; zero rows are left out.
    pub fn by_lead<F: Field>(rows: &[FieldCombination<F>], n: u32) -> Self {
        Pools::from_leads(n, rows.iter().map(FieldCombination::lead))
    }

    /// Rows bucketed by their lead once the deficient columns below `j` are
    /// moved past `j`. Rows whose reordered lead lies after `j` are left out,
    /// as no search at `j` can use them.
    pub fn by_reordered_lead<F: Field>(
        rows: &[FieldCombination<F>],
        pivots: &Pivots<F>,
        j: u32,
    ) -> Self {
        let n = pivots.num_columns() as u32;
        Pools::from_leads(
            n,
            rows.iter().map(|row| {
                row.terms()
                    .iter()
                    .map(|&(c, _)| c)
                    .find(|&c| c == j || (c < j && pivots.has_pivot(c)))
                    .filter(|&c| c <= j)
            }),
        )
    }

    pub fn members(&self, col: u32) -> &[usize] {
        self.buckets.get(col as usize).map_or(&[], Vec::as_slice)
    }

    pub fn first(&self, col: u32) -> Option<usize> {
        self.members(col).first().copied()
    }

    pub fn remove(&mut self, col: u32, row: usize) {
        let bucket = &mut self.buckets[col as usize];
        if let Ok(p) = bucket.binary_search(&row) {
            bucket.remove(p);
        }
    }

    pub fn len(&self) -> usize {
        self.buckets.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A row that evaluates to a nonzero scalar under an assignment killing the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict<F: Field> {
    pub row: usize,
    pub assignment: Assignment<F>,
}

/// Searches for evidence that column `j` can get a pivot.
///
/// Starts from `x_j = 1` with every later variable zero and moves down
/// through the pivot columns below `j`, choosing each `x_i` so that the pivot
/// at `i` vanishes. Columns without a pivot keep value zero, which is the same
/// as moving them past `j`. At each visited column the rows of the matching
/// pool are scanned in ascending id order; the first one with a nonzero value
/// is returned.
pub fn conflict_search<F: Field>(
    rows: &[FieldCombination<F>],
    pools: &Pools,
    pivots: &Pivots<F>,
    j: u32,
) -> Option<Conflict<F>> {
    let n = pivots.num_columns() as u32;
    assert!((1..=n).contains(&j), "target column {j} out of range");
    let mut values = vec![F::zero(); n as usize + 1];
    values[j as usize] = F::one();
    let found = |values: &[F], col: u32| {
        pools
            .members(col)
            .iter()
            .copied()
            .find(|&r| !rows[r].evaluate(values).is_zero())
    };
    if let Some(row) = found(&values, j) {
        return Some(Conflict {
            row,
            assignment: Assignment {
                values,
                frontier: j,
                target: j,
            },
        });
    }
    for i in (1..j).rev() {
        let Some(p) = pivots.combination(i) else {
            continue;
        };
        values[i as usize] = p.evaluate_tail(&values).neg().mul(p.cf().inv());
        if let Some(row) = found(&values, i) {
            return Some(Conflict {
                row,
                assignment: Assignment {
                    values,
                    frontier: i,
                    target: j,
                },
            });
        }
    }
    None
}

/// Turns conflict evidence from column `i` into a combination leading at `j`
/// (in the reordered view) by subtracting the pivots at `i..j` whenever their
/// column is still present. Also returns the columns of the pivots used.
///
/// Panics when the evidence was not a valid conflict: the result would then
/// miss column `j` or keep a pivot column below it.
pub fn reduce_with_evidence<F: Field>(
    pivots: &Pivots<F>,
    q: &FieldCombination<F>,
    i: u32,
    j: u32,
) -> (FieldCombination<F>, Vec<u32>) {
    let n = pivots.num_columns();
    let mut acc = vec![F::zero(); n + 1];
    for &(c, v) in q.terms() {
        acc[c as usize] = v;
    }
    let mut reducers = Vec::new();
    for h in i..j {
        let coeff = acc[h as usize];
        if coeff.is_zero() {
            continue;
        }
        let Some(p) = pivots.combination(h) else {
            continue;
        };
        let scale = coeff.mul(p.cf().inv());
        for &(c, v) in p.terms() {
            acc[c as usize] = acc[c as usize].sub(scale.mul(v));
        }
        reducers.push(h);
    }
    assert!(
        !acc[j as usize].is_zero()
            && (1..j).all(|h| acc[h as usize].is_zero() || !pivots.has_pivot(h)),
        "conflict evidence did not reduce to column {j}"
    );
    let terms = acc
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, &v)| (c as u32, v))
        .collect();
    (FieldCombination { terms }, reducers)
}

fn search_in_pools<F: Field>(
    rows: &[FieldCombination<F>],
    pools: &Pools,
    pivots: &Pivots<F>,
    j: u32,
) -> Option<(FieldCombination<F>, usize)> {
    if let Some(r) = pools.first(j) {
        return Some((rows[r].clone(), r));
    }
    let conflict = conflict_search(rows, pools, pivots, j)?;
    let (q, _) = reduce_with_evidence(pivots, &rows[conflict.row], conflict.assignment.frontier, j);
    Some((q, conflict.row))
}

/// A combination leading at `j` in the span of `rows` and `pivots`, given
/// pivots at every column below `j`. Returns it with the id of the row it
/// was derived from.
pub fn find_pivot<F: Field>(
    rows: &[FieldCombination<F>],
    pivots: &Pivots<F>,
    j: u32,
) -> Option<(FieldCombination<F>, usize)> {
    assert!(
        (1..j).all(|c| pivots.has_pivot(c)),
        "find_pivot needs pivots at every column below {j}"
    );
    let n = pivots.num_columns() as u32;
    search_in_pools(rows, &Pools::by_lead(rows, n), pivots, j)
}

/// Like [`find_pivot`], but the pivots below `j` may have gaps. The gap
/// columns are treated as if they came right after `j`, so the result leads
/// at `j` or at one of the gap columns.
pub fn find_pivot_reordered<F: Field>(
    rows: &[FieldCombination<F>],
    pivots: &Pivots<F>,
    j: u32,
) -> Option<(FieldCombination<F>, usize)> {
    search_in_pools(rows, &Pools::by_reordered_lead(rows, pivots, j), pivots, j)
}

/// Forward elimination of `rows` over `n` columns.
///
/// Rows consumed by a pivot leave their pool. Later searches still reach every
/// row of the original span, because a consumed row is the pivot it became
/// plus a combination of earlier pivots.
pub fn forward_eliminate_generic<F: Field>(
    rows: &[FieldCombination<F>],
    n: u32,
    options: EliminationOptions,
) -> (Pivots<F>, EliminationStats) {
    let mut pools = Pools::by_lead(rows, n);
    let mut pivots = PivotSequence::new(n as usize);
    let mut stats = EliminationStats::default();
    for j in 1..=n {
        if let Some(r) = pools.first(j) {
            pools.remove(j, r);
            pivots.insert(
                j,
                Pivot {
                    combination: rows[r].clone(),
                    source_row: r,
                    reducers: options.track_reducers.then(Vec::new),
                },
            );
            stats.direct += 1;
            continue;
        }
        let Some(conflict) = conflict_search(rows, &pools, &pivots, j) else {
            stats.pivotless += 1;
            continue;
        };
        if options.check_conflicts {
            if let Err(e) = check_conflict(&rows[conflict.row], &conflict.assignment, &pivots) {
                panic!("conflict search at column {j}: {e}");
            }
        }
        let i = conflict.assignment.frontier;
        let (q, reducers) = reduce_with_evidence(&pivots, &rows[conflict.row], i, j);
        assert_eq!(q.lead(), Some(j), "new pivot must lead at its column");
        pools.remove(i, conflict.row);
        pivots.insert(
            j,
            Pivot {
                combination: q,
                source_row: conflict.row,
                reducers: options.track_reducers.then_some(reducers),
            },
        );
        stats.conflicts += 1;
    }
    (pivots, stats)
}

#[cfg(test)]
mod tests {
    use super::super::Gf2;
    use super::*;

    fn row(ids: &[u32]) -> FieldCombination<Gf2> {
        FieldCombination::from_terms(ids.iter().map(|&c| (c, Gf2::one())).collect())
    }

    fn with_pivots(n: usize, ps: &[&[u32]]) -> Pivots<Gf2> {
        let mut seq = PivotSequence::new(n);
        for (k, p) in ps.iter().enumerate() {
            let c = row(p);
            seq.insert(
                c.lead().unwrap(),
                Pivot {
                    combination: c,
                    source_row: 100 + k,
                    reducers: None,
                },
            );
        }
        seq
    }

    #[test]
    fn two_step_conflict() {
        // pivot p_1 = {1,2}; candidate {2,3} leads at the target and fires at once
        let rows = vec![row(&[1, 2]), row(&[2, 3])];
        let pivots = with_pivots(3, &[&[1, 2]]);
        let mut pools = Pools::by_lead(&rows, 3);
        pools.remove(1, 0);
        let c = conflict_search(&rows, &pools, &pivots, 2).unwrap();
        assert_eq!(c.row, 1);
        assert_eq!(c.assignment.frontier, 2);
        assert_eq!(
            c.assignment.values[1..],
            [Gf2(false), Gf2(true), Gf2(false)]
        );
    }

    #[test]
    fn failure_without_candidates() {
        let rows = vec![row(&[2, 3])];
        let pivots = PivotSequence::new(3);
        let pools = Pools::by_lead(&rows, 3);
        assert!(conflict_search(&rows, &pools, &pivots, 1).is_none());
    }

    #[test]
    fn forced_value_from_pivot() {
        // p_1 = {1,3}: under x_2 = 1, x_3 = 0 the forced x_1 is 0
        let pivots = with_pivots(3, &[&[1, 3]]);
        let rows = vec![row(&[1, 3]), row(&[1, 2])];
        let mut pools = Pools::by_lead(&rows, 3);
        pools.remove(1, 0);
        let c = conflict_search(&rows, &pools, &pivots, 2).unwrap();
        assert_eq!(c.row, 1);
        assert_eq!(c.assignment.frontier, 1);
        assert_eq!(c.assignment.values[1], Gf2(false));
        check_conflict(&rows[1], &c.assignment, &pivots).unwrap();
    }

    #[test]
    fn one_step_reduction() {
        let pivots = with_pivots(3, &[&[1, 3]]);
        let (q, used) = reduce_with_evidence(&pivots, &row(&[1, 2]), 1, 2);
        assert_eq!(q, row(&[2, 3]));
        assert_eq!(used, vec![1]);
        let (q, used) = reduce_with_evidence(&pivots, &row(&[2]), 2, 2);
        assert_eq!(q, row(&[2]));
        assert!(used.is_empty());
    }

    #[test]
    fn weight_four_pivots() {
        // rows of the weight 4 system under its column order
        let rows = vec![row(&[2, 3, 4]), row(&[1, 2, 3]), row(&[4]), row(&[1, 2, 3])];
        let mut pivots = PivotSequence::new(4);
        for j in 1..=2 {
            let (p, r) = find_pivot(&rows, &pivots, j).unwrap();
            pivots.insert(
                j,
                Pivot {
                    combination: p,
                    source_row: r,
                    reducers: None,
                },
            );
        }
        assert!(find_pivot(&rows, &pivots, 3).is_none());
        let (p, _) = find_pivot_reordered(&rows, &pivots, 4).unwrap();
        assert_eq!(p, row(&[4]));
        assert!(find_pivot::<Gf2>(&[], &PivotSequence::new(4), 1).is_none());
    }

    #[test]
    fn reordered_search_skips_gap() {
        // column 2 has no pivot; the result may only lead at 2 or 4
        let rows = vec![row(&[1, 3]), row(&[3, 4]), row(&[1, 2])];
        let pivots = with_pivots(4, &[&[1, 3], &[3, 4]]);
        let (p, r) = find_pivot_reordered(&rows, &pivots, 4).unwrap();
        assert_eq!(r, 2);
        // {1,2} + {1,3} + {3,4}
        assert_eq!(p, row(&[2, 4]));
        // with {1,2,4} instead, nothing in the span avoids 1 and 3 while keeping 4
        let rows = vec![row(&[1, 3]), row(&[3, 4]), row(&[1, 2, 4])];
        assert!(find_pivot_reordered(&rows, &pivots, 4).is_none());
    }

    #[test]
    fn generic_run_on_weight_four() {
        let rows = vec![row(&[2, 3, 4]), row(&[1, 2, 3]), row(&[4]), row(&[1, 2, 3])];
        let (seq, stats) = forward_eliminate_generic(&rows, 4, EliminationOptions::default());
        assert_eq!(seq.pivot_columns(), vec![1, 2, 4]);
        assert_eq!(seq.pivotless_columns(), vec![3]);
        assert_eq!(stats.direct, 3);
        assert_eq!(seq.source_rows(), vec![1, 0, 2]);
    }
}
