//! The elimination specialised to GF(2).
//!
//! Assignments are bitsets of the variables set to one, so evaluating a row
//! is the parity of its support inside the set. Reductions XOR into a dense
//! bit accumulator.

use super::{EliminationOptions, EliminationStats, Gf2PivotSequence, Pivot, PivotSequence};
use crate::system::{Gf2Combination, LinearSystem};

struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: u32) -> Self {
        BitSet {
            words: vec![0; (n as usize + 1).div_ceil(64)],
        }
    }

    #[inline]
    fn get(&self, i: u32) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: u32) {
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    #[inline]
    fn clear(&mut self, i: u32) {
        self.words[(i >> 6) as usize] &= !(1 << (i & 63));
    }

    #[inline]
    fn flip(&mut self, i: u32) {
        self.words[(i >> 6) as usize] ^= 1 << (i & 63);
    }

    #[inline]
    fn parity(&self, ids: &[u32]) -> bool {
        ids.iter().fold(false, |acc, &i| acc ^ self.get(i))
    }

    /// Set bits at or after `from`, ascending; clears them.
    fn drain_from(&mut self, from: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let start = (from >> 6) as usize;
        for w in start..self.words.len() {
            let mut bits = self.words[w];
            if w == start {
                bits &= !0u64 << (from & 63);
            }
            while bits != 0 {
                let b = bits.trailing_zeros();
                out.push((w as u32) << 6 | b);
                bits &= bits - 1;
            }
            self.words[w] = 0;
        }
        out
    }
}

/// Forward elimination state over GF(2) rows.
pub struct Gf2Eliminator<'a> {
    rows: &'a [Gf2Combination],
    n: u32,
    pools: Vec<Vec<usize>>,
    pivots: Gf2PivotSequence,
    ones: BitSet,
    assigned: Vec<u32>,
    acc: BitSet,
    options: EliminationOptions,
    stats: EliminationStats,
}

impl<'a> Gf2Eliminator<'a> {
    pub fn new(rows: &'a [Gf2Combination], n: u32, options: EliminationOptions) -> Self {
        let mut pools = vec![Vec::new(); n as usize + 2];
        for (r, row) in rows.iter().enumerate() {
            if let Some(c) = row.leading() {
                assert!(
                    row.ids().last().is_some_and(|&last| last <= n),
                    "row {r} exceeds {n} columns"
                );
                pools[c as usize].push(r);
            }
        }
        Gf2Eliminator {
            rows,
            n,
            pools,
            pivots: PivotSequence::new(n as usize),
            ones: BitSet::new(n),
            assigned: Vec::new(),
            acc: BitSet::new(n),
            options,
            stats: EliminationStats::default(),
        }
    }

    pub fn run(mut self) -> (Gf2PivotSequence, EliminationStats) {
        for j in 1..=self.n {
            self.step(j);
        }
        (self.pivots, self.stats)
    }

    fn step(&mut self, j: u32) {
        if let Some(&r) = self.pools[j as usize].first() {
            self.pools[j as usize].remove(0);
            self.pivots.insert(
                j,
                Pivot {
                    combination: self.rows[r].clone(),
                    source_row: r,
                    reducers: self.options.track_reducers.then(Vec::new),
                },
            );
            self.stats.direct += 1;
            return;
        }
        let found = self.conflict_search(j);
        let Some((i, r)) = found else {
            self.reset_assignment();
            self.stats.pivotless += 1;
            return;
        };
        if self.options.check_conflicts {
            if let Err(e) = self.check_conflict(r, i, j) {
                panic!("conflict search at column {j}: {e}");
            }
        }
        self.reset_assignment();
        let (q, reducers) = self.reduce(r, i, j);
        assert_eq!(q.leading(), Some(j), "new pivot must lead at its column");
        let pool = &mut self.pools[i as usize];
        let pos = pool
            .binary_search(&r)
            .expect("conflict row comes from the pool");
        pool.remove(pos);
        self.pivots.insert(
            j,
            Pivot {
                combination: q,
                source_row: r,
                reducers: self.options.track_reducers.then_some(reducers),
            },
        );
        self.stats.conflicts += 1;
    }

    fn assign(&mut self, c: u32) {
        self.ones.set(c);
        self.assigned.push(c);
    }

    fn reset_assignment(&mut self) {
        for c in self.assigned.drain(..) {
            self.ones.clear(c);
        }
    }

    fn first_firing(&self, col: u32) -> Option<usize> {
        self.pools[col as usize]
            .iter()
            .copied()
            .find(|&r| self.ones.parity(self.rows[r].ids()))
    }

    /// Returns the frontier column and the conflicting row, leaving the assignment in place.
    fn conflict_search(&mut self, j: u32) -> Option<(u32, usize)> {
        self.assign(j);
        if let Some(r) = self.first_firing(j) {
            return Some((j, r));
        }
        for i in (1..j).rev() {
            let Some(p) = self.pivots.combination(i) else {
                continue;
            };
            if self.ones.parity(&p.ids()[1..]) {
                self.assign(i);
            }
            if let Some(r) = self.first_firing(i) {
                return Some((i, r));
            }
        }
        None
    }

    fn check_conflict(&self, r: usize, i: u32, j: u32) -> Result<(), String> {
        if !self.ones.get(j) {
            return Err(format!("x_{j} is not one"));
        }
        if let Some(c) = self
            .assigned
            .iter()
            .find(|&&c| c < i || c > j || (c < j && !self.pivots.has_pivot(c)))
        {
            return Err(format!("x_{c} should be zero or unassigned"));
        }
        let row = &self.rows[r];
        if row.leading() != Some(i) {
            return Err(format!(
                "row {r} leads at {:?}, frontier is {i}",
                row.leading()
            ));
        }
        if !self.ones.parity(row.ids()) {
            return Err("row evaluates to zero".into());
        }
        for h in i..j {
            if let Some(p) = self.pivots.combination(h) {
                if self.ones.parity(p.ids()) {
                    return Err(format!("pivot at {h} does not vanish"));
                }
            }
        }
        Ok(())
    }

    fn reduce(&mut self, r: usize, i: u32, j: u32) -> (Gf2Combination, Vec<u32>) {
        let q = &self.rows[r];
        for &c in q.ids() {
            self.acc.set(c);
        }
        let mut reducers = Vec::new();
        for h in i..j {
            if !self.acc.get(h) {
                continue;
            }
            if let Some(p) = self.pivots.combination(h) {
                for &c in p.ids() {
                    self.acc.flip(c);
                }
                reducers.push(h);
            }
        }
        let ids = self.acc.drain_from(i);
        (Gf2Combination::from_sorted_unchecked(ids), reducers)
    }
}

/// Eliminates bare rows over `n` columns.
pub fn forward_eliminate_rows(
    rows: &[Gf2Combination],
    n: u32,
    options: EliminationOptions,
) -> (Gf2PivotSequence, EliminationStats) {
    Gf2Eliminator::new(rows, n, options).run()
}

/// Eliminates a system with default options.
pub fn forward_eliminate(sys: &LinearSystem) -> Gf2PivotSequence {
    let rows: Vec<Gf2Combination> = sys.combinations().cloned().collect();
    forward_eliminate_rows(
        &rows,
        sys.num_columns() as u32,
        EliminationOptions::default(),
    )
    .0
}

#[cfg(test)]
mod tests {
    use super::super::{forward_eliminate_generic, FieldCombination};
    use super::*;

    fn comb(ids: &[u32]) -> Gf2Combination {
        Gf2Combination::from_ids(ids.to_vec()).unwrap()
    }

    #[test]
    fn drain_collects_and_clears() {
        let mut b = BitSet::new(200);
        for c in [3, 64, 65, 130, 199] {
            b.set(c);
        }
        assert_eq!(b.drain_from(64), vec![64, 65, 130, 199]);
        assert!(b.get(3));
        assert_eq!(b.drain_from(0), vec![3]);
        assert!(b.words.iter().all(|&w| w == 0));
    }

    #[test]
    fn weight_four() {
        let rows = vec![
            comb(&[2, 3, 4]),
            comb(&[1, 2, 3]),
            comb(&[4]),
            comb(&[1, 2, 3]),
        ];
        let (seq, stats) = forward_eliminate_rows(&rows, 4, EliminationOptions::default());
        assert_eq!(seq.pivot_columns(), vec![1, 2, 4]);
        assert_eq!(
            stats,
            EliminationStats {
                direct: 3,
                conflicts: 0,
                pivotless: 1
            }
        );
    }

    #[test]
    fn needs_a_conflict() {
        // nothing leads at 2, but {1,2} + {1,3} = {2,3}
        let rows = vec![comb(&[1, 3]), comb(&[1, 2]), comb(&[3])];
        let options = EliminationOptions {
            track_reducers: true,
            check_conflicts: true,
        };
        let (seq, stats) = forward_eliminate_rows(&rows, 3, options);
        assert_eq!(seq.pivot_columns(), vec![1, 2, 3]);
        assert_eq!(seq.combination(2), Some(&comb(&[2, 3])));
        assert_eq!(seq.get(2).unwrap().reducers.as_deref(), Some(&[1][..]));
        assert_eq!(
            stats,
            EliminationStats {
                direct: 2,
                conflicts: 1,
                pivotless: 0
            }
        );

        let generic: Vec<_> = rows.iter().map(FieldCombination::from_gf2).collect();
        let (gseq, gstats) = forward_eliminate_generic(&generic, 3, options);
        assert_eq!(gseq.map(|c| c.to_gf2()), seq);
        assert_eq!(gstats, stats);
    }
}
