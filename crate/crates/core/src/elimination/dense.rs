//! Textbook GF(2) row reduction on bit-packed rows, used as an oracle.

use crate::error::{Error, Result};
use crate::system::{Gf2Combination, LinearSystem};

pub const DENSE_ORACLE_MAX_COLUMNS: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseResult {
    pub rank: usize,
    /// Columns holding a pivot, ascending.
    pub pivot_columns: Vec<u32>,
}

/// Inserts each row into an echelon basis keyed by leading column; column 1
/// is bit 0, so the lowest set bit is the leading column.
pub fn dense_rank(rows: &[Gf2Combination], n: usize) -> Result<DenseResult> {
    if n > DENSE_ORACLE_MAX_COLUMNS {
        return Err(Error::OracleTooLarge {
            columns: n,
            limit: DENSE_ORACLE_MAX_COLUMNS,
        });
    }
    let width = n.div_ceil(64).max(1);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; n];
    for row in rows {
        let mut bits = vec![0u64; width];
        for &id in row.ids() {
            let b = id as usize - 1;
            assert!(b < n, "column {id} out of range");
            bits[b / 64] |= 1 << (b % 64);
        }
        while let Some(lead) = lowest_bit(&bits) {
            match &basis[lead] {
                Some(pivot) => {
                    for (w, p) in bits.iter_mut().zip(pivot) {
                        *w ^= p;
                    }
                }
                None => {
                    basis[lead] = Some(bits);
                    break;
                }
            }
        }
    }
    let pivot_columns: Vec<u32> = basis
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_some())
        .map(|(c, _)| c as u32 + 1)
        .collect();
    Ok(DenseResult {
        rank: pivot_columns.len(),
        pivot_columns,
    })
}

fn lowest_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

pub fn dense_eliminate_oracle(sys: &LinearSystem) -> Result<DenseResult> {
    let rows: Vec<Gf2Combination> = sys.combinations().cloned().collect();
    dense_rank(&rows, sys.num_columns())
}
