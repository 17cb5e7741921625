//! Expected dimensions from generating series, by truncated power-series division.

use crate::error::{Error, Result};

/// Largest weight accepted by [`expected_tables`].
pub const MAX_SERIES_WEIGHT: u32 = 64;

/// A bivariate power series in `X` (weight) and `Y` (depth), truncated at
/// `X^kmax` and `Y^rmax`. `coeffs[k][r]` is the coefficient of `X^k Y^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Series {
    coeffs: Vec<Vec<i128>>,
}

impl Series {
    fn zero(k_max: usize, r_max: usize) -> Self {
        Series {
            coeffs: vec![vec![0; r_max + 1]; k_max + 1],
        }
    }

    fn one(k_max: usize, r_max: usize) -> Self {
        let mut s = Series::zero(k_max, r_max);
        s.coeffs[0][0] = 1;
        s
    }

    /// `sum_k f[k] X^k Y^r` for a univariate `f`.
    fn from_x(f: &[i128], r: usize, k_max: usize, r_max: usize) -> Self {
        let mut s = Series::zero(k_max, r_max);
        if r <= r_max {
            for (k, &v) in f.iter().enumerate().take(k_max + 1) {
                s.coeffs[k][r] = v;
            }
        }
        s
    }

    fn k_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn r_max(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    fn add_scaled(&mut self, other: &Series, c: i128) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += c * y;
            }
        }
    }

    /// `self / den`, where `den` has constant term 1.
    fn div(&self, den: &Series) -> Series {
        assert_eq!(den.coeffs[0][0], 1, "denominator must have constant term 1");
        let (km, rm) = (self.k_max(), self.r_max());
        let mut q = Series::zero(km, rm);
        // q = num - (den - 1) q, solved in increasing total order
        for k in 0..=km {
            for r in 0..=rm {
                let mut v = self.coeffs[k][r];
                for k2 in 0..=k {
                    for r2 in 0..=r {
                        if (k2, r2) != (0, 0) {
                            v -= den.coeffs[k2][r2] * q.coeffs[k - k2][r - r2];
                        }
                    }
                }
                q.coeffs[k][r] = v;
            }
        }
        q
    }
}

/// Univariate `num / den` to degree `k_max`; `den[0]` must be 1.
fn div_x(num: &[i128], den: &[i128], k_max: usize) -> Vec<i128> {
    assert_eq!(den[0], 1);
    let at = |s: &[i128], i: usize| s.get(i).copied().unwrap_or(0);
    let mut q = vec![0i128; k_max + 1];
    for k in 0..=k_max {
        let mut v = at(num, k);
        for i in 1..=k {
            v -= at(den, i) * q[k - i];
        }
        q[k] = v;
    }
    q
}

fn mul_x(a: &[i128], b: &[i128], k_max: usize) -> Vec<i128> {
    let mut out = vec![0i128; k_max + 1];
    for (i, &x) in a.iter().enumerate().take(k_max + 1) {
        for (j, &y) in b.iter().enumerate().take(k_max + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Expected dimension tables up to weight `k_max` and depth `r_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    pub k_max: u32,
    pub r_max: u32,
    /// Coefficients of `1 / (1 - X^2 - X^3)`.
    pub totals: Vec<u64>,
    /// `by_depth[k][r]`: coefficients of `1 / (1 - (X^2 + X^3) Y)`.
    pub by_depth: Vec<Vec<u64>>,
    /// `bk[k][r]`: coefficients of the Broadhurst–Kreimer series.
    pub bk: Vec<Vec<i64>>,
}

impl SeriesTable {
    pub fn total(&self, k: u32) -> u64 {
        self.totals[k as usize]
    }

    pub fn depth(&self, k: u32, r: u32) -> u64 {
        self.by_depth
            .get(k as usize)
            .and_then(|row| row.get(r as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn bk(&self, k: u32, r: u32) -> i64 {
        self.bk
            .get(k as usize)
            .and_then(|row| row.get(r as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn bk_total(&self, k: u32) -> i64 {
        self.bk[k as usize].iter().sum()
    }
}

/// Expands the three generating series:
///
/// * `sum d_k X^k = 1 / (1 - X^2 - X^3)`
/// * `sum c(k,r) X^k Y^r = 1 / (1 - (X^2 + X^3) Y)`
/// * the Broadhurst–Kreimer series `(1 + E Y) / (1 - O Y + S Y^2 (1 - Y^2))`
///   with `E = X^2/(1-X^2)`, `O = X^3/(1-X^2)`, `S = X^12/((1-X^4)(1-X^6))`.
pub fn expected_tables(k_max: u32, r_max: u32) -> Result<SeriesTable> {
    if k_max > MAX_SERIES_WEIGHT {
        return Err(Error::WeightOutOfRange {
            weight: k_max,
            min: 0,
            max: MAX_SERIES_WEIGHT,
        });
    }
    let (km, rm) = (k_max as usize, r_max as usize);

    let totals = div_x(&[1], &[1, 0, -1, -1], km);

    let mut den = Series::one(km, rm);
    den.add_scaled(&Series::from_x(&[0, 0, 1, 1], 1, km, rm), -1);
    let by_depth = Series::one(km, rm).div(&den);

    let one_minus_x2 = [1, 0, -1];
    let e = div_x(&[0, 0, 1], &one_minus_x2, km);
    let o = div_x(&[0, 0, 0, 1], &one_minus_x2, km);
    let mut x12 = vec![0i128; 13];
    x12[12] = 1;
    let s = div_x(
        &x12,
        &mul_x(&[1, 0, 0, 0, -1], &[1, 0, 0, 0, 0, 0, -1], km),
        km,
    );

    let mut num = Series::one(km, rm);
    num.add_scaled(&Series::from_x(&e, 1, km, rm), 1);
    let mut den = Series::one(km, rm);
    den.add_scaled(&Series::from_x(&o, 1, km, rm), -1);
    den.add_scaled(&Series::from_x(&s, 2, km, rm), 1);
    den.add_scaled(&Series::from_x(&s, 4, km, rm), -1);
    let bk = num.div(&den);

    let to_u64 = |v: i128| u64::try_from(v).expect("dimension counts are nonnegative");
    Ok(SeriesTable {
        k_max,
        r_max,
        totals: totals.into_iter().map(to_u64).collect(),
        by_depth: by_depth
            .coeffs
            .iter()
            .map(|row| row.iter().map(|&v| to_u64(v)).collect())
            .collect(),
        bk: bk
            .coeffs
            .iter()
            .map(|row| row.iter().map(|&v| i64::try_from(v).unwrap()).collect())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_recurrence() {
        let t = expected_tables(40, 20).unwrap();
        for k in 3..=40 {
            assert_eq!(t.total(k), t.total(k - 2) + t.total(k - 3));
        }
        for k in 0..=40u32 {
            assert_eq!((0..=20).map(|r| t.depth(k, r)).sum::<u64>(), t.total(k));
        }
    }

    #[test]
    fn bk_rows() {
        let t = expected_tables(22, 11).unwrap();
        assert_eq!(t.bk[12][..6], [0, 1, 3, 6, 2, 0]);
        assert_eq!(t.bk_total(12), 12);
    }

    #[test]
    fn weight_guard() {
        assert!(expected_tables(65, 2).is_err());
    }
}
