//! Stuffle (harmonic, quasi-shuffle) product on z-words.
//!
//! `z_i u * z_j v = z_i(u * z_j v) + z_j(z_i u * v) + z_{i+j}(u * v)`, with the
//! empty word as unit. Both versions run the recursion as a dynamic program
//! over suffix pairs of the two mult-indices.

use super::wordset::{Gf2WordSet, IntWordPoly};
use crate::index::{MultIndex, Word};

pub fn stuffle_int(k: &MultIndex, l: &MultIndex) -> IntWordPoly {
    let (kp, lp) = (k.parts(), l.parts());
    let (m, n) = (kp.len(), lp.len());
    let width = n + 1;
    let mut grid: Vec<IntWordPoly> = vec![IntWordPoly::new(); (m + 1) * width];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            let cell = match (i < m, j < n) {
                (false, false) => IntWordPoly::monomial(Word::EMPTY, 1),
                (true, false) => grid[(i + 1) * width + j].prefixed(Word::z(kp[i])),
                (false, true) => grid[i * width + j + 1].prefixed(Word::z(lp[j])),
                (true, true) => {
                    let mut c = grid[(i + 1) * width + j].prefixed(Word::z(kp[i]));
                    c.add_scaled(&grid[i * width + j + 1].prefixed(Word::z(lp[j])), 1);
                    c.add_scaled(
                        &grid[(i + 1) * width + j + 1].prefixed(Word::z(kp[i] + lp[j])),
                        1,
                    );
                    c
                }
            };
            grid[i * width + j] = cell;
        }
    }
    grid.swap_remove(0)
}

pub fn stuffle_gf2(k: &MultIndex, l: &MultIndex) -> Gf2WordSet {
    let (kp, lp) = (k.parts(), l.parts());
    let (m, n) = (kp.len(), lp.len());
    let width = n + 1;
    let mut grid: Vec<Gf2WordSet> = vec![Gf2WordSet::new(); (m + 1) * width];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            let cell = match (i < m, j < n) {
                (false, false) => Gf2WordSet::singleton(Word::EMPTY),
                (true, false) => grid[(i + 1) * width + j].prefixed(Word::z(kp[i])),
                (false, true) => grid[i * width + j + 1].prefixed(Word::z(lp[j])),
                (true, true) => {
                    let parts = [
                        (Word::z(kp[i]), &grid[(i + 1) * width + j]),
                        (Word::z(lp[j]), &grid[i * width + j + 1]),
                        (Word::z(kp[i] + lp[j]), &grid[(i + 1) * width + j + 1]),
                    ];
                    let mut terms = Vec::with_capacity(parts.iter().map(|(_, s)| s.len()).sum());
                    for (head, tail) in parts {
                        terms.extend(tail.iter().map(|t| head.concat(t)));
                    }
                    Gf2WordSet::from_parity(terms)
                }
            };
            grid[i * width + j] = cell;
        }
    }
    grid.swap_remove(0)
}
