use std::collections::BTreeMap;

use bmzs_core::algebra::{
    regularize_poly_int, shuffle_int, stuffle_gf2, stuffle_int, Gf2WordSet, IntWordPoly,
    ShuffleMemo, WordAlgebra,
};
use bmzs_core::{MultIndex, Word};
use proptest::prelude::*;

fn word(bits: u64, len: u32) -> Word {
    Word::from_bits(bits, len)
}

fn arb_word(max_len: u32) -> impl Strategy<Value = Word> {
    (0..=max_len).prop_flat_map(|len| {
        let top = if len == 0 { 0 } else { (1u64 << len) - 1 };
        (0..=top).prop_map(move |bits| word(bits, len))
    })
}

fn arb_index(max_weight: u32) -> impl Strategy<Value = MultIndex> {
    prop::collection::vec(1u32..=4, 0..=4).prop_filter_map("weight bound", move |parts| {
        let w: u32 = parts.iter().sum();
        (w <= max_weight).then(|| MultIndex::from_parts(&parts))
    })
}

/// Shuffle by listing every interleaving: choose which positions take letters of `u`.
fn shuffle_by_positions(u: Word, v: Word) -> BTreeMap<Word, i64> {
    let (m, n) = (u.degree(), v.degree());
    let total = m + n;
    let mut out = BTreeMap::new();
    for mask in 0u64..(1 << total) {
        if mask.count_ones() != m {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut w = Word::EMPTY;
        for p in 0..total {
            if mask >> p & 1 == 1 {
                w = w.concat(u.suffix_from(i).prefix(1));
                i += 1;
            } else {
                w = w.concat(v.suffix_from(j).prefix(1));
                j += 1;
            }
        }
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

fn poly_map(p: &IntWordPoly) -> BTreeMap<Word, i64> {
    p.iter().collect()
}

fn shuffle_poly(p: &IntWordPoly, w: Word) -> IntWordPoly {
    let mut out = IntWordPoly::new();
    for (u, c) in p.iter() {
        out.add_scaled(&shuffle_int(u, w), c);
    }
    out
}

fn stuffle_poly(p: &IntWordPoly, l: &MultIndex) -> IntWordPoly {
    let mut out = IntWordPoly::new();
    for (u, c) in p.iter() {
        out.add_scaled(&stuffle_int(&MultIndex::from_word(u).unwrap(), l), c);
    }
    out
}

/// Truncated multiple harmonic sum `sum_{N >= n_1 > ... > n_r >= 1} prod n_i^{-k_i}`.
fn harmonic_sum(k: &MultIndex, n: u32) -> f64 {
    fn go(parts: &[u32], upper: u32) -> f64 {
        match parts.split_first() {
            None => 1.0,
            Some((&k, rest)) => (1..=upper)
                .map(|m| go(rest, m - 1) / (m as f64).powi(k as i32))
                .sum(),
        }
    }
    go(k.parts(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn shuffle_matches_interleavings(u in arb_word(6), v in arb_word(6)) {
        prop_assert_eq!(poly_map(&shuffle_int(u, v)), shuffle_by_positions(u, v));
    }

    #[test]
    fn shuffle_commutative(u in arb_word(5), v in arb_word(5)) {
        prop_assert_eq!(shuffle_int(u, v), shuffle_int(v, u));
        let memo = ShuffleMemo::for_weight(u.degree() + v.degree());
        prop_assert_eq!(memo.shuffle(u, v), memo.shuffle(v, u));
    }

    #[test]
    fn shuffle_associative(u in arb_word(4), v in arb_word(3), w in arb_word(3)) {
        let left = shuffle_poly(&shuffle_int(u, v), w);
        let vw = shuffle_int(v, w);
        let mut right = IntWordPoly::new();
        for (t, c) in vw.iter() {
            right.add_scaled(&shuffle_int(u, t), c);
        }
        prop_assert_eq!(left, right);
    }

    #[test]
    fn split_shuffle_matches_recursion_mod2(u in arb_word(7), v in arb_word(5), cap in 1u32..6) {
        let tiny = ShuffleMemo::new(cap);
        prop_assert_eq!((*tiny.shuffle(u, v)).clone(), shuffle_int(u, v).mod2());
    }

    #[test]
    fn stuffle_commutative_and_mod2(k in arb_index(6), l in arb_index(4)) {
        prop_assert_eq!(stuffle_int(&k, &l), stuffle_int(&l, &k));
        prop_assert_eq!(stuffle_gf2(&k, &l), stuffle_int(&k, &l).mod2());
    }

    #[test]
    fn stuffle_associative(a in arb_index(4), b in arb_index(3), c in arb_index(3)) {
        let left = stuffle_poly(&stuffle_int(&a, &b), &c);
        let bc = stuffle_int(&b, &c);
        let mut right = IntWordPoly::new();
        for (t, coeff) in bc.iter() {
            right.add_scaled(&stuffle_int(&a, &MultIndex::from_word(t).unwrap()), coeff);
        }
        prop_assert_eq!(left, right);
    }

    #[test]
    fn stuffle_multiplies_harmonic_sums(k in arb_index(5), l in arb_index(5)) {
        let n = 7;
        let product = harmonic_sum(&k, n) * harmonic_sum(&l, n);
        let expanded: f64 = stuffle_int(&k, &l)
            .iter()
            .map(|(w, c)| c as f64 * harmonic_sum(&MultIndex::from_word(w).unwrap(), n))
            .sum();
        prop_assert!((product - expanded).abs() <= 1e-9 * product.abs().max(1.0));
    }

    #[test]
    fn regularization_lands_on_admissible_words(k in arb_index(6), l in arb_index(5)) {
        prop_assume!(!k.is_empty() && !l.is_empty());
        let algebra = WordAlgebra::for_weight(k.weight() + l.weight());
        for kind in [bmzs_core::algebra::ProductKind::Shuffle, bmzs_core::algebra::ProductKind::Stuffle] {
            let r = algebra.reg_product(kind, &k, &l).unwrap();
            prop_assert!(r.iter().all(|w| w.is_admissible() && w.degree() == k.weight() + l.weight()));
        }
        // the mod-2 regularization is the reduction of the signed one
        let stuffle = stuffle_int(&k, &l);
        prop_assert_eq!(
            regularize_poly_int(&stuffle).unwrap().mod2(),
            algebra.regularize_set(&stuffle.mod2()).unwrap()
        );
    }
}

#[test]
fn exhaustive_commutativity_to_degree_ten() {
    for total in 0..=10u32 {
        for m in 0..=total / 2 {
            let n = total - m;
            let memo = ShuffleMemo::for_weight(total);
            for ub in 0..(1u64 << m) {
                for vb in (0..(1u64 << n)).step_by(if n > 6 { 7 } else { 1 }) {
                    let (u, v) = (word(ub, m), word(vb, n));
                    let a: Gf2WordSet = (*memo.shuffle(u, v)).clone();
                    assert_eq!(a, *memo.shuffle(v, u));
                }
            }
        }
    }
}

#[test]
fn split_and_recursion_agree_to_degree_twelve() {
    let split = ShuffleMemo::new(3);
    let full = ShuffleMemo::new(12);
    for (ub, vb, m, n) in [
        (0b101101u64, 0b110001u64, 6, 6),
        (0b1u64, 0b10110111011u64, 1, 11),
        (0b111000u64, 0b000111u64, 6, 6),
        (0b10101u64, 0b0110110u64, 5, 7),
        (0u64, 0b111111111111u64, 0, 12),
    ] {
        let (u, v) = (word(ub, m), word(vb, n));
        assert_eq!(*split.shuffle(u, v), *full.shuffle(u, v));
        assert_eq!(*split.shuffle(u, v), shuffle_int(u, v).mod2());
    }
}
