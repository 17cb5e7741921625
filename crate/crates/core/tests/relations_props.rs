use std::collections::{BTreeMap, BTreeSet};

use bmzs_core::algebra::{regularize_poly_int, shuffle_int, stuffle_int, ProductKind, WordAlgebra};
use bmzs_core::relations::{eds_relation, enumerate_pairs, generate_system, GeneratorConfig, Pair};
use bmzs_core::{Family, MultIndex, PairFamily};
use proptest::prelude::*;

fn idx(parts: &[u32]) -> MultIndex {
    MultIndex::from_parts(parts)
}

fn pair_set(family: Family, k: u32) -> BTreeSet<Pair> {
    enumerate_pairs(PairFamily::new(family, k))
        .into_iter()
        .collect()
}

/// Signed relation `reg(stuffle) - reg(shuffle)` as index -> coefficient.
fn integer_relation(k: &MultIndex, l: &MultIndex) -> BTreeMap<Vec<u32>, i64> {
    let mut rel = regularize_poly_int(&stuffle_int(k, l)).unwrap();
    rel.add_scaled(
        &regularize_poly_int(&shuffle_int(k.to_word(), l.to_word())).unwrap(),
        -1,
    );
    rel.iter()
        .map(|(w, c)| (MultIndex::from_word(w).unwrap().parts().to_vec(), c))
        .collect()
}

fn terms(list: &[(&[u32], i64)]) -> BTreeMap<Vec<u32>, i64> {
    list.iter().map(|(p, c)| (p.to_vec(), *c)).collect()
}

#[test]
fn weight_four_integer_relations() {
    let cases: [(&[u32], &[u32], &[(&[u32], i64)]); 5] = [
        (&[1], &[2], &[(&[2, 1], -1), (&[3], 1)]),
        (&[1], &[3], &[(&[2, 2], -1), (&[3, 1], -1), (&[4], 1)]),
        (
            &[1],
            &[2, 1],
            &[(&[2, 1, 1], -1), (&[2, 2], 1), (&[3, 1], 1)],
        ),
        (
            &[1, 1],
            &[2],
            &[(&[2, 1, 1], 1), (&[2, 2], -1), (&[3, 1], -1)],
        ),
        (&[2], &[2], &[(&[3, 1], -4), (&[4], 1)]),
    ];
    for (k, l, expected) in cases {
        let (k, l) = (idx(k), idx(l));
        let signed = integer_relation(&k, &l);
        assert_eq!(signed, terms(expected), "({k}) ({l})");
        // the binary relation is the odd part of the signed one
        let odd: BTreeSet<MultIndex> = signed
            .iter()
            .filter(|(_, c)| *c % 2 != 0)
            .map(|(p, _)| MultIndex::from_parts(p))
            .collect();
        let binary: BTreeSet<MultIndex> = eds_relation(&k, &l)
            .unwrap()
            .indices()
            .into_iter()
            .collect();
        assert_eq!(binary, odd);
    }
}

#[test]
fn small_regularized_products() {
    let alg = WordAlgebra::for_weight(4);
    let show = |s: bmzs_core::algebra::Gf2WordSet| -> BTreeSet<Vec<u32>> {
        s.indices()
            .unwrap()
            .into_iter()
            .map(|m| m.parts().to_vec())
            .collect()
    };
    let set = |v: &[&[u32]]| -> BTreeSet<Vec<u32>> { v.iter().map(|p| p.to_vec()).collect() };
    assert!(alg
        .reg_product(ProductKind::Shuffle, &idx(&[1]), &idx(&[2]))
        .unwrap()
        .is_empty());
    assert_eq!(
        show(
            alg.reg_product(ProductKind::Stuffle, &idx(&[1]), &idx(&[2]))
                .unwrap()
        ),
        set(&[&[2, 1], &[3]])
    );
    assert!(alg
        .reg_product(ProductKind::Shuffle, &idx(&[1, 1]), &idx(&[2]))
        .unwrap()
        .is_empty());
    assert_eq!(
        show(
            alg.reg_product(ProductKind::Stuffle, &idx(&[1, 1]), &idx(&[2]))
                .unwrap()
        ),
        set(&[&[2, 1, 1], &[2, 2], &[3, 1]])
    );
    assert_eq!(
        show(
            alg.regularize(idx(&[1, 3]).to_word())
                .unwrap()
                .as_ref()
                .clone()
        ),
        set(&[&[2, 2]])
    );
}

#[test]
fn family_inclusions() {
    for k in 2..=12 {
        let eds = pair_set(Family::Eds, k);
        let fds = pair_set(Family::Fds, k);
        let mjpo = pair_set(Family::Mjpo, k);
        let knt = pair_set(Family::Knt, k);
        assert!(knt.is_subset(&mjpo), "k={k}");
        assert!(fds.is_subset(&mjpo), "k={k}");
        assert!(mjpo.is_subset(&eds), "k={k}");
        assert_eq!(
            enumerate_pairs(PairFamily::new(Family::Eds, k)).len(),
            eds.len()
        );
    }
}

#[test]
fn relation_supports_are_admissible_columns() {
    for family in Family::ALL {
        for k in 2..=11 {
            let sys =
                generate_system(PairFamily::new(family, k), &GeneratorConfig::default()).unwrap();
            let n = sys.num_columns() as u32;
            for row in sys.rows() {
                assert!(!row.combination.is_empty());
                assert!(row.combination.ids().iter().all(|&c| (1..=n).contains(&c)));
                let (a, b) = row.pair.as_ref().unwrap();
                assert_eq!(a.weight() + b.weight(), k);
            }
        }
    }
}

#[test]
fn admissible_products_need_no_regularization() {
    for k in 4..=10 {
        let alg = WordAlgebra::for_weight(k);
        for (a, b) in enumerate_pairs(PairFamily::new(Family::Fds, k)) {
            for kind in [ProductKind::Shuffle, ProductKind::Stuffle] {
                let raw = alg.product(kind, &a, &b);
                assert!(raw.iter().all(|w| w.is_admissible()));
                assert_eq!(raw, alg.reg_product(kind, &a, &b).unwrap());
            }
        }
    }
}

#[test]
fn rows_follow_pair_order() {
    let sys =
        generate_system(PairFamily::new(Family::Eds, 9), &GeneratorConfig::default()).unwrap();
    let pairs: Vec<Pair> = sys.rows().iter().map(|r| r.pair.clone().unwrap()).collect();
    let mut sorted = pairs.clone();
    sorted.sort_by_key(|(a, b)| (a.weight(), a.code(), b.code()));
    assert_eq!(pairs, sorted);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generation_ignores_blocks_and_threads(
        k in 3u32..=10,
        family in prop::sample::select(Family::ALL.to_vec()),
        blocks in 1usize..=9,
        threads in 1usize..=4,
        memo in prop::option::of(1u32..=6),
    ) {
        let base = generate_system(PairFamily::new(family, k), &GeneratorConfig::default()).unwrap();
        let config = GeneratorConfig { threads, memo_max_degree: memo, blocks };
        let other = generate_system(PairFamily::new(family, k), &config).unwrap();
        prop_assert_eq!(base, other);
    }
}
