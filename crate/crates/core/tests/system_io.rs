use bmzs_core::relations::{generate_system, GeneratorConfig};
use bmzs_core::{Error, Family, Gf2Combination, LinearSystem, PairFamily};
use proptest::prelude::*;

fn system(family: Family, k: u32) -> LinearSystem {
    generate_system(PairFamily::new(family, k), &GeneratorConfig::default()).unwrap()
}

fn combos(sys: &LinearSystem) -> Vec<Vec<u32>> {
    sys.combinations().map(|c| c.ids().to_vec()).collect()
}

fn body_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn text_round_trip_for_generated_systems() {
    for family in Family::ALL {
        for k in 2..=12 {
            let sys = system(family, k);
            let back = LinearSystem::parse_text(sys.to_text().as_bytes()).unwrap();
            assert_eq!(back.weight(), k);
            assert_eq!(back.family(), Some(family));
            assert_eq!(combos(&back), combos(&sys), "{family} k={k}");

            let mut with_pairs = back;
            with_pairs
                .attach_pairs(sys.pairs_text().as_bytes())
                .unwrap();
            assert_eq!(with_pairs, sys);
        }
    }
}

#[test]
fn small_weight_row_lines() {
    let k3 = system(Family::Eds, 3).to_text();
    assert_eq!(body_lines(&k3), ["1 2 0"]);
    let k4 = system(Family::Eds, 4).to_text();
    assert_eq!(body_lines(&k4), ["2 3 4 0", "1 2 3 0", "4 0", "1 2 3 0"]);
    assert!(k4.starts_with("# weight=4\n"));
}

#[test]
fn compact_round_trip_and_size() {
    for family in Family::ALL {
        let sys = system(family, 10);
        let bytes = sys.compact_bytes();
        assert!(bytes.len() < sys.to_text().len());
        let back = LinearSystem::from_compact_bytes(&bytes).unwrap();
        assert_eq!(back.weight(), 10);
        assert_eq!(combos(&back), combos(&sys));
        let mut via_reader = Vec::new();
        sys.compact_write(&mut via_reader).unwrap();
        assert_eq!(via_reader, bytes);
        assert_eq!(
            combos(&LinearSystem::compact_read(&bytes[..]).unwrap()),
            combos(&sys)
        );
    }
}

#[test]
fn files_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let sys = system(Family::Mjpo, 9);
    let path = dir.path().join("mjpo.txt");
    sys.write_text_file(&path).unwrap();
    assert_eq!(
        combos(&LinearSystem::parse_text_file(&path).unwrap()),
        combos(&sys)
    );
    assert!(matches!(
        LinearSystem::parse_text_file(dir.path().join("missing.txt")),
        Err(Error::Io(_))
    ));
}

#[test]
fn malformed_text_reports_lines() {
    let cases = [
        ("# weight=4\n1 2 0\n9 0\n", 3),
        ("# weight=4\n1 x 0\n", 2),
        ("# weight=4\n\n2 2 0\n", 3),
        ("1 2 0\n", 0),
        ("# weight=4\n# rows=3\n1 0\n", 0),
    ];
    for (text, line) in cases {
        match LinearSystem::parse_text(text.as_bytes()) {
            Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

fn arb_system() -> impl Strategy<Value = LinearSystem> {
    (3u32..=9).prop_flat_map(|k| {
        let n = 1u32 << (k - 2);
        prop::collection::vec(
            prop::collection::btree_set(1..=n, 1..=(n as usize).min(12)),
            0..30,
        )
        .prop_map(move |rows| {
            let rows = rows
                .into_iter()
                .map(|s| Gf2Combination::from_ids(s.into_iter().collect()).unwrap())
                .collect();
            LinearSystem::from_combinations(k, rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn random_systems_round_trip(sys in arb_system()) {
        let text = LinearSystem::parse_text(sys.to_text().as_bytes()).unwrap();
        prop_assert_eq!(&text, &sys);
        let compact = LinearSystem::from_compact_bytes(&sys.compact_bytes()).unwrap();
        prop_assert_eq!(&compact, &sys);
    }

    #[test]
    fn truncated_compact_is_rejected(sys in arb_system(), cut in 0usize..64) {
        let bytes = sys.compact_bytes();
        prop_assume!(cut < bytes.len());
        prop_assert!(matches!(LinearSystem::from_compact_bytes(&bytes[..cut]), Err(Error::Format(_))));
    }
}
