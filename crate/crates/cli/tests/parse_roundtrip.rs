use alexpoly::alexmod::alexander_polynomial;
use alexpoly::cgroup::{CPresentation, ConjRelation, Word};
use alexpoly::linalg::IntMatrix;
use alexpoly::poly::IntPoly;
use alexpoly_cli::parse::{parse_matrix, parse_poly, parse_presentation, parse_relation};
use proptest::prelude::*;
use serde_json::Value;

fn word(m: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=m, prop_oneof![-3i64..=-1, 1i64..=3]), 0..5).prop_map(Word::new)
}

fn relation(m: usize) -> impl Strategy<Value = ConjRelation> {
    (1..=m, 1..=m, word(m)).prop_map(|(a, b, w)| ConjRelation::new(a, b, w))
}

fn presentation() -> impl Strategy<Value = CPresentation> {
    (1usize..5).prop_flat_map(|m| {
        prop::collection::vec(relation(m), 0..5)
            .prop_map(move |rels| CPresentation::new(m, rels).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn poly_display_parses_back(c in prop::collection::vec(-50i64..=50, 0..8)) {
        let p = IntPoly::from_i64s(&c);
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn relation_display_preserves_relator(r in relation(4)) {
        let back = parse_relation(&r.to_string()).unwrap();
        prop_assert_eq!(back.relator(), r.relator());
    }

    #[test]
    fn presentation_display_preserves_delta(g in presentation()) {
        let back = parse_presentation(&g.to_string()).unwrap();
        prop_assert_eq!(back.num_generators(), g.num_generators());
        prop_assert_eq!(alexander_polynomial(&back).delta, alexander_polynomial(&g).delta);
    }

    #[test]
    fn matrix_json_parses_back(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3)) {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = IntMatrix::from_i64_rows(&refs);
        let json: Value = alexpoly_cli::report::matrix(&m);
        prop_assert_eq!(parse_matrix(&json.to_string()).unwrap(), m);
    }
}
