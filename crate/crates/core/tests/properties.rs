mod common;

use common::props::{self, CASES};

#[test]
fn taylor_identity() {
    props::taylor(CASES).unwrap();
}

#[test]
fn hasse_composition() {
    props::hasse_composition(CASES).unwrap();
}

#[test]
fn order_is_multiplicative() {
    props::order_multiplicativity(CASES).unwrap();
}

#[test]
fn blowup_round_trip() {
    props::blowup_round_trip(CASES).unwrap();
}

#[test]
fn game_terminates_below_s() {
    props::game_termination(CASES).unwrap();
}

mod robustness {
    use hord_core::field::Field;
    use hord_core::poly::Ring;
    use hord_core::scene::parse_scene;
    use hord_core::trace::verify_trace;
    use proptest::prelude::*;

    const SCENE: &str = "[field]\nchar: 3\nvars: z, x\n[presentation]\nsections: z\npoly: z^3 + x^4\nelim: auto\n[points]\np: (1, 2)\n[script]\nhord at p\nblowup: center = {z, x}; chart = x\n";

    proptest! {
        #![proptest_config(ProptestConfig { cases: super::CASES, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn polynomial_parser_never_panics(s in "[xyz0-9+*^() -]{0,40}") {
            let r = Ring::new(Field::prime(3), vec!["x".into(), "y".into(), "z".into()]).unwrap();
            let _ = r.parse(&s);
        }

        #[test]
        fn scene_parser_reports_lines(cut in 0usize..SCENE.len(), junk in "[a-z:{},;=^ ()0-9\n\\[\\]]{0,12}") {
            let mut text = SCENE.to_string();
            text.insert_str(cut, &junk);
            if let Err(e) = parse_scene(&text) {
                prop_assert!(e.line >= 1 && e.line <= text.lines().count().max(1));
            }
        }

        #[test]
        fn verify_trace_never_panics(a in "[\\[\\]{}:,\"a-c0-9. ]{0,30}", b in "[\\[\\]{}:,\"a-c0-9. ]{0,30}") {
            let _ = verify_trace(&a, &b);
        }
    }
}
