mod common;

use common::*;
use proptest::prelude::*;

use superfield::textio::{parse_field, parse_poly, parse_rational, print_field, print_poly};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn poly_round_trip(a in poly(sig(3, 3), 4, None)) {
        let text = print_poly(&a);
        prop_assert_eq!(parse_poly(&text, &sig(3, 3)).unwrap(), a);
    }

    #[test]
    fn single_variable_names_round_trip(a in poly(sig(1, 1), 4, None)) {
        let text = print_poly(&a);
        prop_assert_eq!(parse_poly(&text, &sig(1, 1)).unwrap(), a);
    }

    #[test]
    fn field_round_trip(x in field(sig(2, 2), 3, None)) {
        let text = print_field(&x);
        prop_assert_eq!(parse_field(&text, &sig(2, 2)).unwrap(), x);
    }

    #[test]
    fn printing_is_canonical(a in poly(sig(2, 2), 3, None), b in poly(sig(2, 2), 3, None)) {
        let sum = &a + &b;
        let text = format!("({}) + ({})", print_poly(&a), print_poly(&b));
        prop_assert_eq!(print_poly(&parse_poly(&text, &sig(2, 2)).unwrap()), print_poly(&sum));
    }

    #[test]
    fn parser_never_panics(text in "[ -~]{0,40}") {
        let _ = parse_poly(&text, &sig(2, 2));
        let _ = parse_field(&text, &sig(2, 2));
        let _ = parse_rational(&text);
    }

    #[test]
    fn errors_point_inside_the_input(text in "[a-z0-9*+^()/ -]{1,30}") {
        if let Err(e) = parse_poly(&text, &sig(2, 2)) {
            prop_assert!(e.span.begin <= text.len());
            prop_assert!(e.span.begin <= e.span.end);
        }
    }
}
