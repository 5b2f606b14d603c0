mod common;

use common::*;
use proptest::prelude::*;

use superfield::kernel::{Parity, Point};
use superfield::VectorField;

fn homogeneous(max_degree: usize) -> impl Strategy<Value = (Parity, VectorField)> {
    parity().prop_flat_map(move |p| (Just(p), field(sig(2, 2), max_degree, Some(p))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn super_antisymmetry((px, x) in homogeneous(3), (py, y) in homogeneous(3)) {
        let xy = x.bracket(&y).unwrap();
        prop_assert_eq!(xy, -&y.bracket(&x).unwrap().scale(&koszul(px, py)));
    }

    #[test]
    fn super_jacobi((px, x) in homogeneous(2), (py, y) in homogeneous(2), (_, z) in homogeneous(2)) {
        let lhs = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let rhs = &x.bracket(&y).unwrap().bracket(&z).unwrap()
            + &y.bracket(&x.bracket(&z).unwrap()).unwrap().scale(&koszul(px, py));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fields_are_derivations(
        (px, x) in homogeneous(3),
        (pf, f) in parity().prop_flat_map(|p| (Just(p), poly(sig(2, 2), 3, Some(p)))),
        g in poly(sig(2, 2), 3, None),
    ) {
        let lhs = x.apply(&(&f * &g)).unwrap();
        let rhs = &(&x.apply(&f).unwrap() * &g) + &(&f * &x.apply(&g).unwrap()).scale(&koszul(px, pf));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_the_commutator((px, x) in homogeneous(3), (py, y) in homogeneous(3), f in poly(sig(2, 2), 3, None)) {
        let lhs = x.bracket(&y).unwrap().apply(&f).unwrap();
        let rhs = &x.apply(&y.apply(&f).unwrap()).unwrap()
            - &y.apply(&x.apply(&f).unwrap()).unwrap().scale(&koszul(px, py));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn filtration_and_symbols((_, x) in homogeneous(3), (_, y) in homogeneous(3)) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let xy = x.bracket(&y).unwrap();
        prop_assume!(!xy.is_zero());
        prop_assert!(xy.fil_degree().unwrap() >= x.fil_degree().unwrap() + y.fil_degree().unwrap());
        if let Some(sb) = x.symbol().unwrap().bracket(&y.symbol().unwrap()).unwrap() {
            let direct = xy.symbol().unwrap();
            prop_assert_eq!(direct.level(), sb.level());
            prop_assert_eq!(direct.field(), sb.field());
        }
    }

    #[test]
    fn translation_commutes_with_brackets(x in field(sig(2, 1), 2, None), y in field(sig(2, 1), 2, None), a in -2i64..=2, b in -2i64..=2) {
        let p = Point::from_integers(&[a, b]);
        let lhs = x.bracket(&y).unwrap().translate(&p).unwrap();
        let rhs = x.translate(&p).unwrap().bracket(&y.translate(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_parts_recombine(x in field(sig(1, 2), 3, None)) {
        let total = x
            .homogeneous_parts()
            .into_iter()
            .fold(VectorField::zero(x.signature()), |acc, (p, part)| {
                assert_eq!(part.parity(), Some(p));
                &acc + &part
            });
        prop_assert_eq!(total, x);
    }
}
