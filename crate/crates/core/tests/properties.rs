use num_rational::BigRational;
use proptest::prelude::*;

use su11::opalg::{commutator, DiffOperator};
use su11::report::{parse_operator_expression, print_operator};
use su11::special::{laguerre, laguerre_series};
use su11::systems::{ladder_coefficient, level, Direction, SystemKind, SystemSpec};

mod common;
use common::{coefficient, operator, params, rational};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jacobi_identity(a in operator(), b in operator(), c in operator()) {
        let t1 = commutator(&a, &commutator(&b, &c).unwrap()).unwrap();
        let t2 = commutator(&b, &commutator(&c, &a).unwrap()).unwrap();
        let t3 = commutator(&c, &commutator(&a, &b).unwrap()).unwrap();
        prop_assert!((t1 + t2 + t3).is_zero());
    }

    #[test]
    fn commutator_is_antisymmetric(a in operator(), b in operator()) {
        let ab = commutator(&a, &b).unwrap();
        let ba = commutator(&b, &a).unwrap();
        prop_assert_eq!(ab, -ba);
        prop_assert!(commutator(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn composition_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn composition_is_bilinear(a in operator(), b in operator(), c in operator(), k in coefficient()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&b + &c) * &a, &(&b * &a) + &(&c * &a));
        prop_assert_eq!(&a * &b.scale(&k), (&a * &b).scale(&k));
    }

    #[test]
    fn normalize_is_idempotent(a in operator(), b in operator()) {
        let again = DiffOperator::normalize(params(), a.terms()).unwrap();
        prop_assert_eq!(&again, &a);
        // Unmerged concatenation normalizes to the sum.
        let raw = a.terms().into_iter().chain(b.terms());
        prop_assert_eq!(DiffOperator::normalize(params(), raw).unwrap(), &a + &b);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in operator(), b in operator(), v in rational()) {
        prop_assume!(v != BigRational::from_integer(0.into()));
        let bind = [("k2", v.clone())];
        let s = |op: &DiffOperator| op.substitute(&bind).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn printed_operators_parse_back(a in operator()) {
        let text = print_operator(&a);
        prop_assert_eq!(parse_operator_expression(&text, &params()).unwrap(), a, "{}", text);
    }
}

proptest! {
    #[test]
    fn laguerre_recurrence_matches_series(n in 0u32..=12, alpha in 0.0f64..10.0, t in 0.0f64..30.0) {
        let rec = laguerre(n, alpha, t).unwrap().value;
        let ser = laguerre_series(n, alpha, t);
        prop_assert!((rec - ser).abs() <= 1e-11 * ser.abs().max(1.0));
    }

    #[test]
    fn ladder_coefficients_pair_up(
        kind in prop::sample::select(SystemKind::ALL.to_vec()),
        dim in 2u32..=12,
        ell in 0u32..=4,
        b in 0.0f64..3.0,
        n in 0u32..=20,
    ) {
        let spec = SystemSpec::of_kind(kind, dim, ell, b).unwrap();
        let up = ladder_coefficient(&spec, n, Direction::Raise);
        let down = ladder_coefficient(&spec, n + 1, Direction::Lower);
        prop_assert!((up - down).abs() <= 1e-12 * up.max(1.0));
        prop_assert_eq!(ladder_coefficient(&spec, 0, Direction::Lower), 0.0);
        // The level moves by 2 (oscillator-type) or 1 (hydrogen-type) per step.
        let step = level(&spec, n + 1).value - level(&spec, n).value;
        let expected = if kind.is_oscillator_type() { 2.0 } else { 1.0 };
        prop_assert!((step - expected).abs() < 1e-12);
    }
}
