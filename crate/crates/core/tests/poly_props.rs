use hessk3_core::poly::{det_poly_matrix, Cyclotomic, MultiPoly, Ring, Q};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = MultiPoly<Q>> {
    prop::collection::vec((prop::collection::vec(0i32..4, 3), -9i64..=9), 0..6).prop_map(|terms| {
        let t = terms.into_iter().map(|(e, c)| (e, Q::from_i64(c))).collect();
        MultiPoly::from_terms(&VARS, t).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), v in 0usize..3) {
        let d = |p: &MultiPoly<Q>| p.derivative(VARS[v]).unwrap();
        prop_assert_eq!(d(&(&a * &b)), d(&a) * &b + &a * d(&b));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), p in prop::collection::vec(-5i64..=5, 3)) {
        let pt: Vec<Q> = p.into_iter().map(Q::from_i64).collect();
        let ev = |f: &MultiPoly<Q>| f.evaluate(&pt).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn repeated_row_kills_the_determinant(rows in prop::collection::vec(prop::collection::vec(poly(), 3), 2)) {
        let m = vec![rows[0].clone(), rows[1].clone(), rows[0].clone()];
        prop_assert!(det_poly_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(poly(), 4), b in prop::collection::vec(poly(), 4)) {
        let m = |v: &[MultiPoly<Q>]| vec![vec![v[0].clone(), v[1].clone()], vec![v[2].clone(), v[3].clone()]];
        let (ma, mb) = (m(&a), m(&b));
        let prod: Vec<Vec<MultiPoly<Q>>> = (0..2)
            .map(|i| (0..2).map(|j| &ma[i][0] * &mb[0][j] + &ma[i][1] * &mb[1][j]).collect())
            .collect();
        prop_assert_eq!(det_poly_matrix(&prod).unwrap(), det_poly_matrix(&ma).unwrap() * det_poly_matrix(&mb).unwrap());
    }

    #[test]
    fn roots_of_unity(k in -20i64..20) {
        let z = Cyclotomic::<15>::zeta_pow(k);
        prop_assert!(z.pow_u(15) == Cyclotomic::<15>::one());
        prop_assert!(z.mul_ref(&Cyclotomic::<15>::zeta_pow(-k)) == Cyclotomic::<15>::one());
    }
}
