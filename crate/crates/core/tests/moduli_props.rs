use hessk3_core::cubic::{eckardt_data, SylvesterSurface};
use hessk3_core::moduli::{
    constant_point, invariants_point, tritangent_polynomial, weighted_limit, wps_equal, Family, Flavor, WeightedPoint,
    INVARIANTS,
};
use hessk3_core::poly::{MultiPoly, Ring, Q};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=5).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn nonzero() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |x| !Ring::is_zero(x))
}

fn point() -> impl Strategy<Value = WeightedPoint<Q>> {
    prop::array::uniform5(rational())
        .prop_filter("not the origin", |c| c.iter().any(|x| !Ring::is_zero(x)))
        .prop_map(|c| WeightedPoint::new(c, Flavor::I).unwrap())
}

fn laurent() -> impl Strategy<Value = Vec<(i32, Q)>> {
    prop::collection::vec((-2i32..=2, nonzero()), 1..3)
}

fn family(terms: &[Vec<(i32, Q)>], c: &Q) -> Family<Q> {
    let lambda = std::array::from_fn(|i| {
        let t = terms[i].iter().map(|(e, a)| (vec![*e], a * scale(c, *e))).collect();
        MultiPoly::from_terms(&["t"], t).unwrap()
    });
    Family { lambda }
}

fn scale(c: &Q, e: i32) -> Q {
    if e >= 0 { c.pow_u(e as u32) } else { Q::one() / c.pow_u((-e) as u32) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn wps_equality_is_an_equivalence(p in point(), s in nonzero(), t in nonzero(), q in point()) {
        let ps = p.rescale(&s);
        let pst = ps.rescale(&t);
        prop_assert!(wps_equal(&p, &p).unwrap());
        prop_assert!(wps_equal(&p, &ps).unwrap() && wps_equal(&ps, &p).unwrap());
        prop_assert!(wps_equal(&ps, &pst).unwrap() && wps_equal(&p, &pst).unwrap());
        prop_assert_eq!(wps_equal(&p, &q).unwrap(), wps_equal(&q, &p).unwrap());
        prop_assert_eq!(wps_equal(&p, &q).unwrap(), wps_equal(&pst, &q.rescale(&s)).unwrap());
    }

    #[test]
    fn limit_ignores_rescaling_the_parameter(terms in prop::collection::vec(laurent(), 5), c in nonzero()) {
        let base = family(&terms, &Q::one());
        let moved = family(&terms, &c);
        prop_assume!(base.lambda.iter().all(|l| !l.is_zero()));
        let (a, b) = match (weighted_limit(&base), weighted_limit(&moved)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(_), Err(_)) => return Ok(()),
            _ => return Err(TestCaseError::fail("only one limit exists")),
        };
        prop_assert_eq!(&a.e, &b.e);
        let (pa, pb) = (constant_point(&a.point).unwrap(), constant_point(&b.point).unwrap());
        prop_assert!(wps_equal(&pa, &pb).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn eckardt_points_detected_by_the_tritangent_divisor(l in prop::array::uniform5(-6i64..=6)) {
        prop_assume!(l.iter().all(|x| *x != 0));
        let lambda = l.map(Q::from_i64);
        let s = SylvesterSurface::new(lambda.clone()).unwrap();
        let p = invariants_point(&lambda).unwrap();
        let f = tritangent_polynomial().unwrap().f.extend_vars(&INVARIANTS);
        let named: Vec<(&str, Q)> = INVARIANTS.iter().copied().zip(p.coords.iter().cloned()).collect();
        let value = f.evaluate_named(&named).unwrap();
        let count = eckardt_data(&s).unwrap().count;
        prop_assert_eq!(count == 0, !Ring::is_zero(&value), "lambda {:?}", l);
    }
}
