use hessk3_core::curves::{
    build_configuration, c_class, eckardt_routes, eckardt_sublattice, nodal_sublattice, ns10, ConfigTag, Configuration,
    CurveLabel, EckardtCase,
};
use hessk3_core::lattice::{discriminant_data, forms_isomorphic};
use hessk3_core::linalg::rank;
use num_bigint::BigInt;
use proptest::prelude::*;

fn permutation() -> impl Strategy<Value = [u8; 5]> {
    Just([0u8, 1, 2, 3, 4]).prop_shuffle()
}

fn equivariant(cfg: &Configuration, p: &[u8; 5]) -> bool {
    cfg.curves.iter().all(|a| {
        let pa = a.permuted(p);
        cfg.curves.iter().all(|b| cfg.intersection(&pa, &b.permuted(p)).ok() == cfg.intersection(a, b).ok())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn general_configuration_is_s5_equivariant(p in permutation()) {
        let cfg = build_configuration(&ConfigTag::Gen).unwrap();
        prop_assert!(equivariant(&cfg, &p));
    }

    #[test]
    fn clebsch_configuration_is_s5_equivariant(p in permutation()) {
        let cfg = build_configuration(&ConfigTag::Clebsch).unwrap();
        prop_assert!(equivariant(&cfg, &p));
    }
}

#[test]
fn nodal_lattices_grow_with_the_nodes() {
    for k in 1..=4u8 {
        let s = nodal_sublattice(k).unwrap();
        assert_eq!(s.rank(), 16 + k as usize);
        assert_eq!(s.disc().magnitude(), &(BigInt::from(12) << (4 - k as usize)).magnitude().clone());
        let cfg = build_configuration(&ConfigTag::Nodal(k)).unwrap();
        assert_eq!(rank(&cfg.gram), 16 + k as usize, "nodal{k}");
    }
}

#[test]
fn clebsch_classes_live_in_ns10() {
    let ns = ns10();
    assert_eq!(ns.lattice().rank(), 20);
    assert_eq!(ns.lattice().det(), BigInt::from(-15));
    let cfg = build_configuration(&ConfigTag::Clebsch).unwrap();
    for (i, j) in [(0, 1), (1, 2), (3, 4), (0, 4)] {
        let v = c_class(i, j, &cfg).unwrap();
        assert_eq!(cfg.ambient().norm(&v), BigInt::from(-4), "c{i}{j}");
        assert!(ns.coords(&v).is_ok());
    }
}

#[test]
fn alternative_eckardt_routes_agree() {
    for case in [EckardtCase::One, EckardtCase::Three] {
        assert_eq!(eckardt_routes(case).len(), 2);
        let a = eckardt_sublattice(case, 0).unwrap();
        let b = eckardt_sublattice(case, 1).unwrap();
        assert_eq!(a.disc(), b.disc());
        let (fa, fb) = (discriminant_data(&a.lattice).unwrap().1, discriminant_data(&b.lattice).unwrap().1);
        assert!(forms_isomorphic(&fa, &fb, 1).unwrap(), "{case}");
    }
    assert!(eckardt_sublattice(EckardtCase::Six, 1).is_err());
}

#[test]
fn configurations_round_trip_through_json() {
    for tag in ["gen", "clebsch", "cayley", "x3n4", "x1n6", "ns2_square", "ns1_cube"] {
        let cfg = build_configuration(&tag.parse().unwrap()).unwrap();
        let back = Configuration::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg, "{tag}");
    }
}

#[test]
fn labels_are_fixed_by_the_identity() {
    let cfg = build_configuration(&ConfigTag::Clebsch).unwrap();
    let id = [0, 1, 2, 3, 4];
    assert!(cfg.curves.iter().all(|c| c.permuted(&id) == *c));
    assert_eq!(CurveLabel::c_line(1, 2, 0), CurveLabel::c_line(0, 1, 2));
}
