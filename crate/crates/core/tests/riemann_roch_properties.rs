use negbound_core::lattice::blow_up_n;
use negbound_core::riemann_roch::{arithmetic_genus, chi_of_divisor, self_intersection_via_chi};
use negbound_core::{
    make_hirzebruch, make_projective_plane, make_ruled, rat, DivisorClass, SurfaceModel,
};
use proptest::prelude::*;

fn surface() -> impl Strategy<Value = SurfaceModel> {
    prop_oneof![
        (0u32..9).prop_map(|n| blow_up_n(&make_projective_plane(), n)),
        (0i64..6, 0u32..6).prop_map(|(e, n)| blow_up_n(&make_hirzebruch(e).unwrap(), n)),
        (1i64..4, 0u32..4).prop_map(|(g, n)| blow_up_n(&make_ruled(g, -3 * g).unwrap(), n)),
    ]
}

fn surface_and_class() -> impl Strategy<Value = (SurfaceModel, DivisorClass)> {
    surface().prop_flat_map(|s| {
        let r = s.rank();
        (
            Just(s),
            proptest::collection::vec(-12i64..12, r).prop_map(|v| DivisorClass::from_ints(&v)),
        )
    })
}

proptest! {
    #[test]
    fn rr_identity_recovers_self_intersection((s, c) in surface_and_class(), m in -10i64..=10) {
        prop_assume!(m != 1);
        prop_assert_eq!(self_intersection_via_chi(&s, &c, m).unwrap(), s.intersect(&c, &c).unwrap());
    }

    #[test]
    fn adjunction_round_trip((s, c) in surface_and_class()) {
        let pa = arithmetic_genus(&s, &c).unwrap();
        let kc = s.intersect(s.canonical(), &c).unwrap();
        prop_assert_eq!(s.intersect(&c, &c).unwrap(), rat(2) * pa - rat(2) - kc);
    }

    #[test]
    fn riemann_roch_serre_symmetry((s, d) in surface_and_class()) {
        let residual = s.canonical() - &d;
        prop_assert_eq!(chi_of_divisor(&s, &d).unwrap(), chi_of_divisor(&s, &residual).unwrap());
    }
}
