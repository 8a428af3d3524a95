use negbound_core::lattice::blow_up_n;
use negbound_core::{
    blow_up, make_hirzebruch, make_projective_plane, make_ruled, rat, DivisorClass, Rational,
    SurfaceModel,
};
use num_traits::Zero;
use proptest::prelude::*;

fn builtin() -> impl Strategy<Value = SurfaceModel> {
    prop_oneof![
        Just(make_projective_plane()),
        (0i64..8).prop_map(|e| make_hirzebruch(e).unwrap()),
        (1i64..5, 0i64..6).prop_map(|(g, k)| make_ruled(g, 2 - 3 * g - k).unwrap()),
    ]
}

fn blown_up() -> impl Strategy<Value = SurfaceModel> {
    (builtin(), 0u32..9).prop_map(|(s, n)| blow_up_n(&s, n))
}

fn rational_vec(len: usize) -> impl Strategy<Value = DivisorClass> {
    proptest::collection::vec((-20i64..20, 1i64..7), len).prop_map(|v| {
        DivisorClass::new(
            v.into_iter()
                .map(|(p, q)| Rational::new(p.into(), q.into()))
                .collect(),
        )
    })
}

fn surface_and_three(
) -> impl Strategy<Value = (SurfaceModel, DivisorClass, DivisorClass, DivisorClass)> {
    blown_up().prop_flat_map(|s| {
        let r = s.rank();
        (Just(s), rational_vec(r), rational_vec(r), rational_vec(r))
    })
}

proptest! {
    #[test]
    fn pairing_is_bilinear_and_symmetric((s, a, b, c) in surface_and_three()) {
        let ab_c = s.intersect(&(&a + &b), &c).unwrap();
        prop_assert_eq!(ab_c, s.intersect(&a, &c).unwrap() + s.intersect(&b, &c).unwrap());
        prop_assert_eq!(s.intersect(&a, &b).unwrap(), s.intersect(&b, &a).unwrap());
        let k = Rational::new(3.into(), 7.into());
        prop_assert_eq!(s.intersect(&a.scale(&k), &b).unwrap(), k * s.intersect(&a, &b).unwrap());
    }

    #[test]
    fn noether_survives_blow_up_chains(s in builtin(), chain in proptest::collection::vec(1u32..4, 0..6)) {
        let mut cur = s;
        prop_assert!(cur.noether_defect().is_zero());
        for k in chain {
            let next = blow_up(&cur, k).unwrap();
            prop_assert_eq!(next.k_squared(), cur.k_squared() - rat(i64::from(k)));
            prop_assert_eq!(next.c2(), cur.c2() + i64::from(k));
            prop_assert_eq!(next.chi(), cur.chi());
            prop_assert!(next.noether_defect().is_zero());
            cur = next;
        }
    }

    #[test]
    fn blow_ups_compose(s in builtin(), j in 1u32..5, k in 1u32..5) {
        let twice = blow_up(&blow_up(&s, j).unwrap(), k).unwrap();
        let once = blow_up(&s, j + k).unwrap();
        prop_assert_eq!(twice.lattice(), once.lattice());
        prop_assert_eq!(twice.canonical(), once.canonical());
        prop_assert_eq!(twice.polarization(), once.polarization());
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn builtins_are_polarized_and_hyperbolic(s in blown_up()) {
        prop_assert!(s.a0() > rat(0));
        prop_assert!(s.polarization_square() > rat(0));
        prop_assert!(s.lattice().is_hyperbolic());
        // H pulls back from the base, so it is orthogonal to every E_i.
        for i in 1..=s.n_blowups() as usize {
            prop_assert_eq!(s.intersect(s.polarization(), &s.exceptional(i).unwrap()).unwrap(), rat(0));
        }
    }
}
