use ltors_core::algebra::Field;
use ltors_core::curves::CurvePoint;
use ltors_core::families::{
    build_seven, seven_field, verify_eleven, verify_seven_invariants, FamilyElevenSpec, FamilyError, FamilySevenSpec,
};
use proptest::prelude::*;

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn seven_family_closed_forms_hold(p in prop::sample::select(vec![3u64, 5, 13]), num in coeffs(), den in coeffs()) {
        let k = seven_field(p).unwrap();
        let r = k.ring();
        let d = r.from_ints(&den);
        prop_assume!(!d.is_zero());
        let f = k.from_parts(r.from_ints(&num), d).unwrap();
        prop_assume!(!k.is_constant(&f));
        let report = verify_seven_invariants(&FamilySevenSpec { p, f }).unwrap();
        prop_assert!(report.all_hold(), "{:?}", report);
    }
}

#[test]
fn seven_family_point_has_exact_order_seven() {
    let k = seven_field(5).unwrap();
    let e = build_seven(&FamilySevenSpec::identity(5).unwrap()).unwrap();
    let origin = CurvePoint::affine(k.zero(), k.zero());
    for n in 1..7 {
        assert!(!e.scalar_mul(n, &origin).unwrap().is_infinity());
    }
    assert!(e.scalar_mul(7, &origin).unwrap().is_infinity());
}

#[test]
fn eleven_family_small_characteristics() {
    for p in [3u64, 5, 7] {
        for n in [0u32, 1] {
            let r = verify_eleven(&FamilyElevenSpec { p, n }).unwrap();
            assert!(r.order_is_11 && r.j_nonconstant, "p={p} n={n}");
        }
    }
    let r = verify_eleven(&FamilyElevenSpec { p: 3, n: 2 }).unwrap();
    assert!(r.order_is_11 && r.j_nonconstant);
}

#[test]
fn constant_parameters_never_produce_a_curve() {
    let k = seven_field(13).unwrap();
    for c in 0..13 {
        let spec = FamilySevenSpec { p: 13, f: k.from_int(c) };
        assert_eq!(build_seven(&spec).unwrap_err(), FamilyError::ConstantParameter);
    }
}
