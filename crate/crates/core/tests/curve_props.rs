use ltors_core::algebra::{Field, FiniteField, GaloisField, PolyRing, PrimeField, RationalFunctionField};
use ltors_core::curves::{
    affine_points, compute_invariants, division_polynomials, enumerate_points, CurvePoint, WeierstrassCurve,
};
use proptest::prelude::*;

const SMALL_Q: [u64; 13] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49];

/// The first nonsingular curve at or after `seed` in coefficient order.
fn curve_from_seed(q: u64, seed: [u64; 5]) -> WeierstrassCurve<GaloisField> {
    let f = GaloisField::with_order(q).unwrap();
    for shift in 0..q {
        let a = seed.map(|s| f.element((s + shift) % q));
        if let Ok(e) = WeierstrassCurve::new(f.clone(), a) {
            return e;
        }
    }
    // y^2 + y = x^3 (char 2) or y^2 = x^3 - x (otherwise) is always smooth
    let ints = if f.characteristic() == 2 { [0, 0, 1, 0, 0] } else { [0, 0, 0, -1, 0] };
    WeierstrassCurve::from_ints(f, ints).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_law_axioms(q in prop::sample::select(SMALL_Q.to_vec()), seed in any::<[u64; 5]>(), picks in any::<[usize; 3]>()) {
        let e = curve_from_seed(q, seed);
        let pts = affine_points(&e).unwrap();
        let [p, r, s] = picks.map(|i| pts[i % pts.len()].clone());
        let pr = e.add(&p, &r).unwrap();
        prop_assert!(e.is_on_curve(&pr));
        prop_assert_eq!(&pr, &e.add(&r, &p).unwrap());
        prop_assert_eq!(e.add(&pr, &s).unwrap(), e.add(&p, &e.add(&r, &s).unwrap()).unwrap());
        prop_assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), CurvePoint::Infinity);
        prop_assert_eq!(e.double(&p), e.add(&p, &p).unwrap());
        // Lagrange
        prop_assert!(e.scalar_mul(pts.len() as u64, &p).unwrap().is_infinity());
    }

    #[test]
    fn discriminant_identities_over_finite_fields(q in prop::sample::select(SMALL_Q.to_vec()), a in any::<[u64; 5]>()) {
        let f = GaloisField::with_order(q).unwrap();
        let coeffs = a.map(|x| f.element(x % q));
        let inv = compute_invariants(&f, &coeffs);
        let lhs = f.sub(&f.pow(&inv.c4, 3), &f.square(&inv.c6));
        prop_assert_eq!(lhs, f.scale(1728, &inv.delta));
        prop_assert_eq!(f.scale(4, &inv.b8), f.sub(&f.mul(&inv.b2, &inv.b6), &f.square(&inv.b4)));
        prop_assert_eq!(WeierstrassCurve::new(f.clone(), coeffs).is_ok(), !f.is_zero(&inv.delta));
    }

    #[test]
    fn discriminant_identities_over_function_fields(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        a in prop::collection::vec((prop::collection::vec(-4i64..5, 0..3), prop::collection::vec(-4i64..5, 1..3)), 5),
    ) {
        let k = RationalFunctionField::new(PrimeField::new(p).unwrap());
        let r = k.ring();
        let coeffs: Vec<_> = a
            .iter()
            .map(|(n, d)| {
                let d = r.from_ints(d);
                k.from_parts(r.from_ints(n), if d.is_zero() { r.one() } else { d }).unwrap()
            })
            .collect();
        let coeffs: [_; 5] = coeffs.try_into().unwrap();
        let inv = compute_invariants(&k, &coeffs);
        prop_assert_eq!(k.sub(&k.pow(&inv.c4, 3), &k.square(&inv.c6)), k.scale(1728, &inv.delta));
    }

    #[test]
    fn division_polynomial_roots_are_torsion(q in prop::sample::select(SMALL_Q.to_vec()), seed in any::<[u64; 5]>()) {
        let e = curve_from_seed(q, seed);
        let f = e.field();
        let ring = PolyRing::new(f.clone());
        let fs = division_polynomials(&e, 8).unwrap();
        let [a1, _, a3, _, _] = *e.coefficients();
        for p in affine_points(&e).unwrap().iter().skip(1) {
            let (x, y) = (p.x().unwrap(), p.y().unwrap());
            let psi2 = f.add(&f.add(&f.scale(2, y), &f.mul(&a1, x)), &a3);
            for n in 2..=8u64 {
                let mut value = ring.eval(&fs[n as usize], x);
                if n % 2 == 0 {
                    value = f.mul(&value, &psi2);
                }
                prop_assert_eq!(
                    f.is_zero(&value),
                    e.scalar_mul(n, p).unwrap().is_infinity(),
                    "n = {}, point = {:?}", n, p
                );
            }
        }
    }

    #[test]
    fn structure_is_consistent(q in prop::sample::select(SMALL_Q.to_vec()), seed in any::<[u64; 5]>()) {
        let e = curve_from_seed(q, seed);
        let set = enumerate_points(&e).unwrap();
        let s = set.structure;
        prop_assert_eq!(s.order(), set.points.len() as u64);
        prop_assert_eq!(s.d2 % s.d1, 0);
        // Weil pairing: full d1-torsion forces mu_{d1} into F_q
        prop_assert_eq!((q - 1) % s.d1, 0);
        let a = q as i64 + 1 - s.order() as i64;
        prop_assert!(a * a <= 4 * q as i64);
        prop_assert!(set.points.iter().all(|p| e.is_on_curve(p)));
    }
}
