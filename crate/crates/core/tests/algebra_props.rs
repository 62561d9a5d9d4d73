use ltors_core::algebra::{
    arith, Field, FiniteField, GaloisField, Poly, PolyRing, PrimeField, QuadExtField, RationalFunction,
    RationalFunctionField,
};
use proptest::prelude::*;

fn axioms<F: Field>(k: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(k.add(a, b), k.add(b, a));
    prop_assert_eq!(k.mul(a, b), k.mul(b, a));
    prop_assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
    prop_assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
    prop_assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
    prop_assert_eq!(k.add(a, &k.zero()), a.clone());
    prop_assert_eq!(k.mul(a, &k.one()), a.clone());
    prop_assert!(k.is_zero(&k.add(a, &k.neg(a))));
    prop_assert_eq!(k.add(&k.sub(a, b), b), a.clone());
    if k.is_zero(a) {
        prop_assert!(k.inv(a).is_err());
    } else {
        prop_assert!(k.is_one(&k.mul(a, &k.inv(a).unwrap())));
        prop_assert_eq!(k.mul(&k.div(b, a).unwrap(), a), b.clone());
    }
    prop_assert_eq!(k.pow(a, 3), k.mul(a, &k.square(a)));
    Ok(())
}

fn finite_axioms<F: FiniteField>(k: &F, i: u64, j: u64, l: u64) -> Result<(), TestCaseError> {
    let n = k.size();
    let (a, b, c) = (k.element(i % n), k.element(j % n), k.element(l % n));
    prop_assert_eq!(k.index(&a), i % n);
    axioms(k, &a, &b, &c)
}

fn ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..7, 0..len)
}

fn rational<F: Field>(k: &RationalFunctionField<F>, num: &[i64], den: &[i64]) -> RationalFunction<F::Elem> {
    let r = k.ring();
    let d = r.from_ints(den);
    let d = if d.is_zero() { r.one() } else { d };
    k.from_parts(r.from_ints(num), d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn prime_field_axioms(i in any::<u64>(), j in any::<u64>(), l in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7, 13, 101, 65_521])) {
        finite_axioms(&PrimeField::new(p).unwrap(), i, j, l)?;
    }

    #[test]
    fn extension_field_axioms(i in any::<u64>(), j in any::<u64>(), l in any::<u64>(), q in prop::sample::select(vec![4u64, 8, 9, 25, 27, 49, 1024, 2187, 1 << 22])) {
        finite_axioms(&GaloisField::with_order(q).unwrap(), i, j, l)?;
    }

    #[test]
    fn rational_function_axioms(
        p in prop::sample::select(vec![2u64, 3, 5, 13]),
        parts in prop::collection::vec((ints(4), ints(3)), 3),
    ) {
        let k = RationalFunctionField::new(PrimeField::new(p).unwrap());
        let v: Vec<_> = parts.iter().map(|(n, d)| rational(&k, n, d)).collect();
        axioms(&k, &v[0], &v[1], &v[2])?;
    }

    #[test]
    fn quadratic_extension_axioms(
        p in prop::sample::select(vec![2u64, 3, 5]),
        parts in prop::collection::vec((ints(3), ints(2), ints(3), ints(2)), 3),
    ) {
        let k = QuadExtField::x1_11(PrimeField::new(p).unwrap());
        let rf = k.base();
        let v: Vec<_> = parts
            .iter()
            .map(|(an, ad, bn, bd)| k.new_elem(rational(rf, an, ad), rational(rf, bn, bd)))
            .collect();
        axioms(&k, &v[0], &v[1], &v[2])?;
    }

    #[test]
    fn rational_normal_form_is_idempotent_and_unique(
        p in prop::sample::select(vec![3u64, 5, 7]),
        num in ints(5),
        den in ints(4),
        common in prop::collection::vec(-3i64..4, 1..3),
        scale in 1i64..7,
    ) {
        let k = RationalFunctionField::new(PrimeField::new(p).unwrap());
        let r = k.ring();
        let x = rational(&k, &num, &den);
        prop_assert_eq!(k.from_parts(x.num().clone(), x.den().clone()).unwrap(), x.clone());
        prop_assert!(x.den().leading().is_some_and(|l| *l == 1));
        prop_assert!(r.is_constant(&r.gcd(x.num(), x.den())) || x.num().is_zero());
        // scaling numerator and denominator by a common factor changes nothing
        let c = r.scale(&r.field().from_int(scale), &r.from_ints(&common));
        prop_assume!(!c.is_zero());
        let d = r.from_ints(&den);
        let d = if d.is_zero() { r.one() } else { d };
        let y = k.from_parts(r.mul(&r.from_ints(&num), &c), r.mul(&d, &c)).unwrap();
        prop_assert_eq!(y, x);
    }

    #[test]
    fn polynomial_division_law(p in prop::sample::select(vec![2u64, 5, 11]), a in ints(8), b in ints(5)) {
        let r = PolyRing::new(PrimeField::new(p).unwrap());
        let (a, b): (Poly<u64>, Poly<u64>) = (r.from_ints(&a), r.from_ints(&b));
        prop_assume!(!b.is_zero());
        let (q, rem) = r.div_rem(&a, &b).unwrap();
        prop_assert_eq!(r.add(&r.mul(&q, &b), &rem), a.clone());
        prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
        let g = r.gcd(&a, &b);
        prop_assert!(r.rem(&a, &g).unwrap().is_zero() && r.rem(&b, &g).unwrap().is_zero());
    }

    #[test]
    fn mult_order_is_minimal(q in 2u64..500, ell in prop::sample::select(vec![3u64, 7, 11, 13, 97, 101])) {
        prop_assume!(q % ell != 0);
        let f = arith::mult_order(q, ell).unwrap();
        prop_assert_eq!(arith::mod_pow(q, f, ell), 1);
        prop_assert_eq!((ell - 1) % f, 0);
        for g in 1..f {
            prop_assert_ne!(arith::mod_pow(q, g, ell), 1);
        }
    }
}

#[test]
fn frobenius_is_additive_and_multiplicative() {
    for q in [8u64, 9, 25, 49, 81] {
        let k = GaloisField::with_order(q).unwrap();
        let p = k.prime();
        for a in k.elements().step_by(3) {
            for b in k.elements().step_by(5) {
                assert_eq!(k.pow(&k.add(&a, &b), p), k.add(&k.pow(&a, p), &k.pow(&b, p)));
                assert_eq!(k.pow(&k.mul(&a, &b), p), k.mul(&k.pow(&a, p), &k.pow(&b, p)));
            }
        }
        // x^q = x on the whole field
        assert!(k.elements().all(|a| k.pow(&a, q) == a));
    }
}
