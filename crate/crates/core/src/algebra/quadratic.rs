use super::{AlgebraError, Field, RationalFunction, RationalFunctionField};

/// `a + b*u` in a quadratic extension of `k(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExtElement<E> {
    pub a: RationalFunction<E>,
    pub b: RationalFunction<E>,
}

/// `k(t)[u]/(u^2 + c1 u + c0)`.
///
/// The only instance exposed is [`QuadExtField::x1_11`], the function field
/// `k(t, u)` with `u^2 + (t^2 + 1)u + t = 0`. That relation is irreducible over
/// `k(t)` in every characteristic: a factorisation would need polynomial roots
/// with product `t` and sum `-(t^2 + 1)`, and no pair of divisors of `t` does it.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadExtField<F: Field> {
    rf: RationalFunctionField<F>,
    c1: RationalFunction<F::Elem>,
    c0: RationalFunction<F::Elem>,
}

type Qe<F> = QuadExtElement<<F as Field>::Elem>;

impl<F: Field> QuadExtField<F> {
    /// `k(t, u)` with `u^2 + (t^2 + 1)u + t = 0`.
    pub fn x1_11(base: F) -> Self {
        let rf = RationalFunctionField::new(base);
        let t = rf.t();
        let c1 = rf.add(&rf.square(&t), &rf.one());
        Self { c1, c0: t, rf }
    }

    pub fn base(&self) -> &RationalFunctionField<F> {
        &self.rf
    }

    /// Coefficients `(c1, c0)` of the defining relation `u^2 + c1 u + c0`.
    pub fn relation(&self) -> (&RationalFunction<F::Elem>, &RationalFunction<F::Elem>) {
        (&self.c1, &self.c0)
    }

    pub fn embed(&self, a: RationalFunction<F::Elem>) -> Qe<F> {
        QuadExtElement { a, b: self.rf.zero() }
    }

    pub fn new_elem(&self, a: RationalFunction<F::Elem>, b: RationalFunction<F::Elem>) -> Qe<F> {
        QuadExtElement { a, b }
    }

    pub fn t(&self) -> Qe<F> {
        self.embed(self.rf.t())
    }

    pub fn u(&self) -> Qe<F> {
        QuadExtElement { a: self.rf.zero(), b: self.rf.one() }
    }

    /// True iff `x` lies in the constant field.
    pub fn is_constant(&self, x: &Qe<F>) -> bool {
        self.rf.is_zero(&x.b) && self.rf.is_constant(&x.a)
    }

    /// `N(a + bu) = a^2 - ab c1 + b^2 c0`.
    pub fn norm(&self, x: &Qe<F>) -> RationalFunction<F::Elem> {
        let k = &self.rf;
        let aa = k.square(&x.a);
        let ab = k.mul(&k.mul(&x.a, &x.b), &self.c1);
        let bb = k.mul(&k.square(&x.b), &self.c0);
        k.add(&k.sub(&aa, &ab), &bb)
    }
}

impl<F: Field> Field for QuadExtField<F> {
    type Elem = QuadExtElement<F::Elem>;

    fn zero(&self) -> Qe<F> {
        self.embed(self.rf.zero())
    }

    fn one(&self) -> Qe<F> {
        self.embed(self.rf.one())
    }

    fn from_int(&self, n: i64) -> Qe<F> {
        self.embed(self.rf.from_int(n))
    }

    fn add(&self, x: &Qe<F>, y: &Qe<F>) -> Qe<F> {
        QuadExtElement { a: self.rf.add(&x.a, &y.a), b: self.rf.add(&x.b, &y.b) }
    }

    fn neg(&self, x: &Qe<F>) -> Qe<F> {
        QuadExtElement { a: self.rf.neg(&x.a), b: self.rf.neg(&x.b) }
    }

    fn sub(&self, x: &Qe<F>, y: &Qe<F>) -> Qe<F> {
        QuadExtElement { a: self.rf.sub(&x.a, &y.a), b: self.rf.sub(&x.b, &y.b) }
    }

    fn mul(&self, x: &Qe<F>, y: &Qe<F>) -> Qe<F> {
        let k = &self.rf;
        if k.is_zero(&x.b) && k.is_zero(&y.b) {
            return self.embed(k.mul(&x.a, &y.a));
        }
        // u^2 = -c1 u - c0
        let ac = k.mul(&x.a, &y.a);
        let bd = k.mul(&x.b, &y.b);
        let cross = k.add(&k.mul(&x.a, &y.b), &k.mul(&x.b, &y.a));
        QuadExtElement {
            a: k.sub(&ac, &k.mul(&bd, &self.c0)),
            b: k.sub(&cross, &k.mul(&bd, &self.c1)),
        }
    }

    fn inv(&self, x: &Qe<F>) -> Result<Qe<F>, AlgebraError> {
        let k = &self.rf;
        if k.is_zero(&x.b) {
            return Ok(self.embed(k.inv(&x.a)?));
        }
        // conjugate of u is -c1 - u
        let n_inv = k.inv(&self.norm(x))?;
        let a = k.mul(&k.sub(&x.a, &k.mul(&x.b, &self.c1)), &n_inv);
        let b = k.neg(&k.mul(&x.b, &n_inv));
        Ok(QuadExtElement { a, b })
    }

    fn is_zero(&self, x: &Qe<F>) -> bool {
        self.rf.is_zero(&x.a) && self.rf.is_zero(&x.b)
    }

    fn characteristic(&self) -> u64 {
        self.rf.characteristic()
    }

    fn contains(&self, x: &Qe<F>) -> bool {
        self.rf.contains(&x.a) && self.rf.contains(&x.b)
    }

    fn format(&self, x: &Qe<F>) -> String {
        if self.rf.is_zero(&x.b) {
            return self.rf.format(&x.a);
        }
        format!("({}) + ({})*u", self.rf.format(&x.a), self.rf.format(&x.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn defining_relation_mod_3() {
        let k = QuadExtField::x1_11(PrimeField::new(3).unwrap());
        let u = k.u();
        let rf = k.base();
        let expected = k.new_elem(rf.neg(&rf.t()), rf.neg(&rf.add(&rf.square(&rf.t()), &rf.one())));
        assert_eq!(k.mul(&u, &u), expected);
        // coefficients mod 3: (2t^2 + 2)u + 2t
        assert_eq!(k.format(&expected), "(2*t) + (2*t^2 + 2)*u");
    }

    #[test]
    fn inverse_of_mixed_element() {
        let k = QuadExtField::x1_11(PrimeField::new(5).unwrap());
        let x = k.add(&k.mul(&k.u(), &k.t()), &k.one());
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
        assert!(!k.is_constant(&x));
        assert!(k.is_constant(&k.from_int(4)));
        assert_eq!(k.inv(&k.zero()), Err(AlgebraError::DivisionByZero));
    }
}
