use super::{AlgebraError, Field, Poly, PolyRing};

/// An element `num/den` of `k(t)` in canonical form: `den` is monic and
/// coprime to `num`, and zero is `0/1`. Canonical forms are unique, so the
/// derived equality is equality of functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<E> {
    num: Poly<E>,
    den: Poly<E>,
}

impl<E> RationalFunction<E> {
    pub fn num(&self) -> &Poly<E> {
        &self.num
    }

    pub fn den(&self) -> &Poly<E> {
        &self.den
    }
}

/// The rational function field `k(t)` over a base field `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunctionField<F: Field> {
    ring: PolyRing<F>,
}

type Rf<F> = RationalFunction<<F as Field>::Elem>;

impl<F: Field> RationalFunctionField<F> {
    pub fn new(base: F) -> Self {
        Self { ring: PolyRing::new(base) }
    }

    pub fn base(&self) -> &F {
        self.ring.field()
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    /// The transcendental `t`.
    pub fn t(&self) -> Rf<F> {
        self.from_poly(self.ring.x())
    }

    pub fn constant(&self, c: F::Elem) -> Rf<F> {
        self.from_poly(self.ring.constant(c))
    }

    pub fn from_poly(&self, p: Poly<F::Elem>) -> Rf<F> {
        RationalFunction { num: p, den: self.ring.one() }
    }

    /// `num/den` reduced to canonical form.
    pub fn from_parts(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Result<Rf<F>, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let g = self.ring.gcd(&num, &den);
        let num = self.ring.div_exact(&num, &g)?;
        let den = self.ring.div_exact(&den, &g)?;
        Ok(self.make_monic(num, den))
    }

    fn make_monic(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Rf<F> {
        if num.is_zero() {
            return RationalFunction { num, den: self.ring.one() };
        }
        let f = self.base();
        let lead = den.leading().expect("denominator is nonzero");
        if f.is_one(lead) {
            return RationalFunction { num, den };
        }
        let inv = f.inv(lead).expect("leading coefficient is nonzero");
        RationalFunction { num: self.ring.scale(&inv, &num), den: self.ring.scale(&inv, &den) }
    }

    /// True iff `x` lies in the constant field `k`.
    pub fn is_constant(&self, x: &Rf<F>) -> bool {
        self.ring.is_constant(&x.num) && self.ring.is_constant(&x.den)
    }

    /// The constant value of `x`, if it is constant.
    pub fn as_constant(&self, x: &Rf<F>) -> Option<F::Elem> {
        if !self.is_constant(x) {
            return None;
        }
        Some(x.num.coeff(0).cloned().unwrap_or_else(|| self.base().zero()))
    }

    /// Evaluates a polynomial with integer coefficients (low-to-high) at `x`.
    pub fn eval_int_poly(&self, coeffs: &[i64], x: &Rf<F>) -> Rf<F> {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, x), &self.from_int(c)))
    }
}

impl<F: Field> Field for RationalFunctionField<F> {
    type Elem = RationalFunction<F::Elem>;

    fn zero(&self) -> Rf<F> {
        self.from_poly(self.ring.zero())
    }

    fn one(&self) -> Rf<F> {
        self.from_poly(self.ring.one())
    }

    fn from_int(&self, n: i64) -> Rf<F> {
        self.constant(self.base().from_int(n))
    }

    fn add(&self, a: &Rf<F>, b: &Rf<F>) -> Rf<F> {
        let r = &self.ring;
        if a.den == b.den {
            let num = r.add(&a.num, &b.num);
            return self.from_parts(num, a.den.clone()).expect("denominator is nonzero");
        }
        let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        let den = r.mul(&a.den, &b.den);
        self.from_parts(num, den).expect("denominator is nonzero")
    }

    fn neg(&self, a: &Rf<F>) -> Rf<F> {
        RationalFunction { num: self.ring.neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &Rf<F>, b: &Rf<F>) -> Rf<F> {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        // cross-cancel so the product of canonical inputs is already reduced
        let r = &self.ring;
        let g1 = r.gcd(&a.num, &b.den);
        let g2 = r.gcd(&b.num, &a.den);
        let n1 = r.div_exact(&a.num, &g1).expect("gcd divides");
        let d2 = r.div_exact(&b.den, &g1).expect("gcd divides");
        let n2 = r.div_exact(&b.num, &g2).expect("gcd divides");
        let d1 = r.div_exact(&a.den, &g2).expect("gcd divides");
        self.make_monic(r.mul(&n1, &n2), r.mul(&d1, &d2))
    }

    fn inv(&self, a: &Rf<F>) -> Result<Rf<F>, AlgebraError> {
        if a.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.make_monic(a.den.clone(), a.num.clone()))
    }

    fn is_zero(&self, a: &Rf<F>) -> bool {
        a.num.is_zero()
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn contains(&self, a: &Rf<F>) -> bool {
        let f = self.base();
        let coeffs_ok = a.num.coeffs().iter().chain(a.den.coeffs()).all(|c| f.contains(c));
        let trimmed = |p: &Poly<F::Elem>| p.leading().is_none_or(|l| !f.is_zero(l));
        coeffs_ok
            && trimmed(&a.num)
            && trimmed(&a.den)
            && a.den.leading().is_some_and(|l| f.is_one(l))
            && self.ring.gcd(&a.num, &a.den) == self.ring.one()
    }

    fn format(&self, a: &Rf<F>) -> String {
        let num = self.ring.format(&a.num, "t");
        if self.ring.is_constant(&a.den) {
            return num;
        }
        format!("({num})/({})", self.ring.format(&a.den, "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    fn field(p: u64) -> RationalFunctionField<PrimeField> {
        RationalFunctionField::new(PrimeField::new(p).unwrap())
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let k = field(5);
        let t = k.t();
        let t1 = k.add(&t, &k.one());
        let x = k.div(&t, &t1).unwrap();
        let y = k.div(&t1, &t).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
    }

    #[test]
    fn canonical_form_is_structural() {
        let k = field(7);
        let r = k.ring();
        // (2t^2 - 2)/(4t - 4) = (t + 1)/2 = 4t + 4
        let x = k.from_parts(r.from_ints(&[-2, 0, 2]), r.from_ints(&[-4, 4])).unwrap();
        assert_eq!(x, k.from_poly(r.from_ints(&[4, 4])));
        assert!(k.contains(&x));
        assert_eq!(k.from_parts(r.one(), r.zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn constancy() {
        let k = field(5);
        assert!(k.is_constant(&k.from_int(3)));
        let t = k.t();
        let x = k.div(&t, &k.add(&t, &k.one())).unwrap();
        assert!(!k.is_constant(&x));
        assert_eq!(k.as_constant(&k.from_int(8)), Some(3));
    }

    #[test]
    fn format_rational() {
        let k = field(5);
        let t = k.t();
        let x = k.div(&k.one(), &k.add(&t, &k.from_int(2))).unwrap();
        assert_eq!(k.format(&x), "(1)/(t + 2)");
    }
}
