//! Long Weierstrass curves
//! `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over any [`Field`].
//!
//! Points are affine with a distinguished point at infinity. The group law is
//! the general chord-and-tangent law, so `a1` and `a3` may be nonzero and the
//! characteristic may be 2 or 3.

mod division;
mod enumerate;

use crate::algebra::{AlgebraError, Field};

pub use division::{division_polynomial, division_polynomials, two_torsion_cubic, DivisionPolynomial, MAX_DIVISION_INDEX};
pub use enumerate::{
    affine_points, count_points, enumerate_points, group_structure, group_structure_by_orders, order_dividing, torsion_count, GroupStructure,
    PointSet, MAX_ENUMERATION_SIZE,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("singular Weierstrass equation: the discriminant vanishes")]
    Singular,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("division polynomial index {0} is outside 1..={MAX_DIVISION_INDEX}")]
    IndexOutOfRange(u64),
    #[error("field of size {0} is too large to enumerate")]
    FieldTooLarge(u64),
    #[error("order search bound {0} exceeds 10000")]
    BoundTooLarge(u64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint<E> {
    Infinity,
    Affine { x: E, y: E },
}

impl<E> CurvePoint<E> {
    pub fn affine(x: E, y: E) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&E> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&E> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { y, .. } => Some(y),
        }
    }
}

/// Standard quantities attached to a Weierstrass equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveInvariants<E> {
    pub b2: E,
    pub b4: E,
    pub b6: E,
    pub b8: E,
    pub c4: E,
    pub c6: E,
    pub delta: E,
    /// `c4^3 / delta`; `None` only for singular equations.
    pub j: Option<E>,
}

/// The universal integer-coefficient formulas for `b2..b8`, `c4`, `c6`, `delta`, `j`.
pub fn compute_invariants<F: Field>(field: &F, a: &[F::Elem; 5]) -> CurveInvariants<F::Elem> {
    let [a1, a2, a3, a4, a6] = a;
    let k = |n: i64, x: &F::Elem| field.scale(n, x);
    let m = |x: &F::Elem, y: &F::Elem| field.mul(x, y);
    let add = |x: &F::Elem, y: &F::Elem| field.add(x, y);
    let sub = |x: &F::Elem, y: &F::Elem| field.sub(x, y);

    let b2 = add(&m(a1, a1), &k(4, a2));
    let b4 = add(&k(2, a4), &m(a1, a3));
    let b6 = add(&m(a3, a3), &k(4, a6));
    // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
    let b8 = sub(
        &add(&add(&m(&m(a1, a1), a6), &k(4, &m(a2, a6))), &m(a2, &m(a3, a3))),
        &add(&m(&m(a1, a3), a4), &m(a4, a4)),
    );
    let c4 = sub(&m(&b2, &b2), &k(24, &b4));
    let b2_cubed = m(&b2, &m(&b2, &b2));
    let c6 = sub(&add(&field.neg(&b2_cubed), &k(36, &m(&b2, &b4))), &k(216, &b6));
    // delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    let delta = sub(
        &k(9, &m(&m(&b2, &b4), &b6)),
        &add(
            &add(&m(&m(&b2, &b2), &b8), &k(8, &m(&b4, &m(&b4, &b4)))),
            &k(27, &m(&b6, &b6)),
        ),
    );
    let j = field.div(&m(&c4, &m(&c4, &c4)), &delta).ok();
    CurveInvariants { b2, b4, b6, b8, c4, c6, delta, j }
}

#[derive(Debug, Clone)]
pub struct WeierstrassCurve<F: Field> {
    field: F,
    a: [F::Elem; 5],
    invariants: CurveInvariants<F::Elem>,
}

impl<F: Field> WeierstrassCurve<F> {
    /// Coefficients in the order `[a1, a2, a3, a4, a6]`. Rejects `delta = 0`.
    pub fn new(field: F, a: [F::Elem; 5]) -> Result<Self, CurveError> {
        for c in &a {
            field.check(c)?;
        }
        let invariants = compute_invariants(&field, &a);
        if field.is_zero(&invariants.delta) {
            return Err(CurveError::Singular);
        }
        Ok(Self { field, a, invariants })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(field: F, a: [i64; 5]) -> Result<Self, CurveError> {
        let a = a.map(|c| field.from_int(c));
        Self::new(field, a)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coefficients(&self) -> &[F::Elem; 5] {
        &self.a
    }

    pub fn a1(&self) -> &F::Elem {
        &self.a[0]
    }

    pub fn a2(&self) -> &F::Elem {
        &self.a[1]
    }

    pub fn a3(&self) -> &F::Elem {
        &self.a[2]
    }

    pub fn a4(&self) -> &F::Elem {
        &self.a[3]
    }

    pub fn a6(&self) -> &F::Elem {
        &self.a[4]
    }

    pub fn invariants(&self) -> &CurveInvariants<F::Elem> {
        &self.invariants
    }

    pub fn j_invariant(&self) -> &F::Elem {
        self.invariants.j.as_ref().expect("nonsingular curves have a j-invariant")
    }

    /// Characteristic 2 or 3: the curve is valid but short forms are unavailable.
    pub fn is_small_characteristic(&self) -> bool {
        matches!(self.field.characteristic(), 2 | 3)
    }

    /// Base change along a field homomorphism.
    pub fn base_change<G: Field>(
        &self,
        target: G,
        map: impl Fn(&F::Elem) -> G::Elem,
    ) -> Result<WeierstrassCurve<G>, CurveError> {
        let a = [map(&self.a[0]), map(&self.a[1]), map(&self.a[2]), map(&self.a[3]), map(&self.a[4])];
        WeierstrassCurve::new(target, a)
    }

    /// Left minus right side of the Weierstrass equation at `(x, y)`.
    fn equation_residual(&self, x: &F::Elem, y: &F::Elem) -> F::Elem {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = f.mul(y, &f.add(&f.add(y, &f.mul(a1, x)), a3));
        let rhs = f.add(&f.mul(x, &f.add(&f.mul(x, &f.add(x, a2)), a4)), a6);
        f.sub(&lhs, &rhs)
    }

    pub fn is_on_curve(&self, p: &CurvePoint<F::Elem>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                self.field.contains(x)
                    && self.field.contains(y)
                    && self.field.is_zero(&self.equation_residual(x, y))
            }
        }
    }

    pub fn point(&self, x: F::Elem, y: F::Elem) -> Result<CurvePoint<F::Elem>, CurveError> {
        let p = CurvePoint::affine(x, y);
        self.ensure_on_curve(&p)?;
        Ok(p)
    }

    fn ensure_on_curve(&self, p: &CurvePoint<F::Elem>) -> Result<(), CurveError> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            Err(CurveError::PointNotOnCurve)
        }
    }

    /// `-(x, y) = (x, -y - a1 x - a3)`.
    pub fn neg(&self, p: &CurvePoint<F::Elem>) -> CurvePoint<F::Elem> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let f = &self.field;
                let ny = f.sub(&f.neg(y), &f.add(&f.mul(&self.a[0], x), &self.a[2]));
                CurvePoint::affine(x.clone(), ny)
            }
        }
    }

    /// `P + Q`; both points are checked to lie on the curve.
    pub fn add(&self, p: &CurvePoint<F::Elem>, q: &CurvePoint<F::Elem>) -> Result<CurvePoint<F::Elem>, CurveError> {
        self.ensure_on_curve(p)?;
        self.ensure_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    /// Group law without membership checks.
    pub fn add_unchecked(&self, p: &CurvePoint<F::Elem>, q: &CurvePoint<F::Elem>) -> CurvePoint<F::Elem> {
        let f = &self.field;
        let [a1, a2, a3, a4, _] = &self.a;
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            // vertical tangent or Q = -P
            let denom = f.add(&f.add(y1, y2), &f.add(&f.mul(a1, x2), a3));
            if f.is_zero(&denom) {
                return CurvePoint::Infinity;
            }
            // tangent slope (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3)
            let num = f.sub(
                &f.add(&f.add(&f.scale(3, &f.square(x1)), &f.scale(2, &f.mul(a2, x1))), a4),
                &f.mul(a1, y1),
            );
            f.div(&num, &denom).expect("denominator checked nonzero")
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("distinct x-coordinates")
        };
        let nu = f.sub(y1, &f.mul(&lambda, x1));
        let x3 = f.sub(&f.sub(&f.sub(&f.add(&f.square(&lambda), &f.mul(a1, &lambda)), a2), x1), x2);
        let y3 = f.sub(&f.neg(&f.mul(&f.add(&lambda, a1), &x3)), &f.add(&nu, a3));
        CurvePoint::affine(x3, y3)
    }

    pub fn double(&self, p: &CurvePoint<F::Elem>) -> CurvePoint<F::Elem> {
        self.add_unchecked(p, p)
    }

    /// `[n]P` by double-and-add; `[0]P` is the point at infinity.
    pub fn scalar_mul(&self, n: u64, p: &CurvePoint<F::Elem>) -> Result<CurvePoint<F::Elem>, CurveError> {
        self.ensure_on_curve(p)?;
        Ok(self.scalar_mul_unchecked(n, p))
    }

    pub fn scalar_mul_unchecked(&self, mut n: u64, p: &CurvePoint<F::Elem>) -> CurvePoint<F::Elem> {
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Least `n >= 1` with `[n]P = O`, or `None` if no such `n <= bound`.
    pub fn point_order(&self, p: &CurvePoint<F::Elem>, bound: u64) -> Result<Option<u64>, CurveError> {
        if bound > 10_000 {
            return Err(CurveError::BoundTooLarge(bound));
        }
        self.ensure_on_curve(p)?;
        let mut multiple = p.clone();
        for n in 1..=bound {
            if multiple.is_infinity() {
                return Ok(Some(n));
            }
            multiple = self.add_unchecked(&multiple, p);
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaloisField, PrimeField, RationalFunctionField};

    fn seven_family_t(p: u64) -> WeierstrassCurve<RationalFunctionField<PrimeField>> {
        let k = RationalFunctionField::new(PrimeField::new(p).unwrap());
        let f = k.t();
        let fm1 = k.sub(&f, &k.one());
        let a1 = k.sub(&k.one(), &k.mul(&f, &fm1));
        let a2 = k.neg(&k.mul(&k.square(&f), &fm1));
        WeierstrassCurve::new(k.clone(), [a1, a2.clone(), a2, k.zero(), k.zero()]).unwrap()
    }

    #[test]
    fn j_of_x3_plus_1_is_zero() {
        let e = WeierstrassCurve::from_ints(GaloisField::new(5, 1).unwrap(), [0, 0, 0, 0, 1]).unwrap();
        assert_eq!(e.invariants().c4, 0);
        assert_eq!(*e.j_invariant(), 0);
    }

    #[test]
    fn singular_rejected() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(WeierstrassCurve::from_ints(f, [0, 0, 0, 0, 0]).unwrap_err(), CurveError::Singular);
        // y^2 = x^3 - 3x + 2 = (x-1)^2 (x+2)
        assert_eq!(WeierstrassCurve::from_ints(f, [0, 0, 0, -3, 2]).unwrap_err(), CurveError::Singular);
    }

    #[test]
    fn identity_and_inverse() {
        let e = seven_family_t(5);
        let p = e.point(e.field().zero(), e.field().zero()).unwrap();
        assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), CurvePoint::Infinity);
        assert_eq!(e.scalar_mul(1, &p).unwrap(), p);
        assert_eq!(e.scalar_mul(0, &p).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn doubling_stays_on_curve() {
        let e = seven_family_t(5);
        let k = e.field().clone();
        let p = e.point(k.zero(), k.zero()).unwrap();
        let q = e.add(&p, &p).unwrap();
        assert!(e.is_on_curve(&q));
        // Tate normal form with b = f^2 (f - 1), c = f (f - 1): 2(0,0) = (b, bc)
        let t = k.t();
        let tm1 = k.sub(&t, &k.one());
        let x2 = k.mul(&k.square(&t), &tm1);
        assert_eq!(q.x(), Some(&x2));
        assert_eq!(q.y(), Some(&k.mul(&x2, &k.mul(&t, &tm1))));
    }

    #[test]
    fn order_seven_over_f5_t() {
        let e = seven_family_t(5);
        let k = e.field().clone();
        let p = CurvePoint::affine(k.zero(), k.zero());
        assert_eq!(e.scalar_mul(7, &p).unwrap(), CurvePoint::Infinity);
        assert_eq!(e.point_order(&p, 20).unwrap(), Some(7));
        assert_eq!(e.point_order(&p, 6).unwrap(), None);
        assert_eq!(e.point_order(&CurvePoint::Infinity, 20).unwrap(), Some(1));
        assert_eq!(e.point_order(&p, 20_000), Err(CurveError::BoundTooLarge(20_000)));
    }

    #[test]
    fn off_curve_point_rejected() {
        let e = seven_family_t(5);
        let k = e.field().clone();
        let bad = CurvePoint::affine(k.one(), k.one());
        assert_eq!(e.add(&bad, &CurvePoint::Infinity), Err(CurveError::PointNotOnCurve));
        assert_eq!(e.point(k.one(), k.one()), Err(CurveError::PointNotOnCurve));
    }

    #[test]
    fn universal_identities_hold() {
        let f = GaloisField::new(3, 2).unwrap();
        for a1 in 0..9 {
            for a3 in [0, 4, 7] {
                for a6 in [1, 5] {
                    let Ok(e) = WeierstrassCurve::new(f.clone(), [a1, 2, a3, 1, a6]) else { continue };
                    let inv = e.invariants();
                    let lhs = f.scale(4, &inv.b8);
                    let rhs = f.sub(&f.mul(&inv.b2, &inv.b6), &f.square(&inv.b4));
                    assert_eq!(lhs, rhs);
                    let c = f.sub(&f.pow(&inv.c4, 3), &f.square(&inv.c6));
                    assert_eq!(c, f.scale(1728, &inv.delta));
                }
            }
        }
    }
}
