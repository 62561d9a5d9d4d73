//! Arithmetic in `F_q[x, y] / (y^2 + h(x) y - g(x), M(x))`, where `M` cuts out
//! the x-coordinates of the nonzero `ell`-torsion. Frobenius acts on `E[ell]`
//! as the identity after `k` steps iff `x^{q^k} = x` and `y^{q^k} = y` there.

use crate::algebra::{Field, FiniteField, GaloisField, Poly, PolyRing};
use crate::curves::{division_polynomial, two_torsion_cubic, WeierstrassCurve};

use super::ProellError;

type P = Poly<u64>;

struct TorsionRing {
    ring: PolyRing<GaloisField>,
    modulus: P,
    /// `a1 x + a3`
    h: P,
    /// `x^3 + a2 x^2 + a4 x + a6`
    g: P,
    with_y: bool,
}

#[derive(Clone, PartialEq)]
struct Elem {
    a: P,
    b: P,
}

impl TorsionRing {
    fn new(curve: &WeierstrassCurve<GaloisField>, ell: u64) -> Result<Self, ProellError> {
        let ring = PolyRing::new(curve.field().clone());
        let [a1, a2, a3, a4, a6] = *curve.coefficients();
        let (modulus, with_y) = if ell == 2 {
            // y is pinned to -(a1 x + a3)/2 on E[2], so x alone decides
            (ring.monic(&two_torsion_cubic(curve)), false)
        } else {
            (ring.monic(&division_polynomial(curve, ell)?.poly), true)
        };
        let h = ring.from_coeffs(vec![a3, a1]);
        let g = ring.from_coeffs(vec![a6, a4, a2, curve.field().one()]);
        Ok(Self { ring, modulus, h, g, with_y })
    }

    fn reduce(&self, p: &P) -> P {
        self.ring.rem(p, &self.modulus).expect("modulus is nonzero")
    }

    fn mul(&self, u: &Elem, v: &Elem) -> Elem {
        let r = &self.ring;
        let ac = r.mul(&u.a, &v.a);
        if !self.with_y {
            return Elem { a: self.reduce(&ac), b: r.zero() };
        }
        // y^2 = g - h y
        let bd = self.reduce(&r.mul(&u.b, &v.b));
        let a = r.add(&ac, &r.mul(&bd, &self.g));
        let b = r.sub(&r.add(&r.mul(&u.a, &v.b), &r.mul(&u.b, &v.a)), &r.mul(&bd, &self.h));
        Elem { a: self.reduce(&a), b: self.reduce(&b) }
    }

    fn pow(&self, base: &Elem, mut e: u64) -> Elem {
        let mut acc = Elem { a: self.reduce(&self.ring.one()), b: self.ring.zero() };
        let mut base = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

fn modulus_degree(ell: u64) -> u64 {
    if ell == 2 {
        3
    } else {
        (ell * ell - 1) / 2
    }
}

/// Rough number of base-field multiplications used by [`frobenius_power_is_identity`].
pub(super) fn scalar_test_cost(q: u64, ell: u64, k: u64) -> u64 {
    let d = modulus_degree(ell);
    let bits = 64 - q.leading_zeros() as u64;
    k.saturating_mul(4 * bits).saturating_mul(8 * d * d)
}

/// Whether the `q^k`-power Frobenius fixes every point of `E[ell]`.
pub(super) fn frobenius_power_is_identity(
    curve: &WeierstrassCurve<GaloisField>,
    ell: u64,
    k: u64,
) -> Result<bool, ProellError> {
    let tr = TorsionRing::new(curve, ell)?;
    let r = &tr.ring;
    let q = curve.field().size();
    let x = Elem { a: tr.reduce(&r.x()), b: r.zero() };
    let y = Elem { a: r.zero(), b: r.one() };
    let (mut fx, mut fy) = (x.clone(), y.clone());
    for _ in 0..k {
        fx = tr.pow(&fx, q);
        if tr.with_y {
            fy = tr.pow(&fy, q);
        }
    }
    Ok(fx == x && (!tr.with_y || fy == y))
}
