use super::{CurveError, WeierstrassCurve};
use crate::algebra::{Field, Poly, PolyRing};

pub const MAX_DIVISION_INDEX: u64 = 13;

/// The `n`-th division polynomial, stored as a polynomial in `x` alone.
///
/// For odd `n`, `psi_n = poly(x)`. For even `n`, `psi_n = (2y + a1 x + a3) * poly(x)`,
/// and `(2y + a1 x + a3)^2` has been replaced by [`two_torsion_cubic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionPolynomial<E> {
    pub n: u64,
    pub poly: Poly<E>,
    pub has_psi2_factor: bool,
    /// The characteristic divides `n`; root sets then miss the inseparable torsion.
    pub char_divides_n: bool,
}

/// `4x^3 + b2 x^2 + 2 b4 x + b6`, the square of `psi_2` on the curve.
pub fn two_torsion_cubic<F: Field>(curve: &WeierstrassCurve<F>) -> Poly<F::Elem> {
    let f = curve.field();
    let inv = curve.invariants();
    PolyRing::new(f.clone()).from_coeffs(vec![inv.b6.clone(), f.scale(2, &inv.b4), inv.b2.clone(), f.from_int(4)])
}

/// The reduced division polynomials `f_0, ..., f_n` (see [`DivisionPolynomial`]).
pub fn division_polynomials<F: Field>(curve: &WeierstrassCurve<F>, n: u64) -> Result<Vec<Poly<F::Elem>>, CurveError> {
    if n > MAX_DIVISION_INDEX {
        return Err(CurveError::IndexOutOfRange(n));
    }
    let f = curve.field();
    let r = PolyRing::new(f.clone());
    let inv = curve.invariants();
    let (b2, b4, b6, b8) = (&inv.b2, &inv.b4, &inv.b6, &inv.b8);
    let cubic = two_torsion_cubic(curve);
    let cubic_sq = r.mul(&cubic, &cubic);

    let mut fs: Vec<Poly<F::Elem>> = vec![r.zero(), r.one(), r.one()];
    // psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
    fs.push(r.from_coeffs(vec![b8.clone(), f.scale(3, b6), f.scale(3, b4), b2.clone(), f.from_int(3)]));
    // psi_4 / psi_2 = 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2 + (b2 b8 - b4 b6) x + (b4 b8 - b6^2)
    fs.push(r.from_coeffs(vec![
        f.sub(&f.mul(b4, b8), &f.square(b6)),
        f.sub(&f.mul(b2, b8), &f.mul(b4, b6)),
        f.scale(10, b8),
        f.scale(10, b6),
        f.scale(5, b4),
        b2.clone(),
        f.from_int(2),
    ]));
    for k in 5..=n as usize {
        let m = k / 2;
        let next = if k % 2 == 1 {
            // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
            let left = r.mul(&fs[m + 2], &r.pow(&fs[m], 3));
            let right = r.mul(&fs[m - 1], &r.pow(&fs[m + 1], 3));
            if m % 2 == 0 {
                r.sub(&r.mul(&cubic_sq, &left), &right)
            } else {
                r.sub(&left, &r.mul(&cubic_sq, &right))
            }
        } else {
            // psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / psi_2
            let inner = r.sub(
                &r.mul(&fs[m + 2], &r.pow(&fs[m - 1], 2)),
                &r.mul(&fs[m - 2], &r.pow(&fs[m + 1], 2)),
            );
            r.mul(&fs[m], &inner)
        };
        fs.push(next);
    }
    fs.truncate(n as usize + 1);
    Ok(fs)
}

pub fn division_polynomial<F: Field>(
    curve: &WeierstrassCurve<F>,
    n: u64,
) -> Result<DivisionPolynomial<F::Elem>, CurveError> {
    if n == 0 || n > MAX_DIVISION_INDEX {
        return Err(CurveError::IndexOutOfRange(n));
    }
    let poly = division_polynomials(curve, n)?.swap_remove(n as usize);
    Ok(DivisionPolynomial {
        n,
        poly,
        has_psi2_factor: n.is_multiple_of(2),
        char_divides_n: n.is_multiple_of(curve.field().characteristic()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaloisField, PrimeField};

    #[test]
    fn psi1_and_psi3_examples() {
        let e = WeierstrassCurve::from_ints(PrimeField::new(5).unwrap(), [0, 0, 0, 0, 1]).unwrap();
        let r = PolyRing::new(*e.field());
        assert_eq!(division_polynomial(&e, 1).unwrap().poly, r.one());
        assert_eq!(division_polynomial(&e, 3).unwrap().poly, r.from_ints(&[0, 2, 0, 0, 3]));
        assert_eq!(division_polynomial(&e, 0), Err(CurveError::IndexOutOfRange(0)));
        assert_eq!(division_polynomial(&e, 14), Err(CurveError::IndexOutOfRange(14)));
    }

    #[test]
    fn odd_degrees_follow_formula() {
        let e = WeierstrassCurve::from_ints(GaloisField::new(13, 1).unwrap(), [1, 2, 3, 4, 5]).unwrap();
        let fs = division_polynomials(&e, 13).unwrap();
        for n in (1..=11usize).step_by(2) {
            assert_eq!(fs[n].degree(), Some((n * n - 1) / 2), "n = {n}");
        }
        for n in (2..=12usize).step_by(2) {
            assert_eq!(fs[n].degree(), Some((n * n - 4) / 2), "n = {n}");
        }
        assert!(division_polynomial(&e, 13).unwrap().char_divides_n);
    }
}
