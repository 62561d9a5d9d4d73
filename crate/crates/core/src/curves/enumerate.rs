use serde::Serialize;

use super::{CurveError, CurvePoint, WeierstrassCurve};
use crate::algebra::{gcd, lcm, prime_factors, FiniteField};

/// Largest field that point enumeration will walk.
pub const MAX_ENUMERATION_SIZE: u64 = 1_000_000;

/// `E(F_q) = Z/d1 x Z/d2` with `d1 | d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub d1: u64,
    pub d2: u64,
}

impl GroupStructure {
    pub fn order(&self) -> u64 {
        self.d1 * self.d2
    }

    /// Whether the full `n`-torsion is rational.
    pub fn contains_full_torsion(&self, n: u64) -> bool {
        self.d1.is_multiple_of(n)
    }
}

#[derive(Debug, Clone)]
pub struct PointSet<E> {
    pub points: Vec<CurvePoint<E>>,
    pub structure: GroupStructure,
}

/// Solves `y^2 + h y = g` by table lookup.
///
/// In odd characteristic the table inverts `y -> y^2`; in characteristic 2 it
/// inverts `z -> z^2 + z` (after `y = h z`) and `y -> y^2` for `h = 0`.
struct QuadraticSolver {
    roots: Vec<u32>,
    artin_schreier: Vec<u32>,
    odd: bool,
}

const NONE: u32 = u32::MAX;

impl QuadraticSolver {
    fn new<F: FiniteField>(field: &F) -> Self {
        let q = field.size() as usize;
        let odd = field.characteristic() != 2;
        let mut roots = vec![NONE; q];
        let mut artin_schreier = if odd { Vec::new() } else { vec![NONE; q] };
        for i in 0..q as u64 {
            let y = field.element(i);
            let sq = field.square(&y);
            roots[field.index(&sq) as usize] = i as u32;
            if !odd {
                let w = field.add(&sq, &y);
                artin_schreier[field.index(&w) as usize] = i as u32;
            }
        }
        Self { roots, artin_schreier, odd }
    }

    fn solve<F: FiniteField>(&self, field: &F, h: &F::Elem, g: &F::Elem, out: &mut Vec<F::Elem>) {
        out.clear();
        if self.odd {
            // (2y + h)^2 = h^2 + 4g
            let d = field.add(&field.square(h), &field.scale(4, g));
            let r = self.roots[field.index(&d) as usize];
            if r == NONE {
                return;
            }
            let r = field.element(r as u64);
            let half = field.inv(&field.from_int(2)).expect("odd characteristic");
            let y1 = field.mul(&field.sub(&r, h), &half);
            out.push(y1.clone());
            if !field.is_zero(&r) {
                out.push(field.mul(&field.sub(&field.neg(&r), h), &half));
            }
        } else if field.is_zero(h) {
            let r = self.roots[field.index(g) as usize];
            out.push(field.element(r as u64));
        } else {
            let w = field.div(g, &field.square(h)).expect("h is nonzero");
            let z = self.artin_schreier[field.index(&w) as usize];
            if z == NONE {
                return;
            }
            let z = field.element(z as u64);
            let y = field.mul(h, &z);
            out.push(y.clone());
            out.push(field.add(&y, h));
        }
    }

    fn count<F: FiniteField>(&self, field: &F, h: &F::Elem, g: &F::Elem) -> u64 {
        if self.odd {
            let d = field.add(&field.square(h), &field.scale(4, g));
            if field.is_zero(&d) {
                1
            } else if self.roots[field.index(&d) as usize] != NONE {
                2
            } else {
                0
            }
        } else if field.is_zero(h) {
            1
        } else {
            let w = field.div(g, &field.square(h)).expect("h is nonzero");
            if self.artin_schreier[field.index(&w) as usize] != NONE {
                2
            } else {
                0
            }
        }
    }
}

fn guard<F: FiniteField>(field: &F) -> Result<(), CurveError> {
    if field.size() > MAX_ENUMERATION_SIZE {
        Err(CurveError::FieldTooLarge(field.size()))
    } else {
        Ok(())
    }
}

/// For each `x`, the pair `(h, g)` with `y^2 + h y = g` being the fibre over `x`.
fn fibre<F: FiniteField>(curve: &WeierstrassCurve<F>, x: &F::Elem) -> (F::Elem, F::Elem) {
    let f = curve.field();
    let [a1, a2, a3, a4, a6] = curve.coefficients();
    let h = f.add(&f.mul(a1, x), a3);
    let g = f.add(&f.mul(x, &f.add(&f.mul(x, &f.add(x, a2)), a4)), a6);
    (h, g)
}

/// All points of `E(F_q)`, the point at infinity first.
pub fn affine_points<F: FiniteField>(curve: &WeierstrassCurve<F>) -> Result<Vec<CurvePoint<F::Elem>>, CurveError> {
    let field = curve.field();
    guard(field)?;
    let solver = QuadraticSolver::new(field);
    let mut points = vec![CurvePoint::Infinity];
    let mut ys = Vec::with_capacity(2);
    for x in field.elements() {
        let (h, g) = fibre(curve, &x);
        solver.solve(field, &h, &g, &mut ys);
        for y in ys.drain(..) {
            points.push(CurvePoint::affine(x.clone(), y));
        }
    }
    Ok(points)
}

/// `#E(F_q)` by walking every `x`.
pub fn count_points<F: FiniteField>(curve: &WeierstrassCurve<F>) -> Result<u64, CurveError> {
    let field = curve.field();
    guard(field)?;
    let solver = QuadraticSolver::new(field);
    Ok(1 + field
        .elements()
        .map(|x| {
            let (h, g) = fibre(curve, &x);
            solver.count(field, &h, &g)
        })
        .sum::<u64>())
}

/// Order of `p`, given that it divides `n`.
pub fn order_dividing<F: FiniteField>(curve: &WeierstrassCurve<F>, p: &CurvePoint<F::Elem>, n: u64) -> u64 {
    let mut order = n;
    for r in prime_factors(n) {
        while order.is_multiple_of(r) && curve.scalar_mul_unchecked(order / r, p).is_infinity() {
            order /= r;
        }
    }
    order
}

/// `E(F_q) = Z/d1 x Z/d2` from torsion counts.
///
/// The Weil pairing forces `d1 | q - 1`, and `d1^2 | #E`. For each prime `r`
/// of the resulting bound, `r^k | d1` exactly when all `r^(2k)` points of
/// `E[r^k]` are rational, so only small multiples are ever computed.
pub fn group_structure<F: FiniteField>(curve: &WeierstrassCurve<F>, points: &[CurvePoint<F::Elem>]) -> GroupStructure {
    let n = points.len() as u64;
    let bound = gcd(n, curve.field().size() - 1);
    let mut d1 = 1;
    for r in prime_factors(bound) {
        let mut rk = 1;
        while bound.is_multiple_of(rk * r) && n.is_multiple_of(rk * r * rk * r) {
            rk *= r;
            if torsion_count(curve, points, rk) != rk * rk {
                break;
            }
            d1 *= r;
        }
    }
    GroupStructure { d1, d2: n / d1 }
}

/// The same structure from element orders: `d2` is the exponent, `d1 = #E / d2`.
/// Walks every point with a full scalar multiplication; kept as a reference.
pub fn group_structure_by_orders<F: FiniteField>(
    curve: &WeierstrassCurve<F>,
    points: &[CurvePoint<F::Elem>],
) -> GroupStructure {
    let n = points.len() as u64;
    let mut exponent = 1;
    for p in points {
        if exponent == n {
            break;
        }
        if !curve.scalar_mul_unchecked(exponent, p).is_infinity() {
            exponent = lcm(exponent, order_dividing(curve, p, n));
        }
    }
    GroupStructure { d1: n / exponent, d2: exponent }
}

/// Number of points killed by `n`.
pub fn torsion_count<F: FiniteField>(curve: &WeierstrassCurve<F>, points: &[CurvePoint<F::Elem>], n: u64) -> u64 {
    points.iter().filter(|p| curve.scalar_mul_unchecked(n, p).is_infinity()).count() as u64
}

pub fn enumerate_points<F: FiniteField>(curve: &WeierstrassCurve<F>) -> Result<PointSet<F::Elem>, CurveError> {
    let points = affine_points(curve)?;
    let structure = group_structure(curve, &points);
    Ok(PointSet { points, structure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaloisField, PrimeField};

    #[test]
    fn small_counts() {
        let f5 = GaloisField::new(5, 1).unwrap();
        let e = WeierstrassCurve::from_ints(f5.clone(), [0, 0, 0, 0, 1]).unwrap();
        assert_eq!(count_points(&e).unwrap(), 6);
        let e2 = WeierstrassCurve::from_ints(f5, [0, 0, 0, 1, 1]).unwrap();
        assert_eq!(count_points(&e2).unwrap(), 9);
        let set = enumerate_points(&e2).unwrap();
        assert_eq!(set.points.len(), 9);
        assert_eq!(set.structure, GroupStructure { d1: 1, d2: 9 });
    }

    #[test]
    fn torsion_counts_agree_with_element_orders() {
        for q in [4u64, 5, 7, 8, 9, 13, 25] {
            let f = GaloisField::with_order(q).unwrap();
            for idx in 0..q.pow(5).min(4000) {
                let a: [u64; 5] = std::array::from_fn(|i| idx / q.pow(i as u32) % q);
                let Ok(e) = WeierstrassCurve::new(f.clone(), a) else { continue };
                let pts = affine_points(&e).unwrap();
                assert_eq!(group_structure(&e, &pts), group_structure_by_orders(&e, &pts), "q={q} {a:?}");
            }
        }
    }

    #[test]
    fn structure_over_f25() {
        let f = GaloisField::new(5, 2).unwrap();
        let e = WeierstrassCurve::from_ints(f, [0, 0, 0, 0, 1]).unwrap();
        let set = enumerate_points(&e).unwrap();
        assert_eq!(set.structure.order(), 36);
        // supersingular with a = 0 over F_5: Frobenius^2 = -5 on E, so E(F_25) = (Z/6)^2
        assert_eq!(set.structure, GroupStructure { d1: 6, d2: 6 });
        assert!(set.points.iter().all(|p| e.is_on_curve(p)));
    }

    #[test]
    fn brute_force_agrees_in_every_characteristic() {
        for q in [2u64, 3, 4, 7, 8, 9] {
            let f = GaloisField::with_order(q).unwrap();
            for a in [[1, 0, 1, 0, 1], [0, 1, 1, 1, 0], [1, 1, 0, 0, 1], [0, 0, 1, 1, 1]] {
                let Ok(e) = WeierstrassCurve::from_ints(f.clone(), a) else { continue };
                let mut brute = 1;
                for x in 0..q {
                    for y in 0..q {
                        if e.is_on_curve(&CurvePoint::affine(x, y)) {
                            brute += 1;
                        }
                    }
                }
                assert_eq!(count_points(&e).unwrap(), brute, "q={q} a={a:?}");
                let set = enumerate_points(&e).unwrap();
                assert_eq!(set.points.len() as u64, brute);
                let s = set.structure;
                assert_eq!(s.d2 % s.d1, 0);
                assert_eq!((q - 1) % s.d1, 0);
                assert_eq!(torsion_count(&e, &set.points, s.d1), s.d1 * s.d1);
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        let f = GaloisField::new(1_000_003, 1).unwrap();
        let e = WeierstrassCurve::from_ints(f, [0, 0, 0, 1, 1]).unwrap();
        assert_eq!(count_points(&e), Err(CurveError::FieldTooLarge(1_000_003)));
        let p = PrimeField::new(3).unwrap();
        assert!(count_points(&WeierstrassCurve::from_ints(p, [0, 0, 0, 1, 1]).unwrap()).is_ok());
    }
}
