//! Numeric thresholds: the prime bound `6 + sqrt(1 + 24g)` for rational
//! `ell`-torsion over a genus `g` function field, the cruder `49 max(1, g)`,
//! the semistability threshold `2d + 1`, and `|Sp_{2d}(F_ell)|`.

use serde::Serialize;

use crate::algebra::arith;
use crate::families::{self, FamilyElevenSpec, FamilyError, FamilySevenSpec};

pub const MAX_SP_DIMENSION: u32 = 5;
pub const MAX_SP_ELL: u64 = 50;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("sharpness witnesses exist only for genus 0 and 1, not {0}")]
    UnsupportedGenus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("outside supported range: {0}")]
    OutOfRange(String),
    #[error("witness failed re-verification: {0}")]
    WitnessFailed(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub g: u64,
    /// `6 + sqrt(1 + 24g)`, for display only; decisions use integer predicates.
    pub rt_bound: f64,
    /// Largest prime `ell <= 6 + sqrt(1 + 24g)`.
    pub max_prime: u64,
    /// `49 max(1, g)`.
    pub general_bound: u64,
    /// `2d + 1` at `d = 1`.
    pub semistable_threshold: u64,
}

/// `ell <= 6 + sqrt(1 + 24g)`, decided exactly.
pub fn within_rt_bound(ell: u64, g: u64) -> bool {
    ell <= 6 || (ell - 6).pow(2) <= 1 + 24 * g
}

pub fn max_prime(g: u64) -> u64 {
    let top = 6 + arith::isqrt(1 + 24 * g);
    (2..=top)
        .rev()
        .find(|&l| arith::is_prime(l) && within_rt_bound(l, g))
        .expect("2 is always within the bound")
}

pub fn general_bound(g: u64) -> u64 {
    49 * g.max(1)
}

pub fn semistable_threshold(d: u64) -> u64 {
    2 * d + 1
}

pub fn rt_bound(g: u64) -> BoundReport {
    BoundReport {
        g,
        rt_bound: 6.0 + ((1 + 24 * g) as f64).sqrt(),
        max_prime: max_prime(g),
        general_bound: general_bound(g),
        semistable_threshold: semistable_threshold(1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpOrder {
    pub d: u32,
    pub ell: u64,
    /// `ell^{d^2} prod_{i=1}^{d} (ell^{2i} - 1)`, or `None` past 128 bits.
    pub order: Option<u128>,
    /// Whether the order is a power of `ell`.
    pub is_ell_power: bool,
}

/// `|Sp_{2d}(F_ell)|`. The order is reported when it fits in 128 bits;
/// `is_ell_power` is always decided, from the factors `ell^{2i} - 1`.
pub fn sp_order(d: u32, ell: u64) -> Result<SpOrder, BoundsError> {
    if !arith::is_prime(ell) {
        return Err(BoundsError::NotPrime(ell));
    }
    if d == 0 || d > MAX_SP_DIMENSION || ell > MAX_SP_ELL {
        return Err(BoundsError::OutOfRange(format!(
            "need 1 <= d <= {MAX_SP_DIMENSION} and ell <= {MAX_SP_ELL}"
        )));
    }
    let ell128 = ell as u128;
    let mut order = ell128.checked_pow(d * d);
    let mut prime_to_ell_trivial = true;
    for i in 1..=d {
        // ell^{2i} <= 50^10 fits easily
        let factor = ell128.pow(2 * i) - 1;
        order = order.and_then(|o| o.checked_mul(factor));
        let mut rest = factor;
        while rest.is_multiple_of(ell128) {
            rest /= ell128;
        }
        prime_to_ell_trivial &= rest == 1;
    }
    Ok(SpOrder { d, ell, order, is_ell_power: prime_to_ell_trivial })
}

/// `|Sp_2(F_ell)|` by testing `M^T J M = J` on every 2x2 matrix.
pub fn sp2_order_brute_force(ell: u64) -> u64 {
    let j = [[0, 1], [ell - 1, 0]];
    let mut count = 0;
    for a in 0..ell {
        for b in 0..ell {
            for c in 0..ell {
                for d in 0..ell {
                    let m = [[a, b], [c, d]];
                    let mut ok = true;
                    for r in 0..2 {
                        for s in 0..2 {
                            let v: u64 = (0..2)
                                .flat_map(|x| (0..2).map(move |y| (x, y)))
                                .map(|(x, y)| m[x][r] * j[x][y] % ell * m[y][s])
                                .sum();
                            ok &= v % ell == j[r][s];
                        }
                    }
                    count += ok as u64;
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessWitness {
    pub g: u64,
    pub max_prime: u64,
    pub family: String,
    pub p: u64,
    pub parameter: String,
    pub order: u64,
    pub j_nonconstant: bool,
}

/// A curve over a genus `g` function field with a rational point of order
/// `max_prime(g)`, rebuilt and re-verified on each call.
pub fn sharpness_witness(g: u64) -> Result<SharpnessWitness, BoundsError> {
    let max = max_prime(g);
    let (family, p, parameter, order, j_nonconstant) = match g {
        0 => {
            let r = families::verify_seven_invariants(&FamilySevenSpec::identity(5)?)?;
            if !r.all_hold() {
                return Err(BoundsError::WitnessFailed(format!("{r:?}")));
            }
            ("seven", 5, format!("f = {}", r.f), r.order, r.j_nonconstant)
        }
        1 => {
            let r = families::verify_eleven(&FamilyElevenSpec { p: 3, n: 0 })?;
            if !(r.order_is_11 && r.j_nonconstant) {
                return Err(BoundsError::WitnessFailed(format!("{r:?}")));
            }
            ("eleven", 3, "n = 0".to_string(), r.order, r.j_nonconstant)
        }
        _ => return Err(BoundsError::UnsupportedGenus(g)),
    };
    let order = order.expect("verified above");
    if order != max {
        return Err(BoundsError::WitnessFailed(format!("order {order} differs from max_prime {max}")));
    }
    Ok(SharpnessWitness { g, max_prime: max, family: family.into(), p, parameter, order, j_nonconstant })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert_eq!(rt_bound(0).max_prime, 7);
        assert_eq!(rt_bound(1).max_prime, 11);
        assert_eq!(rt_bound(0).general_bound, 49);
        assert_eq!(rt_bound(3).general_bound, 147);
        assert_eq!(semistable_threshold(2), 5);
        // 6 + sqrt(49) = 13 sits on the boundary
        assert_eq!(max_prime(2), 13);
    }

    #[test]
    fn sp_examples() {
        assert_eq!(sp_order(1, 3).unwrap(), SpOrder { d: 1, ell: 3, order: Some(24), is_ell_power: false });
        assert_eq!(sp_order(1, 2).unwrap().order, Some(6));
        assert_eq!(sp_order(2, 3).unwrap().order, Some(51840));
        assert_eq!(sp_order(5, 47).unwrap().order, None);
        assert!(sp_order(6, 3).is_err());
        assert!(sp_order(1, 53).is_err());
        assert_eq!(sp_order(1, 4), Err(BoundsError::NotPrime(4)));
        for l in [2, 3, 5, 7] {
            assert_eq!(sp_order(1, l).unwrap().order, Some(sp2_order_brute_force(l) as u128));
        }
    }

    #[test]
    fn witnesses() {
        let w0 = sharpness_witness(0).unwrap();
        assert_eq!((w0.order, w0.max_prime), (7, 7));
        let w1 = sharpness_witness(1).unwrap();
        assert_eq!((w1.order, w1.max_prime), (11, 11));
        assert_eq!(sharpness_witness(2), Err(BoundsError::UnsupportedGenus(2)));
    }
}
