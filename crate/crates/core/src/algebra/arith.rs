//! Machine-word number theory: primality, modular powers, multiplicative orders.

use super::AlgebraError;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Deterministic trial division. Adequate for the moduli handled here (below 2^40).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^k` with `p` prime, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut k = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        k += 1;
    }
    Some((p, k))
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Order of `q` in `(Z/ell)^x` given the distinct prime factors of `ell - 1`.
pub fn mult_order_with_factors(q: u64, ell: u64, factors_of_ell_minus_1: &[u64]) -> u64 {
    let mut f = ell - 1;
    for &r in factors_of_ell_minus_1 {
        while f.is_multiple_of(r) && mod_pow(q, f / r, ell) == 1 {
            f /= r;
        }
    }
    f
}

/// Smallest `f >= 1` with `q^f = 1 (mod ell)`.
pub fn mult_order(q: u64, ell: u64) -> Result<u64, AlgebraError> {
    if !is_prime(ell) {
        return Err(AlgebraError::NotPrime(ell));
    }
    if q.is_multiple_of(ell) {
        return Err(AlgebraError::NotCoprime { q, ell });
    }
    Ok(mult_order_with_factors(q, ell, &prime_factors(ell - 1)))
}

/// True iff `n` is a power of `ell`, counting `ell^0 = 1`.
pub fn is_power_of(mut n: u64, ell: u64) -> bool {
    if n == 0 || ell < 2 {
        return n == 1;
    }
    while n.is_multiple_of(ell) {
        n /= ell;
    }
    n == 1
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_order(q: u64, ell: u64) -> u64 {
        let mut acc = q % ell;
        let mut f = 1;
        while acc != 1 {
            acc = acc * (q % ell) % ell;
            f += 1;
        }
        f
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(5, 7).unwrap(), 6);
        assert_eq!(mult_order(5, 13).unwrap(), 4);
        assert_eq!(mult_order(8, 7).unwrap(), 1);
        assert_eq!(mult_order(14, 7), Err(AlgebraError::NotCoprime { q: 14, ell: 7 }));
        assert_eq!(mult_order(5, 9), Err(AlgebraError::NotPrime(9)));
    }

    #[test]
    fn mult_order_exhaustive_small() {
        for ell in (2..200).filter(|&l| is_prime(l)) {
            for q in 2..50 {
                if q % ell == 0 {
                    continue;
                }
                let f = mult_order(q, ell).unwrap();
                assert_eq!((ell - 1) % f, 0, "q={q} ell={ell}");
                assert_eq!(f, naive_order(q, ell), "q={q} ell={ell}");
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn isqrt_edges() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
