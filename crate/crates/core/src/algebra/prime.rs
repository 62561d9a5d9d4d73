use super::{arith, AlgebraError, Field, FiniteField};

/// The prime field `F_p`, `p < 2^31`. Elements are residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p >= 1 << 31 {
            return Err(AlgebraError::InvalidParameter(format!("prime {p} is not below 2^31")));
        }
        if !arith::is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce an arbitrary integer into `0..p`.
    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_int(&self, n: i64) -> u64 {
        self.reduce(n)
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Result<u64, AlgebraError> {
        if *a == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Ok(self.reduce(s0))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn contains(&self, a: &u64) -> bool {
        *a < self.p
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn pow(&self, a: &u64, e: u64) -> u64 {
        arith::mod_pow(*a, e, self.p)
    }
}

impl FiniteField for PrimeField {
    fn size(&self) -> u64 {
        self.p
    }

    fn element(&self, index: u64) -> u64 {
        index
    }

    fn index(&self, a: &u64) -> u64 {
        *a
    }
}
