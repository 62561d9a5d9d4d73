use std::fmt;
use std::sync::Arc;

use super::{arith, AlgebraError, Field, FiniteField, PolyRing, PrimeField};

/// Largest field size `p^k` accepted by [`GaloisField::new`].
pub const MAX_FIELD_SIZE: u64 = 1 << 40;
/// Fields of at most this many elements get discrete-log tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// The finite field `F_{p^k}`, realised as `F_p[a]/(m(a))`.
///
/// An element is encoded as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
/// where `c_0 + c_1 a + ... + c_{k-1} a^{k-1}` is its reduced representative.
/// For `k = 1` this is just the residue in `0..p`.
///
/// The modulus `m` is the smallest monic irreducible polynomial of degree `k`
/// when the coefficient tuples `(c_0, c_1, ..., c_{k-1})` are ordered
/// lexicographically as integers in `0..p`.
#[derive(Clone)]
pub struct GaloisField {
    inner: Arc<Inner>,
}

struct Inner {
    base: PrimeField,
    degree: u32,
    size: u64,
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

struct LogTables {
    // exp has length 2(q-1) so that log a + log b never needs reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Zech logarithms `log(1 + g^i)` for odd `p`, also of length 2(q-1);
    /// `ZECH_ZERO` where `1 + g^i = 0`.
    zech: Vec<u32>,
}

const ZECH_ZERO: u32 = u32::MAX;

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.prime(), self.degree())
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// `F_{p^k}` with the canonical (lexicographically least) modulus.
    pub fn new(p: u64, k: u32) -> Result<Self, AlgebraError> {
        let base = PrimeField::new(p)?;
        Self::check_size(p, k)?;
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(base, k) };
        Ok(Self::build(base, k, modulus))
    }

    /// `F_q` for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self, AlgebraError> {
        let (p, k) = arith::prime_power(q)
            .ok_or_else(|| AlgebraError::InvalidParameter(format!("{q} is not a prime power")))?;
        Self::new(p, k)
    }

    /// `F_p[a]/(modulus)`; `modulus` is monic, given low-to-high, and must be irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, AlgebraError> {
        let base = PrimeField::new(p)?;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::InvalidParameter("modulus must be monic over F_p".into()));
        }
        let k = (modulus.len() - 1) as u32;
        Self::check_size(p, k)?;
        if !is_irreducible(base, &modulus) {
            return Err(AlgebraError::Reducible(p));
        }
        Ok(Self::build(base, k, modulus))
    }

    fn check_size(p: u64, k: u32) -> Result<(), AlgebraError> {
        if k == 0 {
            return Err(AlgebraError::InvalidParameter("extension degree must be positive".into()));
        }
        match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
            _ => Err(AlgebraError::FieldTooLarge { p, k }),
        }
    }

    fn build(base: PrimeField, degree: u32, modulus: Vec<u64>) -> Self {
        let size = base.modulus().pow(degree);
        let mut inner = Inner { base, degree, size, modulus, tables: None };
        if degree > 1 && size <= TABLE_LIMIT {
            inner.tables = Some(LogTables::build(&inner));
        }
        Self { inner: Arc::new(inner) }
    }

    pub fn prime(&self) -> u64 {
        self.inner.base.modulus()
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    /// Defining polynomial, monic, low-to-high.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Coordinates `(c_0, ..., c_{k-1})` of an element.
    pub fn digits(&self, e: u64) -> Vec<u64> {
        self.inner.digits(e)
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<u64, AlgebraError> {
        let p = self.prime();
        if digits.len() > self.degree() as usize || digits.iter().any(|&c| c >= p) {
            return Err(AlgebraError::FieldMismatch(format!(
                "{digits:?} is not a coordinate vector for {self:?}"
            )));
        }
        Ok(encode(digits, p))
    }

    /// Embeds this field into a larger one of the same characteristic whose
    /// degree is a multiple of ours.
    pub fn embedding_into(&self, target: &GaloisField) -> Result<FieldEmbedding, AlgebraError> {
        if target.prime() != self.prime() || !target.degree().is_multiple_of(self.degree()) {
            return Err(AlgebraError::FieldMismatch(format!("{self:?} does not embed in {target:?}")));
        }
        let k = self.degree() as usize;
        let theta = if k == 1 {
            target.one()
        } else {
            let coeffs: Vec<u64> = self.modulus().iter().map(|&c| target.from_int(c as i64)).collect();
            (0..target.size())
                .find(|x| {
                    let v = coeffs.iter().rev().fold(0u64, |acc, c| target.add(&target.mul(&acc, x), c));
                    v == 0
                })
                .ok_or_else(|| AlgebraError::FieldMismatch("no root of the modulus in target".into()))?
        };
        let mut powers = Vec::with_capacity(k);
        let mut cur = target.one();
        for _ in 0..k {
            powers.push(cur);
            cur = target.mul(&cur, &theta);
        }
        Ok(FieldEmbedding { source: self.clone(), target: target.clone(), powers })
    }
}

/// A field homomorphism `F_{p^k} -> F_{p^K}`.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    source: GaloisField,
    target: GaloisField,
    powers: Vec<u64>,
}

impl FieldEmbedding {
    pub fn source(&self) -> &GaloisField {
        &self.source
    }

    pub fn target(&self) -> &GaloisField {
        &self.target
    }

    pub fn apply(&self, e: &u64) -> u64 {
        if self.source.degree() == 1 {
            return *e;
        }
        let t = &self.target;
        self.source
            .digits(*e)
            .iter()
            .zip(&self.powers)
            .fold(0, |acc, (&c, pw)| if c == 0 { acc } else { t.add(&acc, &t.mul(&c, pw)) })
    }
}

fn encode(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Inner {
    fn digits(&self, mut e: u64) -> Vec<u64> {
        let p = self.base.modulus();
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(e % p);
            e /= p;
        }
        out
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.base.modulus();
        if self.degree == 1 {
            return self.base.add(&a, &b);
        }
        if p == 2 {
            return a ^ b;
        }
        if let Some(t) = &self.tables {
            if a == 0 || b == 0 {
                return a + b;
            }
            // a + b = a (1 + b/a)
            let (la, lb) = (t.log[a as usize], t.log[b as usize]);
            let z = t.zech[(lb + (self.size - 1) as u32 - la) as usize];
            return if z == ZECH_ZERO { 0 } else { t.exp[(la + z) as usize] as u64 };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut pw = 1;
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * pw;
            pw *= p;
            a /= p;
            b /= p;
        }
        out
    }

    fn neg(&self, a: u64) -> u64 {
        let p = self.base.modulus();
        if self.degree == 1 {
            return self.base.neg(&a);
        }
        if p == 2 {
            return a;
        }
        if let Some(t) = &self.tables {
            if a == 0 {
                return 0;
            }
            // -1 = g^((q-1)/2)
            return t.exp[(t.log[a as usize] + ((self.size - 1) / 2) as u32) as usize] as u64;
        }
        let mut a = a;
        let mut out = 0;
        let mut pw = 1;
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * pw;
            pw *= p;
            a /= p;
        }
        out
    }

    /// Schoolbook multiplication modulo the defining polynomial.
    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let f = self.base;
        let k = self.degree as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(xi, yj));
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let t = f.mul(&c, &self.modulus[j]);
                prod[i - k + j] = f.sub(&prod[i - k + j], &t);
            }
        }
        prod.truncate(k);
        encode(&prod, f.modulus())
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl LogTables {
    fn build(inner: &Inner) -> Self {
        let n = inner.size - 1;
        let p = inner.base.modulus();
        let factors = arith::prime_factors(n);
        let is_generator = |g: u64| factors.iter().all(|r| inner.slow_pow(g, n / r) != 1);
        // the class of `a` (encoded as p) is tried first: stepping by it is a shift
        let shift = is_generator(p);
        let g = if shift {
            p
        } else {
            (2..inner.size).find(|&g| is_generator(g)).expect("the multiplicative group of a finite field is cyclic")
        };
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![0u32; inner.size as usize];
        let mut digits = vec![0u64; inner.degree as usize];
        digits[0] = 1;
        let g_digits = inner.digits(g);
        let mut scratch = vec![0u64; 2 * inner.degree as usize - 1];
        let mut cur = 1u64;
        for i in 0..n {
            exp.push(cur as u32);
            log[cur as usize] = i as u32;
            if shift {
                inner.mul_by_generator(&mut digits);
            } else {
                inner.mul_in_place(&mut digits, &g_digits, &mut scratch);
            }
            cur = encode(&digits, p);
        }
        exp.extend_from_within(..);
        let mut zech = Vec::new();
        if p != 2 {
            // adding 1 only touches the constant coordinate
            zech = exp[..n as usize]
                .iter()
                .map(|&e| {
                    let e = e as u64;
                    let v = if e % p == p - 1 { e - (p - 1) } else { e + 1 };
                    if v == 0 { ZECH_ZERO } else { log[v as usize] }
                })
                .collect();
            zech.extend_from_within(..);
        }
        Self { exp, log, zech }
    }
}

impl Inner {
    /// `x := x * y` on coordinate vectors, without allocating.
    fn mul_in_place(&self, x: &mut [u64], y: &[u64], prod: &mut [u64]) {
        let f = self.base;
        let k = x.len();
        prod.fill(0);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(xi, yj));
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                prod[i - k + j] = f.sub(&prod[i - k + j], &f.mul(&c, &self.modulus[j]));
            }
        }
        x.copy_from_slice(&prod[..k]);
    }

    /// `digits * a` reduced by the modulus, in place.
    fn mul_by_generator(&self, digits: &mut [u64]) {
        let f = self.base;
        let top = *digits.last().expect("degree is positive");
        for i in (1..digits.len()).rev() {
            digits[i] = f.sub(&digits[i - 1], &f.mul(&top, &self.modulus[i]));
        }
        digits[0] = f.neg(&f.mul(&top, &self.modulus[0]));
    }
}

fn is_irreducible(base: PrimeField, modulus: &[u64]) -> bool {
    let k = modulus.len() - 1;
    if k == 1 {
        return true;
    }
    let p = base.modulus();
    if modulus[0] == 0 {
        return false;
    }
    let ring = PolyRing::new(base);
    let f = ring.from_coeffs(modulus.to_vec());
    if p <= 1024 && (0..p).any(|x| ring.eval(&f, &x) == 0) {
        return false;
    }
    // Rabin: x^(p^k) = x mod f, and gcd(x^(p^(k/r)) - x, f) = 1 for primes r | k
    let x = ring.x();
    let mut frob = vec![x.clone()];
    for _ in 0..k {
        let next = ring.pow_mod(frob.last().unwrap(), p, &f).expect("f is nonzero");
        frob.push(next);
    }
    if frob[k] != x {
        return false;
    }
    arith::prime_factors(k as u64).into_iter().all(|r| {
        let h = ring.sub(&frob[k / r as usize], &x);
        ring.gcd(&h, &f) == ring.one()
    })
}

fn smallest_irreducible(base: PrimeField, k: u32) -> Vec<u64> {
    let p = base.modulus();
    let count = p.pow(k);
    // c_0 = 0 means x divides the polynomial; those come first in the order
    (count / p..count)
        .map(|idx| {
            // c_0 is the most significant position in the ordering
            let mut coeffs = vec![0u64; k as usize + 1];
            let mut r = idx;
            for i in (0..k as usize).rev() {
                coeffs[i] = r % p;
                r /= p;
            }
            coeffs[k as usize] = 1;
            coeffs
        })
        .find(|c| is_irreducible(base, c))
        .expect("irreducible polynomials exist in every degree")
}

impl Field for GaloisField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_int(&self, n: i64) -> u64 {
        self.inner.base.reduce(n)
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.inner.add(*a, *b)
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        self.inner.neg(*a)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if self.inner.degree == 1 {
            return self.inner.base.sub(a, b);
        }
        self.inner.add(*a, self.inner.neg(*b))
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let inner = &*self.inner;
        if inner.degree == 1 {
            return inner.base.mul(a, b);
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &inner.tables {
            Some(t) => t.exp[(t.log[*a as usize] + t.log[*b as usize]) as usize] as u64,
            None => inner.slow_mul(*a, *b),
        }
    }

    fn inv(&self, a: &u64) -> Result<u64, AlgebraError> {
        let inner = &*self.inner;
        if *a == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        if inner.degree == 1 {
            return inner.base.inv(a);
        }
        Ok(match &inner.tables {
            Some(t) => {
                let n = inner.size - 1;
                t.exp[((n - t.log[*a as usize] as u64) % n) as usize] as u64
            }
            None => inner.slow_pow(*a, inner.size - 2),
        })
    }

    fn pow(&self, a: &u64, e: u64) -> u64 {
        let inner = &*self.inner;
        if e == 0 {
            return 1;
        }
        if *a == 0 {
            return 0;
        }
        if inner.degree == 1 {
            return inner.base.pow(a, e);
        }
        match &inner.tables {
            Some(t) => {
                let n = (inner.size - 1) as u128;
                t.exp[((t.log[*a as usize] as u128 * e as u128) % n) as usize] as u64
            }
            None => inner.slow_pow(*a, e),
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.prime()
    }

    fn contains(&self, a: &u64) -> bool {
        *a < self.inner.size
    }

    fn format(&self, a: &u64) -> String {
        if self.degree() == 1 {
            a.to_string()
        } else {
            let d: Vec<String> = self.digits(*a).iter().map(u64::to_string).collect();
            format!("[{}]", d.join(","))
        }
    }
}

impl FiniteField for GaloisField {
    fn size(&self) -> u64 {
        self.inner.size
    }

    fn element(&self, index: u64) -> u64 {
        index
    }

    fn index(&self, a: &u64) -> u64 {
        *a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        // (c0, c1) = (1, 1) is the first irreducible x^2 + c1 x + c0 over F_5
        assert_eq!(GaloisField::new(5, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisField::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(GaloisField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert_eq!(GaloisField::with_modulus(5, vec![4, 0, 1]), Err(AlgebraError::Reducible(5)));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2 has no roots
        assert_eq!(GaloisField::with_modulus(2, vec![1, 0, 1, 0, 1]), Err(AlgebraError::Reducible(2)));
        assert!(GaloisField::with_modulus(2, vec![1, 1, 0, 0, 1]).is_ok());
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = GaloisField::new(3, 4).unwrap();
        let inner = &*f.inner;
        for a in 0..f.size() {
            for b in (0..f.size()).step_by(7) {
                assert_eq!(f.mul(&a, &b), inner.slow_mul(a, b));
            }
            if a != 0 {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = GaloisField::new(7, 3).unwrap();
        for a in (0..f.size()).step_by(5) {
            for b in (0..f.size()).step_by(11) {
                let lhs = f.pow(&f.add(&a, &b), 7);
                let rhs = f.add(&f.pow(&a, 7), &f.pow(&b, 7));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn size_guard() {
        assert_eq!(GaloisField::new(2, 41), Err(AlgebraError::FieldTooLarge { p: 2, k: 41 }));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = GaloisField::new(5, 2).unwrap();
        let big = GaloisField::new(5, 4).unwrap();
        let emb = small.embedding_into(&big).unwrap();
        for a in 0..25 {
            for b in 0..25 {
                assert_eq!(emb.apply(&small.mul(&a, &b)), big.mul(&emb.apply(&a), &emb.apply(&b)));
                assert_eq!(emb.apply(&small.add(&a, &b)), big.add(&emb.apply(&a), &emb.apply(&b)));
            }
        }
        assert!(small.embedding_into(&GaloisField::new(5, 3).unwrap()).is_err());
    }

    #[test]
    fn large_field_without_tables() {
        let f = GaloisField::new(2, 24).unwrap();
        let a = 0xabcdef;
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        assert_eq!(f.pow(&a, f.size() - 1), 1);
    }
}
