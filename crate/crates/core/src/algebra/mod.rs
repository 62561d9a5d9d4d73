//! Exact arithmetic for the base structures: prime fields, extension fields,
//! univariate polynomials, rational functions in `t`, and the quadratic
//! extension of `F_p(t)` cut out by `u^2 + (t^2 + 1)u + t = 0`.
//!
//! Fields are context objects: a [`Field`] value knows how to combine its
//! elements, and elements are plain data without a back-pointer. This keeps
//! elements cheap to clone and hash, and keeps generic curve code free of
//! per-element allocation.

pub mod arith;
mod galois;
mod poly;
mod prime;
mod quadratic;
mod rational;

use std::fmt;
use std::hash::Hash;

pub use arith::{gcd, is_power_of, is_prime, lcm, mod_pow, mult_order, prime_factors, prime_power};
pub use galois::{FieldEmbedding, GaloisField, MAX_FIELD_SIZE, TABLE_LIMIT};
pub use poly::{Poly, PolyRing};
pub use prime::PrimeField;
pub use quadratic::{QuadExtElement, QuadExtField};
pub use rational::{RationalFunction, RationalFunctionField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{q} is divisible by {ell}")]
    NotCoprime { q: u64, ell: u64 },
    #[error("field of size {p}^{k} exceeds the supported size")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("modulus is reducible over F_{0}")]
    Reducible(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A field, viewed as a context that performs arithmetic on its elements.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical map `Z -> F`.
    fn from_int(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, AlgebraError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn characteristic(&self) -> u64;

    /// Whether `a` is a well-formed element of this particular field.
    fn contains(&self, a: &Self::Elem) -> bool;

    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Square-and-multiply.
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// `n * a` for an integer `n`.
    fn scale(&self, n: i64, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_int(n), a)
    }

    /// Returns `Err(FieldMismatch)` if `a` does not belong to this field.
    fn check(&self, a: &Self::Elem) -> Result<(), AlgebraError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(format!("{a:?} is not an element of {self:?}")))
        }
    }
}

/// A field with finitely many elements, indexed `0..size`.
pub trait FiniteField: Field {
    fn size(&self) -> u64;
    fn element(&self, index: u64) -> Self::Elem;
    fn index(&self, a: &Self::Elem) -> u64;

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.size()).map(move |i| self.element(i)))
    }

    /// Multiplicative order of a nonzero element.
    fn mult_order_of(&self, a: &Self::Elem) -> Result<u64, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.size() - 1;
        let mut order = n;
        for r in prime_factors(n) {
            while order.is_multiple_of(r) && self.is_one(&self.pow(a, order / r)) {
                order /= r;
            }
        }
        Ok(order)
    }
}
