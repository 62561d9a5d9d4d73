//! Frobenius data for curves over `F_q`, point counts in extensions, the
//! degree of the `ell`-torsion field, and the criterion deciding whether
//! `F_q(E[ell^inf])` lies in the maximal pro-`ell` extension of `F_q`.
//!
//! The criterion reduces to the first layer: with `f` the order of `q` mod
//! `ell` (so `F_q(mu_ell) = F_{q^f}`) and `m = [F_q(E[ell]) : F_q]`, the curve
//! qualifies iff `m / f` is a power of `ell`.

mod lemmas;
mod oracle;
mod torsion_ring;

use serde::Serialize;

use crate::algebra::{arith, AlgebraError, Field, FiniteField, GaloisField};
use crate::curves::{count_points, CurveError, WeierstrassCurve, MAX_ENUMERATION_SIZE};

pub use lemmas::{fixed_vector, stable_line, FixedVector, Gl2, Mat2, StableLine};
pub use oracle::ExtensionTower;

/// Largest prime `ell` handled by [`torsion_field_degree`].
pub const MAX_TORSION_ELL: u64 = 13;
/// Largest base field handled by [`torsion_field_degree`].
pub const MAX_TORSION_Q: u64 = 10_000;
/// Upper bound for `q^m` in [`count_in_extension`].
pub const MAX_EXTENSION_SIZE: u64 = 1 << 62;
/// Work budget (roughly, base-field multiplications) for the torsion-ring scalar test.
pub const DEFAULT_RING_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProellError {
    #[error("ell = {ell} equals the characteristic")]
    EllEqualsChar { ell: u64 },
    #[error("outside supported range: {0}")]
    OutOfDeskScale(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("q^m = {q}^{m} exceeds 2^62")]
    Overflow { q: u64, m: u64 },
    #[error("precondition violated: {0}")]
    PrecondViolation(String),
    #[error("generators do not generate an ell-group")]
    NotEllGroup,
    #[error("delta does not normalize N")]
    NotNormalized,
    #[error("matrix is not invertible mod ell")]
    NotInvertible,
    #[error("Hasse bound violated: a = {a}, q = {q}")]
    HasseViolation { q: u64, a: i64 },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Trace of Frobenius `a` for a curve over `F_q`; its characteristic
/// polynomial is `x^2 - a x + q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    pub q: u64,
    pub trace: i64,
}

impl FrobeniusData {
    /// Checks the Hasse bound `a^2 <= 4q`.
    pub fn new(q: u64, trace: i64) -> Result<Self, ProellError> {
        if (trace as i128).pow(2) > 4 * q as i128 {
            return Err(ProellError::HasseViolation { q, a: trace });
        }
        Ok(Self { q, trace })
    }

    /// `(1, -a, q)`, highest degree first.
    pub fn charpoly(&self) -> [i64; 3] {
        [1, -self.trace, self.q as i64]
    }

    pub fn point_count(&self) -> u64 {
        (self.q as i64 + 1 - self.trace) as u64
    }
}

/// `a = q + 1 - #E(F_q)`, with `#E(F_q)` found by enumeration.
pub fn frobenius_data<F: FiniteField>(curve: &WeierstrassCurve<F>) -> Result<FrobeniusData, ProellError> {
    let q = curve.field().size();
    let n = count_points(curve)?;
    let fd = FrobeniusData::new(q, q as i64 + 1 - n as i64)?;
    Ok(fd)
}

/// `#E(F_{q^m}) = q^m + 1 - s_m` where `s_m = alpha^m + beta^m` follows
/// `s_0 = 2`, `s_1 = a`, `s_m = a s_{m-1} - q s_{m-2}`. This equals
/// `(1 - alpha^m)(1 - beta^m)` for the Frobenius eigenvalues `alpha, beta`.
pub fn count_in_extension(fd: &FrobeniusData, m: u64) -> Result<u64, ProellError> {
    if m == 0 {
        return Err(ProellError::PrecondViolation("extension degree must be positive".into()));
    }
    let qm = u32::try_from(m)
        .ok()
        .and_then(|m32| fd.q.checked_pow(m32))
        .filter(|&v| v <= MAX_EXTENSION_SIZE)
        .ok_or(ProellError::Overflow { q: fd.q, m })?;
    let (a, q) = (fd.trace as i128, fd.q as i128);
    let (mut prev, mut cur) = (2i128, a);
    for _ in 1..m {
        (prev, cur) = (cur, a * cur - q * prev);
    }
    Ok((qm as i128 + 1 - cur) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMethod {
    /// Characteristic polynomial mod `ell` has distinct roots (in `F_ell` or `F_{ell^2}`).
    RootOrders,
    /// Repeated root; scalar versus non-semisimple Frobenius settled in the torsion ring.
    ScalarDisambiguated,
    /// Repeated root; settled by enumerating points over an extension.
    EnumerationOracle,
}

/// Factorisation shape of `x^2 - a x + q` over `F_ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CharpolyShape {
    Split { roots: [u64; 2] },
    Irreducible,
    Repeated { root: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorsionDegree {
    pub ell: u64,
    /// `[F_q(E[ell]) : F_q]`.
    pub m: u64,
    pub method: DegreeMethod,
    pub shape: CharpolyShape,
    pub frobenius: FrobeniusData,
}

fn check_degree_inputs(curve: &WeierstrassCurve<GaloisField>, ell: u64) -> Result<(), ProellError> {
    if !arith::is_prime(ell) {
        return Err(ProellError::NotPrime(ell));
    }
    let field = curve.field();
    if field.characteristic() == ell {
        return Err(ProellError::EllEqualsChar { ell });
    }
    if ell > MAX_TORSION_ELL {
        return Err(ProellError::OutOfDeskScale(format!("ell = {ell} exceeds {MAX_TORSION_ELL}")));
    }
    if field.size() > MAX_TORSION_Q {
        return Err(ProellError::OutOfDeskScale(format!("q = {} exceeds {MAX_TORSION_Q}", field.size())));
    }
    Ok(())
}

/// Order of `x` in `(Z/ell)^x`.
fn residue_order(x: u64, ell: u64) -> u64 {
    arith::mult_order(x, ell).expect("ell is prime and x is a unit")
}

/// Shape of `x^2 - a x + q` over `F_ell`.
pub fn charpoly_shape(fd: &FrobeniusData, ell: u64) -> CharpolyShape {
    let a = fd.trace.rem_euclid(ell as i64) as u64;
    let q = fd.q % ell;
    let root = (0..ell).find(|&r| (r * r + ell * ell - a * r % ell + q).is_multiple_of(ell));
    match root {
        None => CharpolyShape::Irreducible,
        Some(r) => {
            let other = (a + ell - r) % ell;
            if other == r {
                CharpolyShape::Repeated { root: r }
            } else {
                CharpolyShape::Split { roots: [r.min(other), r.max(other)] }
            }
        }
    }
}

/// `[F_q(E[ell]) : F_q]` with the default torsion-ring budget.
pub fn torsion_field_degree(curve: &WeierstrassCurve<GaloisField>, ell: u64) -> Result<TorsionDegree, ProellError> {
    torsion_field_degree_with_budget(curve, ell, DEFAULT_RING_BUDGET)
}

/// `[F_q(E[ell]) : F_q]`, the order of Frobenius acting on `E[ell]`.
///
/// * distinct roots in `F_ell`: the lcm of their orders;
/// * irreducible: the order of a root in `F_{ell^2}^x`;
/// * repeated root `lambda` with `k = ord(lambda)`: `k` if Frobenius is the
///   scalar `lambda` on `E[ell]`, else `ell * k`. Scalarity is decided by
///   testing `phi^k = id` in `F_q[x, y]/(E, psi_ell)` when that fits in
///   `ring_budget`, otherwise by enumerating `E(F_{q^k})`.
pub fn torsion_field_degree_with_budget(
    curve: &WeierstrassCurve<GaloisField>,
    ell: u64,
    ring_budget: u64,
) -> Result<TorsionDegree, ProellError> {
    check_degree_inputs(curve, ell)?;
    let fd = frobenius_data(curve)?;
    let shape = charpoly_shape(&fd, ell);
    let (m, method) = match shape {
        CharpolyShape::Split { roots: [r1, r2] } => {
            (arith::lcm(residue_order(r1, ell), residue_order(r2, ell)), DegreeMethod::RootOrders)
        }
        CharpolyShape::Irreducible => {
            let f2 = GaloisField::new(ell, 2)?;
            let (a, q) = (f2.from_int(fd.trace), f2.from_int(fd.q as i64));
            let alpha = f2
                .elements()
                .find(|x| f2.add(&f2.sub(&f2.square(x), &f2.mul(&a, x)), &q) == 0)
                .ok_or_else(|| ProellError::InvariantViolation("no root in F_{ell^2}".into()))?;
            (f2.mult_order_of(&alpha)?, DegreeMethod::RootOrders)
        }
        CharpolyShape::Repeated { root } => {
            let k = residue_order(root, ell);
            let q = curve.field().size();
            if torsion_ring::scalar_test_cost(q, ell, k) <= ring_budget {
                let scalar = torsion_ring::frobenius_power_is_identity(curve, ell, k)?;
                (if scalar { k } else { ell * k }, DegreeMethod::ScalarDisambiguated)
            } else {
                let fits = u32::try_from(k).ok().and_then(|k| q.checked_pow(k)).is_some_and(|s| s <= MAX_ENUMERATION_SIZE);
                if !fits {
                    return Err(ProellError::OutOfDeskScale(format!(
                        "scalar test exceeds budget and q^{k} exceeds {MAX_ENUMERATION_SIZE}"
                    )));
                }
                let tower = ExtensionTower::with_degrees(curve.field(), &[k as u32])?;
                let scalar = tower.has_full_torsion(curve, k as u32, ell)?;
                (if scalar { k } else { ell * k }, DegreeMethod::EnumerationOracle)
            }
        }
    };
    Ok(TorsionDegree { ell, m, method, shape, frobenius: fd })
}

/// `[F_q(E[ell^2]) : F_q]` for `ell` in {2, 3}, by enumeration only; `None`
/// when no extension with `q^m <= 10^6` contains `E[ell^2]`.
pub fn torsion_field_degree_ell_squared(
    curve: &WeierstrassCurve<GaloisField>,
    ell: u64,
) -> Result<Option<u64>, ProellError> {
    if ell != 2 && ell != 3 {
        return Err(ProellError::OutOfDeskScale(format!("ell^2 degrees are only enumerated for ell in {{2, 3}}, not {ell}")));
    }
    if curve.field().characteristic() == ell {
        return Err(ProellError::EllEqualsChar { ell });
    }
    let tower = ExtensionTower::new(curve.field(), MAX_ENUMERATION_SIZE)?;
    Ok(tower.full_torsion_degree(curve, ell * ell)?.map(u64::from))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub ell: u64,
    pub q: u64,
    /// Order of `q` mod `ell`: `F_q(mu_ell) = F_{q^f}`.
    pub f: u64,
    /// `[F_q(E[ell]) : F_q]`.
    pub m: u64,
    /// `[F_q(E[ell]) : F_q(mu_ell)] = m / f`.
    pub ratio: u64,
    pub verdict: bool,
    pub method: DegreeMethod,
}

/// Decides whether `F_q(E[ell^inf])` lies in the maximal pro-`ell` extension of `F_q`.
pub fn is_proell_member(curve: &WeierstrassCurve<GaloisField>, ell: u64) -> Result<MembershipReport, ProellError> {
    let degree = torsion_field_degree(curve, ell)?;
    membership_from_degree(&degree)
}

/// Membership verdict from an already computed torsion degree.
pub fn membership_from_degree(degree: &TorsionDegree) -> Result<MembershipReport, ProellError> {
    let (ell, q, m) = (degree.ell, degree.frobenius.q, degree.m);
    let f = arith::mult_order(q, ell)?;
    // Weil pairing: mu_ell lies in F_q(E[ell])
    if m % f != 0 {
        return Err(ProellError::InvariantViolation(format!("f = {f} does not divide m = {m}")));
    }
    let ratio = m / f;
    Ok(MembershipReport { ell, q, f, m, ratio, verdict: arith::is_power_of(ratio, ell), method: degree.method })
}

/// Residue class of the order `f` of `p` mod `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FClass {
    #[serde(rename = "odd")]
    Odd,
    #[serde(rename = "two_mod_4")]
    TwoMod4,
    #[serde(rename = "zero_mod_4")]
    ZeroMod4,
}

impl FClass {
    pub fn of(f: u64) -> Self {
        match f % 4 {
            0 => FClass::ZeroMod4,
            2 => FClass::TwoMod4,
            _ => FClass::Odd,
        }
    }

    /// `#E(F_{p^{f ell^e}}) mod ell` for supersingular `E/F_p`.
    pub fn expected_residue(self) -> u64 {
        match self {
            FClass::Odd => 2,
            FClass::TwoMod4 => 0,
            FClass::ZeroMod4 => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FClass::Odd => "odd",
            FClass::TwoMod4 => "two_mod_4",
            FClass::ZeroMod4 => "zero_mod_4",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SupersingularCase {
    pub p: u64,
    pub ell: u64,
    pub e: u32,
    pub f: u64,
    pub branch: FClass,
    /// `#E(F_{p^{f ell^e}}) mod ell`.
    pub residue: u64,
}

/// `#E(F_{p^{f ell^e}}) mod ell` for a supersingular `E/F_p`, computed from
/// the closed forms `p^n + 1` (f odd) and `(p^{n/2} - (-1)^{n/2})^2` (f even),
/// `n = f ell^e`, entirely mod `ell`.
pub fn supersingular_residue(p: u64, ell: u64, e: u32) -> Result<SupersingularCase, ProellError> {
    if !arith::is_prime(p) || p < 5 {
        return Err(ProellError::PrecondViolation(format!("p = {p} must be a prime >= 5")));
    }
    if !arith::is_prime(ell) || ell <= p {
        return Err(ProellError::PrecondViolation(format!("ell = {ell} must be a prime > p")));
    }
    let f = arith::mult_order(p, ell)?;
    let branch = FClass::of(f);
    // p is a unit mod ell, so exponents reduce mod ell - 1
    let ell_pow_e = arith::mod_pow(ell, e as u64, ell - 1);
    let reduce_exp = |scale: u64| (scale % (ell - 1)) * ell_pow_e % (ell - 1);
    let residue = if f % 2 == 1 {
        (arith::mod_pow(p, reduce_exp(f), ell) + 1) % ell
    } else {
        let half = arith::mod_pow(p, reduce_exp(f / 2), ell);
        // (-1)^{(f/2) ell^e} = (-1)^{f/2} since ell is odd
        let sign = if (f / 2) % 2 == 0 { 1 } else { ell - 1 };
        let diff = (half + ell - sign) % ell;
        diff * diff % ell
    };
    if residue != branch.expected_residue() % ell {
        return Err(ProellError::InvariantViolation(format!(
            "residue {residue} does not match branch {branch:?} for p = {p}, ell = {ell}"
        )));
    }
    Ok(SupersingularCase { p, ell, e, f, branch, residue })
}
