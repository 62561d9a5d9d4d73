//! Two explicit families with a rational torsion point of large order.
//!
//! * `E_f` over `k(t)`, for a non-constant `f in k(t)`:
//!   `y^2 + (1 - f(f-1)) xy - f^2(f-1) y = x^3 - f^2(f-1) x^2`, with `(0,0)` of
//!   order 7 whenever `char k != 7`.
//! * `E_n` over `k(t, u)`, `u^2 + (t^2+1) u + t = 0` (a model of `X_1(11)`), with
//!   `r = ut + 1`, `s = 1 - t`:
//!   `y^2 + (s - rs + 1)^{p^n} xy + (rs - r^2 s)^{p^n} y = x^3 + (rs - r^2 s)^{p^n} x^2`,
//!   with `(0,0)` of order 11 whenever `char k != 11`.

use serde::Serialize;

use crate::algebra::{AlgebraError, Field, PrimeField, QuadExtField, RationalFunction, RationalFunctionField};
use crate::curves::{CurveError, CurvePoint, WeierstrassCurve};

/// Largest Frobenius twist `p^n` accepted by [`build_eleven`].
pub const MAX_TWIST_POWER: u64 = 64;
/// Search bound for the order of `(0,0)`.
pub const ORDER_SEARCH_BOUND: u64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("characteristic 7 is excluded from the seven-torsion family")]
    CharSeven,
    #[error("characteristic 11 is excluded from the eleven-torsion family")]
    CharEleven,
    #[error("the parameter f must be non-constant")]
    ConstantParameter,
    #[error("this member of the family is singular")]
    SingularFamilyMember,
    #[error("twist exponent p^n = {p}^{n} exceeds {MAX_TWIST_POWER}")]
    ExponentGuard { p: u64, n: u32 },
    #[error(transparent)]
    Curve(CurveError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<CurveError> for FamilyError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Singular => FamilyError::SingularFamilyMember,
            other => FamilyError::Curve(other),
        }
    }
}

pub type SevenField = RationalFunctionField<PrimeField>;
pub type ElevenField = QuadExtField<PrimeField>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySevenSpec {
    pub p: u64,
    pub f: RationalFunction<u64>,
}

impl FamilySevenSpec {
    /// The member `f = t`.
    pub fn identity(p: u64) -> Result<Self, FamilyError> {
        let k = RationalFunctionField::new(PrimeField::new(p)?);
        Ok(Self { p, f: k.t() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyElevenSpec {
    pub p: u64,
    pub n: u32,
}

pub fn seven_field(p: u64) -> Result<SevenField, FamilyError> {
    if p == 7 {
        return Err(FamilyError::CharSeven);
    }
    Ok(RationalFunctionField::new(PrimeField::new(p)?))
}

pub fn build_seven(spec: &FamilySevenSpec) -> Result<WeierstrassCurve<SevenField>, FamilyError> {
    let k = seven_field(spec.p)?;
    let f = &spec.f;
    k.check(f)?;
    if k.is_constant(f) {
        return Err(FamilyError::ConstantParameter);
    }
    let fm1 = k.sub(f, &k.one());
    let a1 = k.sub(&k.one(), &k.mul(f, &fm1));
    let a2 = k.neg(&k.mul(&k.square(f), &fm1));
    Ok(WeierstrassCurve::new(k.clone(), [a1, a2.clone(), a2, k.zero(), k.zero()])?)
}

/// `f^7 (f-1)^7 (f^3 - 8f^2 + 5f + 1)`.
pub fn seven_delta_closed_form(k: &SevenField, f: &RationalFunction<u64>) -> RationalFunction<u64> {
    let f7 = k.pow(f, 7);
    let fm17 = k.pow(&k.sub(f, &k.one()), 7);
    let cubic = k.eval_int_poly(&[1, 5, -8, 1], f);
    k.mul(&k.mul(&f7, &fm17), &cubic)
}

/// `(f^2 - f + 1)(f^6 - 11f^5 + 30f^4 - 15f^3 - 10f^2 + 5f + 1)`.
pub fn seven_c4_closed_form(k: &SevenField, f: &RationalFunction<u64>) -> RationalFunction<u64> {
    let quad = k.eval_int_poly(&[1, -1, 1], f);
    let sextic = k.eval_int_poly(&[1, 5, -10, -15, 30, -11, 1], f);
    k.mul(&quad, &sextic)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SevenReport {
    pub p: u64,
    pub f: String,
    pub order: Option<u64>,
    pub delta_matches: bool,
    pub c4_matches: bool,
    pub j_nonconstant: bool,
}

impl SevenReport {
    pub fn all_hold(&self) -> bool {
        self.order == Some(7) && self.delta_matches && self.c4_matches && self.j_nonconstant
    }
}

/// Builds `E_f` and compares its invariants against the closed forms.
pub fn verify_seven_invariants(spec: &FamilySevenSpec) -> Result<SevenReport, FamilyError> {
    let curve = build_seven(spec)?;
    let k = curve.field();
    let inv = curve.invariants();
    let origin = CurvePoint::affine(k.zero(), k.zero());
    Ok(SevenReport {
        p: spec.p,
        f: k.format(&spec.f),
        order: curve.point_order(&origin, ORDER_SEARCH_BOUND)?,
        delta_matches: inv.delta == seven_delta_closed_form(k, &spec.f),
        c4_matches: inv.c4 == seven_c4_closed_form(k, &spec.f),
        j_nonconstant: !k.is_constant(curve.j_invariant()),
    })
}

pub fn eleven_field(p: u64) -> Result<ElevenField, FamilyError> {
    if p == 11 {
        return Err(FamilyError::CharEleven);
    }
    Ok(QuadExtField::x1_11(PrimeField::new(p)?))
}

fn twist_power(spec: &FamilyElevenSpec) -> Result<u64, FamilyError> {
    spec.p
        .checked_pow(spec.n)
        .filter(|&v| v <= MAX_TWIST_POWER)
        .ok_or(FamilyError::ExponentGuard { p: spec.p, n: spec.n })
}

pub fn build_eleven(spec: &FamilyElevenSpec) -> Result<WeierstrassCurve<ElevenField>, FamilyError> {
    let k = eleven_field(spec.p)?;
    let power = twist_power(spec)?;
    let t = k.t();
    let r = k.add(&k.mul(&k.u(), &t), &k.one());
    let s = k.sub(&k.one(), &t);
    let rs = k.mul(&r, &s);
    let a1 = k.pow(&k.add(&k.sub(&s, &rs), &k.one()), power);
    let a2 = k.pow(&k.sub(&rs, &k.mul(&r, &rs)), power);
    Ok(WeierstrassCurve::new(k.clone(), [a1, a2.clone(), a2, k.zero(), k.zero()])?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElevenReport {
    pub p: u64,
    pub n: u32,
    pub order: Option<u64>,
    pub order_is_11: bool,
    pub j_nonconstant: bool,
}

pub fn verify_eleven(spec: &FamilyElevenSpec) -> Result<ElevenReport, FamilyError> {
    let curve = build_eleven(spec)?;
    let k = curve.field();
    let origin = CurvePoint::affine(k.zero(), k.zero());
    let order = curve.point_order(&origin, ORDER_SEARCH_BOUND)?;
    Ok(ElevenReport {
        p: spec.p,
        n: spec.n,
        order,
        order_is_11: order == Some(11),
        j_nonconstant: !k.is_constant(curve.j_invariant()),
    })
}
