use crate::algebra::{FieldEmbedding, FiniteField, GaloisField};
use crate::curves::{affine_points, count_points, group_structure, torsion_count, GroupStructure, WeierstrassCurve, MAX_ENUMERATION_SIZE};

use super::ProellError;

/// Extensions `F_{q^m}` of a fixed `F_q`, built once and reused across curves.
///
/// This is the brute-force reference for torsion-field degrees: it lifts a
/// curve, enumerates `E(F_{q^m})` and counts `n`-torsion directly.
#[derive(Debug, Clone)]
pub struct ExtensionTower {
    base: GaloisField,
    levels: Vec<(u32, FieldEmbedding)>,
}

impl ExtensionTower {
    /// Every `m >= 1` with `q^m <= max_size`.
    pub fn new(base: &GaloisField, max_size: u64) -> Result<Self, ProellError> {
        let q = base.size();
        let mut degrees = Vec::new();
        let mut size = q;
        let mut m = 1u32;
        while size <= max_size.min(MAX_ENUMERATION_SIZE) {
            degrees.push(m);
            m += 1;
            size = size.saturating_mul(q);
        }
        Self::with_degrees(base, &degrees)
    }

    pub fn with_degrees(base: &GaloisField, degrees: &[u32]) -> Result<Self, ProellError> {
        let mut levels = Vec::with_capacity(degrees.len());
        for &m in degrees {
            let size = base.size().checked_pow(m);
            if m == 0 || size.is_none_or(|s| s > MAX_ENUMERATION_SIZE) {
                return Err(ProellError::OutOfDeskScale(format!("extension degree {m} too large for enumeration")));
            }
            let big = GaloisField::new(base.prime(), base.degree() * m)?;
            levels.push((m, base.embedding_into(&big)?));
        }
        Ok(Self { base: base.clone(), levels })
    }

    pub fn base(&self) -> &GaloisField {
        &self.base
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.levels.iter().map(|(m, _)| *m)
    }

    fn embedding(&self, m: u32) -> Result<&FieldEmbedding, ProellError> {
        self.levels
            .iter()
            .find(|(d, _)| *d == m)
            .map(|(_, e)| e)
            .ok_or_else(|| ProellError::PrecondViolation(format!("degree {m} is not in the tower")))
    }

    fn check_base(&self, curve: &WeierstrassCurve<GaloisField>) -> Result<(), ProellError> {
        if curve.field() != &self.base {
            return Err(ProellError::PrecondViolation(format!(
                "curve is over {:?}, tower is over {:?}",
                curve.field(),
                self.base
            )));
        }
        Ok(())
    }

    /// The curve over `F_{q^m}`.
    pub fn lift(&self, curve: &WeierstrassCurve<GaloisField>, m: u32) -> Result<WeierstrassCurve<GaloisField>, ProellError> {
        self.check_base(curve)?;
        let emb = self.embedding(m)?;
        Ok(curve.base_change(emb.target().clone(), |c| emb.apply(c))?)
    }

    pub fn count_points(&self, curve: &WeierstrassCurve<GaloisField>, m: u32) -> Result<u64, ProellError> {
        Ok(count_points(&self.lift(curve, m)?)?)
    }

    pub fn group_structure(&self, curve: &WeierstrassCurve<GaloisField>, m: u32) -> Result<GroupStructure, ProellError> {
        let big = self.lift(curve, m)?;
        let points = affine_points(&big)?;
        Ok(group_structure(&big, &points))
    }

    /// Whether `E[n]` is contained in `E(F_{q^m})`.
    pub fn has_full_torsion(&self, curve: &WeierstrassCurve<GaloisField>, m: u32, n: u64) -> Result<bool, ProellError> {
        let big = self.lift(curve, m)?;
        if count_points(&big)? % (n * n) != 0 {
            return Ok(false);
        }
        let points = affine_points(&big)?;
        Ok(torsion_count(&big, &points, n) == n * n)
    }

    /// Least tower degree `m` with `E[n]` in `E(F_{q^m})`, if any level has it.
    pub fn full_torsion_degree(&self, curve: &WeierstrassCurve<GaloisField>, n: u64) -> Result<Option<u32>, ProellError> {
        for m in self.degrees() {
            if self.has_full_torsion(curve, m, n)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}
