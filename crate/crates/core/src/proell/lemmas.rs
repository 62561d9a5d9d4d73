//! Two facts about `ell`-groups in `GL_2(F_ell)`, checked by exhaustion:
//! such a group fixes a nonzero vector, and a normalizer element of order
//! dividing `ell - 1` preserves some line that the group fixes pointwise.

use std::collections::HashSet;

use serde::Serialize;

use super::ProellError;
use crate::algebra::arith;

/// A 2x2 matrix over `F_ell`, rows first.
pub type Mat2 = [[u64; 2]; 2];

/// Arithmetic in `GL_2(F_ell)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gl2 {
    ell: u64,
}

impl Gl2 {
    pub fn new(ell: u64) -> Result<Self, ProellError> {
        if !arith::is_prime(ell) {
            return Err(ProellError::NotPrime(ell));
        }
        Ok(Self { ell })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn identity(&self) -> Mat2 {
        [[1, 0], [0, 1]]
    }

    /// Reduces integer entries mod `ell`.
    pub fn reduce(&self, m: [[i64; 2]; 2]) -> Mat2 {
        let r = |v: i64| v.rem_euclid(self.ell as i64) as u64;
        [[r(m[0][0]), r(m[0][1])], [r(m[1][0]), r(m[1][1])]]
    }

    pub fn mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let l = self.ell;
        let e = |i: usize, j: usize| (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % l;
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    pub fn apply(&self, a: &Mat2, v: [u64; 2]) -> [u64; 2] {
        let l = self.ell;
        [(a[0][0] * v[0] + a[0][1] * v[1]) % l, (a[1][0] * v[0] + a[1][1] * v[1]) % l]
    }

    pub fn det(&self, a: &Mat2) -> u64 {
        let l = self.ell;
        (a[0][0] * a[1][1] % l + l - a[0][1] * a[1][0] % l) % l
    }

    pub fn inv(&self, a: &Mat2) -> Result<Mat2, ProellError> {
        let l = self.ell;
        let d = self.det(a);
        if d == 0 {
            return Err(ProellError::NotInvertible);
        }
        let di = arith::mod_pow(d, l - 2, l);
        let s = |v: u64| v * di % l;
        let n = |v: u64| (l - v) % l * di % l;
        Ok([[s(a[1][1]), n(a[0][1])], [n(a[1][0]), s(a[0][0])]])
    }

    pub fn pow(&self, a: &Mat2, mut e: u64) -> Mat2 {
        let mut acc = self.identity();
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn validate(&self, a: &Mat2) -> Result<(), ProellError> {
        if a.iter().flatten().any(|&v| v >= self.ell) {
            return Err(ProellError::PrecondViolation(format!("matrix entries must be reduced mod {}", self.ell)));
        }
        if self.det(a) == 0 {
            return Err(ProellError::NotInvertible);
        }
        Ok(())
    }

    /// The subgroup generated by `gens`, refusing to grow past `ell^3` elements.
    pub fn closure(&self, gens: &[Mat2]) -> Result<Vec<Mat2>, ProellError> {
        for g in gens {
            self.validate(g)?;
        }
        let limit = self.ell.pow(3) as usize;
        let id = self.identity();
        let mut seen: HashSet<Mat2> = HashSet::from([id]);
        let mut order = vec![id];
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y) {
                    if order.len() >= limit {
                        return Err(ProellError::OutOfDeskScale(format!("group exceeds {limit} elements")));
                    }
                    order.push(y);
                    frontier.push(y);
                }
            }
        }
        Ok(order)
    }

    /// Projective lines in the fixed order `(1,0), (1,1), ..., (1,ell-1), (0,1)`;
    /// each representative has first nonzero coordinate 1.
    pub fn lines(&self) -> impl Iterator<Item = [u64; 2]> {
        let l = self.ell;
        (0..l).map(|c| [1, c]).chain(std::iter::once([0, 1]))
    }

    /// The eigenvalue of `a` on `v`, if `v` spans an eigenline.
    pub fn eigenvalue(&self, a: &Mat2, v: [u64; 2]) -> Option<u64> {
        let w = self.apply(a, v);
        let lambda = if v[0] != 0 { w[0] * arith::mod_pow(v[0], self.ell - 2, self.ell) % self.ell } else { w[1] };
        (w == [lambda * v[0] % self.ell, lambda * v[1] % self.ell]).then_some(lambda)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedVector {
    pub ell: u64,
    pub vector: [u64; 2],
    pub group_order: u64,
}

fn ell_group(gl: &Gl2, gens: &[Mat2]) -> Result<Vec<Mat2>, ProellError> {
    let group = match gl.closure(gens) {
        Ok(g) => g,
        // an ell-subgroup of GL_2(F_ell) has order at most ell
        Err(ProellError::OutOfDeskScale(_)) => return Err(ProellError::NotEllGroup),
        Err(e) => return Err(e),
    };
    if !arith::is_power_of(group.len() as u64, gl.ell()) {
        return Err(ProellError::NotEllGroup);
    }
    Ok(group)
}

/// A nonzero vector fixed by every element of the `ell`-group generated by `gens`.
pub fn fixed_vector(ell: u64, gens: &[Mat2]) -> Result<FixedVector, ProellError> {
    let gl = Gl2::new(ell)?;
    let group = ell_group(&gl, gens)?;
    let vector = gl
        .lines()
        .find(|&v| gens.iter().all(|g| gl.apply(g, v) == v))
        .ok_or_else(|| ProellError::InvariantViolation("ell-group without a fixed vector".into()))?;
    Ok(FixedVector { ell, vector, group_order: group.len() as u64 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableLine {
    pub ell: u64,
    /// Spanning vector, first nonzero coordinate 1.
    pub line: [u64; 2],
    /// `delta` acts on the line by this scalar.
    pub eigenvalue: u64,
    /// Dimension of the subspace fixed pointwise by `N`.
    pub fixed_dim: u32,
    pub group_order: u64,
}

/// A line fixed pointwise by the `ell`-group `N` and stable under `delta`,
/// where `delta` normalizes `N` and `delta^(ell-1) = 1`.
pub fn stable_line(ell: u64, n_gens: &[Mat2], delta: &Mat2) -> Result<StableLine, ProellError> {
    let gl = Gl2::new(ell)?;
    let group = ell_group(&gl, n_gens)?;
    gl.validate(delta)?;
    if gl.pow(delta, ell - 1) != gl.identity() {
        return Err(ProellError::PrecondViolation("delta^(ell-1) must be the identity".into()));
    }
    let delta_inv = gl.inv(delta)?;
    let members: HashSet<Mat2> = group.iter().copied().collect();
    for n in &group {
        if !members.contains(&gl.mul(&gl.mul(delta, n), &delta_inv)) {
            return Err(ProellError::NotNormalized);
        }
    }
    let fixed: Vec<[u64; 2]> = gl.lines().filter(|&v| n_gens.iter().all(|g| gl.apply(g, v) == v)).collect();
    // a pointwise-fixed subspace is a line or the whole plane
    let fixed_dim = if fixed.len() as u64 == ell + 1 { 2 } else { 1 };
    let (line, eigenvalue) = fixed
        .iter()
        .find_map(|&v| gl.eigenvalue(delta, v).map(|lambda| (v, lambda)))
        .ok_or_else(|| ProellError::InvariantViolation("no delta-stable fixed line".into()))?;
    Ok(StableLine { ell, line, eigenvalue, fixed_dim, group_order: group.len() as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_fixes_first_basis_vector() {
        let r = fixed_vector(5, &[[[1, 1], [0, 1]]]).unwrap();
        assert_eq!((r.vector, r.group_order), ([1, 0], 5));
        let r = fixed_vector(3, &[[[1, 0], [1, 1]]]).unwrap();
        assert_eq!(r.vector, [0, 1]);
    }

    #[test]
    fn trivial_group_ties_go_to_first_line() {
        let r = fixed_vector(7, &[]).unwrap();
        assert_eq!((r.vector, r.group_order), ([1, 0], 1));
        let s = stable_line(7, &[], &[[2, 0], [0, 4]]).unwrap();
        assert_eq!((s.line, s.eigenvalue, s.fixed_dim), ([1, 0], 2, 2));
        let s = stable_line(7, &[], &[[1, 1], [0, 3]]).unwrap();
        assert_eq!((s.line, s.eigenvalue), ([1, 0], 1));
    }

    #[test]
    fn rejections() {
        assert_eq!(fixed_vector(5, &[[[2, 0], [0, 1]]]), Err(ProellError::NotEllGroup));
        assert_eq!(fixed_vector(5, &[[[1, 2], [2, 4]]]), Err(ProellError::NotInvertible));
        assert_eq!(fixed_vector(6, &[]), Err(ProellError::NotPrime(6)));
        // delta swapping the axes does not normalize the upper unipotents
        assert_eq!(stable_line(5, &[[[1, 1], [0, 1]]], &[[0, 1], [1, 0]]), Err(ProellError::NotNormalized));
        assert!(matches!(stable_line(5, &[[[1, 1], [0, 1]]], &[[1, 1], [0, 1]]), Err(ProellError::PrecondViolation(_))));
    }

    #[test]
    fn diagonal_delta_normalizing_unipotents() {
        let s = stable_line(5, &[[[1, 1], [0, 1]]], &[[2, 0], [0, 3]]).unwrap();
        assert_eq!((s.line, s.eigenvalue, s.fixed_dim, s.group_order), ([1, 0], 2, 1, 5));
    }

    #[test]
    fn inverse_and_closure() {
        let gl = Gl2::new(7).unwrap();
        let a = [[3, 5], [2, 6]];
        assert_eq!(gl.mul(&a, &gl.inv(&a).unwrap()), gl.identity());
        assert_eq!(gl.closure(&[[[1, 1], [0, 1]]]).unwrap().len(), 7);
        assert_eq!(gl.reduce([[-1, 8], [0, 7]]), [[6, 1], [0, 0]]);
    }
}
