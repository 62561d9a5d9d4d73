//! Scans over primes `ell` classifying `f = ord_ell(p)` by its residue mod 4,
//! which decides the supersingular point count mod `ell`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::arith;
use crate::proell::FClass;

pub const MIN_LIMIT: u64 = 100;
pub const MAX_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DensityError {
    #[error("ell must differ from p = {0}")]
    EqualPrimes(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("scan limit {0} outside {MIN_LIMIT}..={MAX_LIMIT}")]
    LimitGuard(u64),
}

/// `f mod 4` with the odd class split into 1 and 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FResidue4 {
    OneMod4,
    TwoMod4,
    ThreeMod4,
    ZeroMod4,
}

impl FResidue4 {
    pub fn of(f: u64) -> Self {
        match f % 4 {
            0 => FResidue4::ZeroMod4,
            1 => FResidue4::OneMod4,
            2 => FResidue4::TwoMod4,
            _ => FResidue4::ThreeMod4,
        }
    }
}

fn check_primes(p: u64, ell: u64) -> Result<(), DensityError> {
    for x in [p, ell] {
        if !arith::is_prime(x) {
            return Err(DensityError::NotPrime(x));
        }
    }
    if p == ell {
        return Err(DensityError::EqualPrimes(p));
    }
    Ok(())
}

/// Class of the order of `p` mod `ell`.
pub fn f_class(p: u64, ell: u64) -> Result<FClass, DensityError> {
    check_primes(p, ell)?;
    Ok(FClass::of(arith::mult_order(p % ell, ell).expect("checked coprime primes")))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub odd: u64,
    pub two_mod_4: u64,
    pub zero_mod_4: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ResidueCounts {
    pub one_mod_4: u64,
    pub two_mod_4: u64,
    pub three_mod_4: u64,
    pub zero_mod_4: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassDensities {
    pub odd: f64,
    pub two_mod_4: f64,
    pub zero_mod_4: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityScan {
    pub p: u64,
    pub limit: u64,
    /// Primes `ell <= limit` with `ell != p`.
    pub total: u64,
    pub counts: ClassCounts,
    pub residues: ResidueCounts,
    pub densities: ClassDensities,
}

impl DensityScan {
    /// Largest relative change of a class density against `other`, measured from `self`.
    pub fn relative_drift(&self, other: &DensityScan) -> f64 {
        let (a, b) = (self.densities, other.densities);
        [(a.odd, b.odd), (a.two_mod_4, b.two_mod_4), (a.zero_mod_4, b.zero_mod_4)]
            .into_iter()
            .map(|(x, y)| if x == 0.0 { f64::INFINITY } else { (x - y).abs() / x })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DensityRow {
    pub ell: u64,
    pub f: u64,
    pub class: FClass,
}

/// Primes up to `n`, ascending.
pub fn sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn check_limit(p: u64, limit: u64) -> Result<(), DensityError> {
    if !arith::is_prime(p) {
        return Err(DensityError::NotPrime(p));
    }
    if !(MIN_LIMIT..=MAX_LIMIT).contains(&limit) {
        return Err(DensityError::LimitGuard(limit));
    }
    Ok(())
}

/// Order of `p` mod every prime `ell <= limit` other than `p`, ascending in `ell`.
pub fn density_rows(p: u64, limit: u64) -> Result<Vec<DensityRow>, DensityError> {
    check_limit(p, limit)?;
    let primes = sieve(limit);
    let small = sieve(arith::isqrt(limit) + 1);
    let factor = |mut n: u64| {
        let mut out = Vec::new();
        for &r in &small {
            if r * r > n {
                break;
            }
            if n.is_multiple_of(r) {
                out.push(r);
                while n.is_multiple_of(r) {
                    n /= r;
                }
            }
        }
        if n > 1 {
            out.push(n);
        }
        out
    };
    Ok(primes
        .par_iter()
        .filter(|&&ell| ell != p)
        .map(|&ell| {
            let f = arith::mult_order_with_factors(p % ell, ell, &factor(ell - 1));
            DensityRow { ell, f, class: FClass::of(f) }
        })
        .collect())
}

pub fn density_scan(p: u64, limit: u64) -> Result<DensityScan, DensityError> {
    let rows = density_rows(p, limit)?;
    Ok(summarize(p, limit, &rows))
}

/// Tallies rows; the result does not depend on their order.
pub fn summarize(p: u64, limit: u64, rows: &[DensityRow]) -> DensityScan {
    let mut counts = ClassCounts::default();
    let mut residues = ResidueCounts::default();
    for row in rows {
        match row.class {
            FClass::Odd => counts.odd += 1,
            FClass::TwoMod4 => counts.two_mod_4 += 1,
            FClass::ZeroMod4 => counts.zero_mod_4 += 1,
        }
        match FResidue4::of(row.f) {
            FResidue4::OneMod4 => residues.one_mod_4 += 1,
            FResidue4::TwoMod4 => residues.two_mod_4 += 1,
            FResidue4::ThreeMod4 => residues.three_mod_4 += 1,
            FResidue4::ZeroMod4 => residues.zero_mod_4 += 1,
        }
    }
    let total = rows.len() as u64;
    let share = |c: u64| if total == 0 { 0.0 } else { c as f64 / total as f64 };
    DensityScan {
        p,
        limit,
        total,
        counts,
        residues,
        densities: ClassDensities {
            odd: share(counts.odd),
            two_mod_4: share(counts.two_mod_4),
            zero_mod_4: share(counts.zero_mod_4),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_examples() {
        assert_eq!(f_class(5, 7), Ok(FClass::TwoMod4));
        assert_eq!(f_class(5, 11), Ok(FClass::Odd));
        assert_eq!(f_class(5, 13), Ok(FClass::ZeroMod4));
        assert_eq!(f_class(5, 5), Err(DensityError::EqualPrimes(5)));
        assert_eq!(f_class(5, 9), Err(DensityError::NotPrime(9)));
    }

    #[test]
    fn scan_partition() {
        let s = density_scan(5, 1000).unwrap();
        assert_eq!(s.total, 168 - 1);
        assert_eq!(s.counts.odd + s.counts.two_mod_4 + s.counts.zero_mod_4, s.total);
        assert_eq!(s.residues.one_mod_4 + s.residues.three_mod_4, s.counts.odd);
        let d = s.densities;
        assert!((d.odd + d.two_mod_4 + d.zero_mod_4 - 1.0).abs() < 1e-12);
        let s2 = density_scan(2, 10_000).unwrap();
        assert!(s2.counts.odd > 0 && s2.counts.two_mod_4 > 0 && s2.counts.zero_mod_4 > 0);
        assert_eq!(density_scan(2, 99), Err(DensityError::LimitGuard(99)));
    }

    #[test]
    fn rows_match_direct_order() {
        let rows = density_rows(3, 500).unwrap();
        assert!(rows.windows(2).all(|w| w[0].ell < w[1].ell));
        for r in rows {
            assert_eq!(r.f, arith::mult_order(3 % r.ell, r.ell).unwrap());
        }
    }

    #[test]
    fn sieve_counts() {
        assert_eq!(sieve(100).len(), 25);
        assert_eq!(sieve(2), vec![2]);
    }
}
