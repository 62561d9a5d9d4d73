//! Curve input: `q,a1,a2,a3,a4,a6`, where each coefficient is an integer
//! (reduced into the prime field) or a bracketed coordinate vector
//! `[c0,c1,...]` in the basis `1, a, a^2, ...` of `F_q`.

use ltors_core::algebra::{Field, GaloisField};
use ltors_core::curves::WeierstrassCurve;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    Int(i64),
    Vector(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRecord {
    pub q: u64,
    pub coeffs: [Coefficient; 5],
}

/// Splits on commas outside brackets.
fn split_top_level(s: &str) -> Result<Vec<&str>, CliError> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if !(0..=1).contains(&depth) {
            return Err(CliError::input(format!("unbalanced brackets in '{s}'")));
        }
    }
    if depth != 0 {
        return Err(CliError::input(format!("unbalanced brackets in '{s}'")));
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

fn parse_int(s: &str) -> Result<i64, CliError> {
    s.trim().parse().map_err(|_| CliError::input(format!("'{s}' is not an integer")))
}

fn parse_coefficient(s: &str) -> Result<Coefficient, CliError> {
    match s.strip_prefix('[') {
        Some(rest) => {
            let inner = rest.strip_suffix(']').ok_or_else(|| CliError::input(format!("unterminated vector '{s}'")))?;
            if inner.trim().is_empty() {
                return Ok(Coefficient::Vector(Vec::new()));
            }
            Ok(Coefficient::Vector(inner.split(',').map(parse_int).collect::<Result<_, _>>()?))
        }
        None => Ok(Coefficient::Int(parse_int(s)?)),
    }
}

/// Five coefficients `a1,a2,a3,a4,a6`.
pub fn parse_coefficients(s: &str) -> Result<[Coefficient; 5], CliError> {
    let parts = split_top_level(s)?;
    let coeffs: Vec<Coefficient> = parts.into_iter().map(parse_coefficient).collect::<Result<_, _>>()?;
    let n = coeffs.len();
    coeffs
        .try_into()
        .map_err(|_| CliError::input(format!("expected 5 coefficients a1,a2,a3,a4,a6, found {n}")))
}

/// One input line `q,a1,a2,a3,a4,a6`.
pub fn parse_record(line: &str) -> Result<CurveRecord, CliError> {
    let parts = split_top_level(line)?;
    if parts.len() != 6 {
        return Err(CliError::input(format!("expected q,a1,a2,a3,a4,a6, found {} fields", parts.len())));
    }
    let q = parts[0].parse().map_err(|_| CliError::input(format!("'{}' is not a field size", parts[0])))?;
    let coeffs = parse_coefficients(&parts[1..].join(","))?;
    Ok(CurveRecord { q, coeffs })
}

/// Lines that carry a record, with their 1-based line numbers.
pub fn record_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

impl Coefficient {
    fn to_element(&self, f: &GaloisField) -> Result<u64, CliError> {
        match self {
            Coefficient::Int(n) => Ok(f.from_int(*n)),
            Coefficient::Vector(v) => {
                let p = f.prime() as i64;
                let digits: Vec<u64> = v.iter().map(|c| c.rem_euclid(p) as u64).collect();
                Ok(f.from_digits(&digits)?)
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Coefficient::Int(n) => n.to_string(),
            Coefficient::Vector(v) => {
                format!("[{}]", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }
}

impl CurveRecord {
    pub fn curve(&self) -> Result<WeierstrassCurve<GaloisField>, CliError> {
        let f = GaloisField::with_order(self.q)?;
        let mut a = [0u64; 5];
        for (slot, c) in a.iter_mut().zip(&self.coeffs) {
            *slot = c.to_element(&f)?;
        }
        Ok(WeierstrassCurve::new(f, a)?)
    }

    pub fn render_coeffs(&self) -> String {
        self.coeffs.iter().map(Coefficient::render).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_and_vector_coefficients() {
        let r = parse_record("25, 0,[1,1],0, 0,1").unwrap();
        assert_eq!(r.q, 25);
        assert_eq!(r.coeffs[1], Coefficient::Vector(vec![1, 1]));
        assert_eq!(r.render_coeffs(), "0,[1,1],0,0,1");
        assert!(r.curve().is_ok());
        assert!(parse_record("5,0,0,0,1").is_err());
        assert!(parse_record("5,0,0,[0,0,0,1").is_err());
        assert!(parse_record("6,0,0,0,1,1").unwrap().curve().is_err());
        assert!(parse_record("5,0,0,0,0,0").unwrap().curve().is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\n5,0,0,0,0,1 # trailing\n  \n7,0,0,0,1,1\n";
        let lines: Vec<_> = record_lines(text).collect();
        assert_eq!(lines, vec![(3, "5,0,0,0,0,1"), (5, "7,0,0,0,1,1")]);
    }
}
