//! Rational-function expressions in `t`.
//!
//! ```text
//! Expr   := Term (('+' | '-') Term)*
//! Term   := Factor (('*' | '/') Factor)*
//! Factor := '-' Factor | Base ('^' Nat)?
//! Base   := Int | 't' | '(' Expr ')'
//! ```
//!
//! Binary operators associate to the left and `^` binds tightest, so `-t^2`
//! is `-(t^2)`.

use std::fmt;

use ltors_core::algebra::{Field, PrimeField, RationalFunction, RationalFunctionField};

/// Exponents above this are refused at evaluation time.
pub const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at column {column}: {message}")]
    SyntaxError { column: usize, message: String },
    #[error("division by the zero function")]
    ZeroDenominator,
    #[error("exponent {0} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge(u64),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::SyntaxError { column: self.pos + 1, message: message.into() })
    }

    fn expect_here(&self, what: &str) -> Result<Expr, ExprError> {
        match self.src.get(self.pos) {
            None => self.error(format!("expected {what}, found end of input")),
            Some(&c) => self.error(format!("expected {what}, found '{}'", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' { Expr::Add(lhs.into(), rhs.into()) } else { Expr::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if op == b'*' { Expr::Mul(lhs.into(), rhs.into()) } else { Expr::Div(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(self.factor()?.into()));
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.nat()?;
            return Ok(Expr::Pow(base.into(), n));
        }
        Ok(base)
    }

    fn nat(&mut self) -> Result<u64, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            self.expect_here("a nonnegative integer")?;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().or_else(|_| {
            self.pos = start;
            self.error("integer literal does not fit in 64 bits")
        })
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(Expr::Var)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.expect_here("')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.nat()?)),
            _ => self.expect_here("an integer, 't' or '('"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.expect_here("an operator or end of input");
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expr::Int(n) => write!(f, "{n}")?,
            Expr::Var => f.write_str("t")?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, 3)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, 2)?;
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write(f, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write(f, 3)?;
            }
            Expr::Pow(a, n) => {
                a.write(f, 5)?;
                write!(f, "^{n}")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }

    /// Canonical value in `F_p(t)`.
    pub fn eval(&self, k: &RationalFunctionField<PrimeField>) -> Result<RationalFunction<u64>, ExprError> {
        Ok(match self {
            Expr::Int(n) => k.constant(*n % k.base().modulus()),
            Expr::Var => k.t(),
            Expr::Neg(a) => k.neg(&a.eval(k)?),
            Expr::Add(a, b) => k.add(&a.eval(k)?, &b.eval(k)?),
            Expr::Sub(a, b) => k.sub(&a.eval(k)?, &b.eval(k)?),
            Expr::Mul(a, b) => k.mul(&a.eval(k)?, &b.eval(k)?),
            Expr::Div(a, b) => k.div(&a.eval(k)?, &b.eval(k)?).map_err(|_| ExprError::ZeroDenominator)?,
            Expr::Pow(a, n) => {
                if *n > MAX_EXPONENT {
                    return Err(ExprError::ExponentTooLarge(*n));
                }
                k.pow(&a.eval(k)?, *n)
            }
        })
    }
}

/// Minimal parentheses; parsing the output gives back the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> RationalFunctionField<PrimeField> {
        RationalFunctionField::new(PrimeField::new(p).unwrap())
    }

    #[test]
    fn variable_and_precedence() {
        assert_eq!(parse_expr("t"), Ok(Expr::Var));
        assert_eq!(parse_expr("-t^2"), Ok(Expr::Neg(Expr::Pow(Expr::Var.into(), 2).into())));
        assert_eq!(parse_expr("1-2-t").unwrap().to_string(), "1 - 2 - t");
        assert_eq!(parse_expr("1-(2-t)").unwrap().to_string(), "1 - (2 - t)");
        assert_eq!(parse_expr(" ( t + 1 ) ^ 3 ").unwrap().to_string(), "(t + 1)^3");
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let col = |s: &str| match parse_expr(s) {
            Err(ExprError::SyntaxError { column, .. }) => column,
            other => panic!("{other:?}"),
        };
        assert_eq!(col("t++1"), 3);
        assert_eq!(col("(t+1"), 5);
        assert_eq!(col("t^x"), 3);
        assert_eq!(col("t t"), 3);
        assert_eq!(col(""), 1);
        assert_eq!(col("x"), 1);
    }

    #[test]
    fn evaluation_matches_hand_built_value() {
        let k = field(5);
        let r = k.ring();
        let got = parse_expr("t^2*(t-1)/(t+3)").unwrap().eval(&k).unwrap();
        // t^3 - t^2 over t + 3, coefficients low to high
        let expected = k.from_parts(r.from_ints(&[0, 0, -1, 1]), r.from_ints(&[3, 1])).unwrap();
        assert_eq!(got, expected);
        assert_eq!(parse_expr("(t+1)/(t-t)").unwrap().eval(&k), Err(ExprError::ZeroDenominator));
        assert_eq!(parse_expr("1/5").unwrap().eval(&k), Err(ExprError::ZeroDenominator));
        assert_eq!(parse_expr("t^5000").unwrap().eval(&k), Err(ExprError::ExponentTooLarge(5000)));
    }
}
