use num_bigint::BigInt;
use num_traits::One;

use super::{IntPoly, PolyError};

/// Parse the polynomial literal syntax used by config files and the CLI:
/// integer coefficients, the declared variables, `+ - * ^` and parentheses.
/// Whitespace-insensitive; exponents are nonnegative decimal integers;
/// multiplication is always explicit (`x*y`, not `xy`). The name `t` is
/// accepted as shorthand for `t1`.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<IntPoly, PolyError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0, vars };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(PolyError::Parse(format!("unexpected trailing input at token {}", p.pos)));
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>, PolyError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::parse_bytes(&bytes[start..i], 10)
                    .ok_or_else(|| PolyError::Parse("bad integer literal".into()))?;
                out.push(Tok::Int(n));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                out.push(Tok::Ident(src[start..i].to_string()));
            }
            other => {
                return Err(PolyError::Parse(format!("unexpected character {other:?} at byte {i}")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<IntPoly, PolyError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPoly, PolyError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.next();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<IntPoly, PolyError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            match self.next() {
                Some(Tok::Int(e)) => {
                    use num_traits::ToPrimitive;
                    let e = e.to_u32().ok_or_else(|| {
                        PolyError::Parse("exponent out of range".into())
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(PolyError::Parse("expected a nonnegative integer exponent after ^".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<IntPoly, PolyError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(IntPoly::constant(self.vars, n)),
            Some(Tok::Ident(name)) => {
                let canonical = if name == "t" { "t1" } else { name.as_str() };
                if self.vars.contains(&canonical) {
                    Ok(IntPoly::variable(self.vars, canonical))
                } else {
                    Err(PolyError::Parse(format!(
                        "unknown variable {name:?}; declared variables are {:?}",
                        self.vars
                    )))
                }
            }
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(PolyError::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Convenience: `1` as an [`IntPoly`] over the given variables.
pub fn one(vars: &[&str]) -> IntPoly {
    IntPoly::constant(vars, BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parses_paper_style_literals() {
        let f = parse_poly("x^3 + y^3 - x*y*z", &["x", "y", "z"]).unwrap();
        assert_eq!(f.total_degree(), 3);
        let g = parse_poly("(t1^2-4)^2 * t1^12", &["t1"]).unwrap();
        assert_eq!(g.degree_in("t1"), 16);
        // whitespace-insensitive, `t` shorthand
        let h1 = parse_poly("2*t^2 - 8", &["t1"]).unwrap();
        let h2 = parse_poly("  2 * t1 ^ 2-8", &["t1"]).unwrap();
        assert_eq!(h1, h2);
    }

    #[test]
    fn unary_minus_and_nesting() {
        let f = parse_poly("-(x - 1) * -(x + 1)", &["x"]).unwrap();
        assert_eq!(f, parse_poly("x^2 - 1", &["x"]).unwrap());
        let g = parse_poly("-3", &["x"]).unwrap();
        assert_eq!(g.evaluate(&[BigInt::from(5)]), BigInt::from(-3));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_poly("x +", &["x"]).is_err());
        assert!(parse_poly("w^2", &["x"]).is_err());
        assert!(parse_poly("x^-2", &["x"]).is_err());
        assert!(parse_poly("(x", &["x"]).is_err());
        assert!(parse_poly("x y", &["x", "y"]).is_err());
        assert!(parse_poly("3.5*x", &["x"]).is_err());
    }
}
