//! Recursive-descent parser for scalar expressions.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := number | 'i' | ident | ('sin' | 'cos') '(' angle ')' | '(' expr ')'
//! number := digits ('.' digits)?
//! ident  := [a-zA-Z][a-zA-Z0-9_]*
//! ```

use super::chart::Chart;
use super::scalar::ScalarExpr;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::pow::Pow;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let mut digits = src[start..i].to_string();
            let mut scale = 0u32;
            if i < b.len() && b[i] == b'.' {
                i += 1;
                let fs = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if fs == i {
                    return Err(Error::Syntax {
                        offset: i,
                        message: "expected digits after decimal point".into(),
                    });
                }
                digits.push_str(&src[fs..i]);
                scale = (i - fs) as u32;
            }
            let n: BigInt = digits.parse().unwrap();
            let d = BigInt::from(10).pow(scale);
            out.push((Tok::Num(BigRational::new(n, d)), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(Error::Syntax { offset: i, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { offset: self.offset(), message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Op(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Op('/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            Tok::Op('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ScalarExpr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if *self.peek() == Tok::Op('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let Tok::Num(n) = self.peek().clone() else {
            return self.err("expected integer exponent");
        };
        if !n.is_integer() {
            return self.err("exponent must be an integer");
        }
        let e: i64 = match n.to_integer().try_into() {
            Ok(e) if e <= 1000 => e,
            _ => return self.err("exponent too large"),
        };
        self.pos += 1;
        base.pow(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<ScalarExpr> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(ScalarExpr::constant(super::Gaussian::real(n)))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(ScalarExpr::i());
                }
                if name == "sin" || name == "cos" {
                    self.expect('(')?;
                    let at = self.offset();
                    let Tok::Ident(arg) = self.peek().clone() else {
                        return self.err("expected an angle coordinate");
                    };
                    let k = self.chart.index_of(&arg).ok_or(Error::UnknownIdentifier {
                        name: arg.clone(),
                        offset: at,
                    })?;
                    if !self.chart.is_angle(k) {
                        return Err(Error::Syntax {
                            offset: at,
                            message: format!("`{arg}` is not an angle coordinate"),
                        });
                    }
                    self.pos += 1;
                    self.expect(')')?;
                    return Ok(if name == "sin" { ScalarExpr::sin(k) } else { ScalarExpr::cos(k) });
                }
                match self.chart.index_of(&name) {
                    Some(k) => Ok(ScalarExpr::coord(k)),
                    None => Err(Error::UnknownIdentifier { name, offset }),
                }
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(&format!("unexpected `{c}`")),
        }
    }
}

/// Parses `src` over `chart`.
pub fn parse(src: &str, chart: &Chart) -> Result<ScalarExpr> {
    let mut p = Parser { toks: lex(src)?, pos: 0, chart };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(&["x", "y", "psi"], &["psi"]).unwrap()
    }

    #[test]
    fn dangling_operator_reports_end_offset() {
        assert_eq!(
            parse("x +", &chart()),
            Err(Error::Syntax { offset: 3, message: "unexpected end of input".into() })
        );
    }

    #[test]
    fn unknown_identifier() {
        assert!(matches!(
            parse("x + w", &chart()),
            Err(Error::UnknownIdentifier { ref name, offset: 4 }) if name == "w"
        ));
    }

    #[test]
    fn decimals_and_powers() {
        let c = chart();
        assert_eq!(parse("0.5*x^2", &c).unwrap(), parse("x*x/2", &c).unwrap());
        assert_eq!(parse("x^-1", &c).unwrap(), parse("1/x", &c).unwrap());
        assert_eq!(parse("-x^2", &c).unwrap(), parse("-(x*x)", &c).unwrap());
    }

    #[test]
    fn trig_requires_angle() {
        assert!(parse("sin(x)", &chart()).is_err());
        assert!(parse("sin(psi)^2 + cos(psi)^2", &chart()).unwrap().is_one());
    }

    #[test]
    fn division_by_zero_literal() {
        assert_eq!(parse("1/(x-x)", &chart()), Err(Error::DivisionByZero));
    }
}
