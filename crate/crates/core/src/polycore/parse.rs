//! Recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace insignificant, juxtaposition is not multiplication):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | VAR | VAR '^' SINT | '(' expr ')' | '-' factor
//! SINT   := ['-'] INT
//! ```
//!
//! `INT` is an arbitrary-precision decimal literal; exponents must fit in a
//! signed 32-bit integer.  Variable names start with a letter and may
//! continue with letters, digits, or underscores.

use super::{MultiPoly, PolyError};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

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

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digit run parses");
                toks.push((Tok::Int(n), start));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(PolyError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [&'a str],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::Int(n)) => Ok(MultiPoly::constant(self.vars, n)),
            Some(Tok::Ident(name)) => {
                if !self.vars.contains(&name.as_str()) {
                    return Err(PolyError::UnknownVariable { name, pos });
                }
                let base = MultiPoly::var(self.vars, &name).expect("name checked above");
                if let Some(Tok::Caret) = self.peek() {
                    self.pos += 1;
                    let e = self.signed_exponent()?;
                    let exps = base.terms()[0]
                        .0
                        .iter()
                        .map(|&x| x * e)
                        .collect();
                    return Ok(MultiPoly::monomial(self.vars, exps, 1));
                }
                Ok(base)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(PolyError::Syntax {
                        pos: self.here(),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Some(tok) => Err(PolyError::Syntax {
                pos,
                msg: format!("unexpected token `{:?}`", tok),
            }),
            None => Err(PolyError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    fn signed_exponent(&mut self) -> Result<i32, PolyError> {
        let pos = self.here();
        let negative = if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(n)) => {
                let n = if negative { -n } else { n };
                n.to_i32().ok_or(PolyError::ExponentOverflow { pos })
            }
            _ => Err(PolyError::Syntax {
                pos,
                msg: "expected integer exponent".into(),
            }),
        }
    }
}

/// Parses `text` over the ordered variable universe `vars`.  Identifiers not
/// listed in `vars` are rejected.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        end: text.len(),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Syntax {
            pos: p.here(),
            msg: "trailing input after expression".into(),
        });
    }
    Ok(poly)
}

/// Parses `text`, inferring the variable universe from the identifiers in
/// order of first appearance.
pub fn parse_poly_auto(text: &str) -> Result<MultiPoly, PolyError> {
    let toks = lex(text)?;
    let mut vars: Vec<String> = Vec::new();
    for (t, _) in &toks {
        if let Tok::Ident(name) = t {
            if !vars.iter().any(|v| v == name) {
                vars.push(name.clone());
            }
        }
    }
    let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    parse_poly(text, &vref)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_builtin_a_polynomial() {
        let a = parse_poly(
            "-M^4 + L*(1 - M^2 - 2*M^4 - M^6 + M^8) - L^2*M^4",
            &["M", "L"],
        )
        .unwrap();
        assert_eq!(a.term_count(), 7);
        assert_eq!(a.degree_in("M").unwrap(), Some(8));
        assert_eq!(a.degree_in("L").unwrap(), Some(2));
    }

    #[test]
    fn laurent_exponents_parse() {
        let a = parse_poly("1 + x + x^-1 + y + y^-1", &["x", "y"]).unwrap();
        assert_eq!(a.term_count(), 5);
        assert_eq!(a.min_exponent_in("x").unwrap(), Some(-1));
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let err = parse_poly("2x", &["x"]).unwrap_err();
        assert!(matches!(err, PolyError::Syntax { .. }), "{err}");
        assert!(parse_poly("x y", &["x", "y"]).is_err());
    }

    #[test]
    fn unknown_variable_is_reported_with_position() {
        match parse_poly("1 + q", &["x"]) {
            Err(PolyError::UnknownVariable { name, pos }) => {
                assert_eq!(name, "q");
                assert_eq!(pos, 4);
            }
            other => panic!("expected unknown-variable error, got {:?}", other),
        }
    }

    #[test]
    fn exponent_overflow_is_an_error() {
        let err = parse_poly("x^2147483648", &["x"]).unwrap_err();
        assert!(matches!(err, PolyError::ExponentOverflow { .. }));
        // Largest representable exponent still works.
        assert!(parse_poly("x^2147483647", &["x"]).is_ok());
    }

    #[test]
    fn nested_negation_and_parentheses() {
        let a = parse_poly("-(x - (2 - x))", &["x"]).unwrap();
        assert_eq!(a, parse_poly("2 - 2*x", &["x"]).unwrap());
    }

    #[test]
    fn auto_universe_follows_first_appearance() {
        let a = parse_poly_auto("L + M").unwrap();
        assert_eq!(a.vars(), &["L".to_string(), "M".to_string()]);
    }

    #[test]
    fn caret_after_integer_is_rejected() {
        assert!(parse_poly("2^3", &[]).is_err());
    }
}
