//! Text format for scalars, polynomials and exponential polynomials.
//!
//! Grammar (ASCII only):
//!   expr    := ['+'|'-'] term (('+'|'-') term)*
//!   term    := factor ('*' factor)*
//!   factor  := primary ('^' UINT)*
//!   primary := UINT ('/' UINT)? | 'i' | 'sqrt' '(' UINT ')' | 'z'
//!            | 'exp' '(' expr ')' | '(' expr ')'
//!
//! The argument of exp must be a polynomial with zero constant term.
//! `print_expoly` emits a canonical form that parses back exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result, SourceSpan};
use crate::poly::Poly;
use crate::scalar::{QScalar, Rational, ScalarContext};
use crate::symcore::ExpPoly;

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => toks.push(Token { tok: Tok::Plus, span: SourceSpan { start, end: i + 1 } }),
            b'-' => toks.push(Token { tok: Tok::Minus, span: SourceSpan { start, end: i + 1 } }),
            b'*' => toks.push(Token { tok: Tok::Star, span: SourceSpan { start, end: i + 1 } }),
            b'/' => toks.push(Token { tok: Tok::Slash, span: SourceSpan { start, end: i + 1 } }),
            b'^' => toks.push(Token { tok: Tok::Caret, span: SourceSpan { start, end: i + 1 } }),
            b'(' => toks.push(Token { tok: Tok::LParen, span: SourceSpan { start, end: i + 1 } }),
            b')' => toks.push(Token { tok: Tok::RParen, span: SourceSpan { start, end: i + 1 } }),
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n: BigInt = text[i..j].parse().unwrap();
                toks.push(Token { tok: Tok::Int(n), span: SourceSpan { start, end: j } });
                i = j;
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                toks.push(Token {
                    tok: Tok::Ident(text[i..j].to_string()),
                    span: SourceSpan { start, end: j },
                });
                i = j;
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    span: SourceSpan { start, end: start + 1 },
                    message: format!("unexpected character {:?}", b as char),
                })
            }
        }
        i += 1;
    }
    toks.push(Token { tok: Tok::Eof, span: SourceSpan { start: bytes.len(), end: bytes.len() } });
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ctx: &'a ScalarContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, span: SourceSpan, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { span, message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        let t = self.bump();
        if t.tok == tok {
            Ok(t)
        } else {
            self.err(t.span, format!("expected {what}"))
        }
    }

    fn radicand(&self) -> u64 {
        self.ctx.radicand()
    }

    fn expr(&mut self) -> Result<ExpPoly> {
        let mut negate = false;
        if matches!(self.peek().tok, Tok::Plus | Tok::Minus) {
            negate = matches!(self.bump().tok, Tok::Minus);
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExpPoly> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExpPoly> {
        let mut base = self.primary()?;
        while self.peek().tok == Tok::Caret {
            self.bump();
            let t = self.bump();
            let Tok::Int(n) = t.tok else {
                return self.err(t.span, "expected a non-negative integer exponent");
            };
            let Some(n) = to_u32(&n) else {
                return self.err(t.span, "integer exponent too large");
            };
            base = base.pow(n);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ExpPoly> {
        let t = self.bump();
        match t.tok {
            Tok::Int(num) => {
                let mut den = BigInt::one();
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    let Tok::Int(dv) = d.tok else {
                        return self.err(d.span, "expected an integer denominator");
                    };
                    if dv.is_zero() {
                        return self.err(d.span, "zero denominator");
                    }
                    den = dv;
                }
                Ok(ExpPoly::from_scalar(QScalar::from_rational(
                    Rational::new(num, den),
                    self.radicand(),
                )))
            }
            Tok::Ident(name) => match name.as_str() {
                "z" => Ok(ExpPoly::from_poly(Poly::var(self.radicand()))),
                "i" => Ok(ExpPoly::from_scalar(QScalar::i(self.radicand()))),
                "sqrt" => {
                    self.expect(Tok::LParen, "'(' after sqrt")?;
                    let a = self.bump();
                    let Tok::Int(n) = a.tok else {
                        return self.err(a.span, "expected an integer radicand");
                    };
                    self.expect(Tok::RParen, "')' after radicand")?;
                    let Some(found) = to_u64(&n) else {
                        return self.err(a.span, "radicand too large");
                    };
                    if found != self.radicand() {
                        return Err(Error::RadicandMismatch { found, expected: self.radicand() });
                    }
                    Ok(ExpPoly::from_scalar(QScalar::sqrt_radicand(self.radicand())))
                }
                "exp" => {
                    self.expect(Tok::LParen, "'(' after exp")?;
                    let arg_start = self.peek().span.start;
                    let arg = self.expr()?;
                    let close = self.expect(Tok::RParen, "')' closing exp")?;
                    let span = SourceSpan { start: arg_start, end: close.span.start };
                    let Some(p) = arg.as_poly() else {
                        return self.err(span, "exp argument must be a polynomial");
                    };
                    if !p.constant_term().is_zero() {
                        return self.err(span, "exp argument must have zero constant term");
                    }
                    Ok(ExpPoly::exp_term(Poly::from_int(1, self.radicand()), p).unwrap())
                }
                _ => self.err(t.span, format!("unknown identifier '{name}'")),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => self.err(t.span, "expected a number, 'z', 'i', 'sqrt', 'exp' or '('"),
        }
    }
}

fn to_u32(n: &BigInt) -> Option<u32> {
    let (sign, digits) = n.to_u32_digits();
    match (sign, digits.len()) {
        (num_bigint::Sign::NoSign, _) => Some(0),
        (num_bigint::Sign::Plus, 1) => Some(digits[0]),
        _ => None,
    }
}

fn to_u64(n: &BigInt) -> Option<u64> {
    u64::try_from(n).ok()
}

pub fn parse_expoly(text: &str, ctx: &ScalarContext) -> Result<ExpPoly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ctx };
    let f = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return Err(Error::Syntax { span: t.span, message: "unexpected trailing input".into() });
    }
    Ok(f)
}

pub fn parse_poly(text: &str, ctx: &ScalarContext) -> Result<Poly> {
    let f = parse_expoly(text, ctx)?;
    f.as_poly().ok_or_else(|| Error::Syntax {
        span: SourceSpan { start: 0, end: text.len() },
        message: "expected a polynomial".into(),
    })
}

pub fn parse_scalar(text: &str, ctx: &ScalarContext) -> Result<QScalar> {
    let f = parse_expoly(text, ctx)?;
    f.as_constant().ok_or_else(|| Error::Syntax {
        span: SourceSpan { start: 0, end: text.len() },
        message: "expected a scalar constant".into(),
    })
}

// ---------------------------------------------------------------------------
// Printer

/// A printed summand: sign plus the body text (no sign inside).
type Atom = (bool, String);

fn rational_body(q: &Rational) -> String {
    let a = q.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// The four components of a scalar as (sign, body) atoms.
fn scalar_atoms(c: &QScalar) -> Vec<Atom> {
    let mut out = Vec::new();
    let r = c.radicand();
    let mut push = |q: &Rational, suffix: &str| {
        if q.is_zero() {
            return;
        }
        let coef = rational_body(q);
        let body = if suffix.is_empty() {
            coef
        } else if q.abs().is_one() {
            suffix.to_string()
        } else {
            format!("{coef}*{suffix}")
        };
        out.push((q.is_negative(), body));
    };
    push(&c.a_re, "");
    push(&c.a_im, "i");
    push(&c.b_re, &format!("sqrt({r})"));
    push(&c.b_im, &format!("sqrt({r})*i"));
    if out.is_empty() {
        out.push((false, "0".to_string()));
    }
    out
}

fn join_atoms(atoms: &[Atom]) -> String {
    let mut s = String::new();
    for (k, (neg, body)) in atoms.iter().enumerate() {
        if k == 0 {
            if *neg {
                s.push('-');
            }
        } else {
            s.push_str(if *neg { " - " } else { " + " });
        }
        s.push_str(body);
    }
    s
}

/// Scalar as a coefficient factor: (sign, body, needs_parens_when_multiplied).
fn scalar_factor(c: &QScalar) -> (bool, String) {
    let atoms = scalar_atoms(c);
    if atoms.len() == 1 {
        atoms.into_iter().next().unwrap()
    } else {
        (false, format!("({})", join_atoms(&atoms)))
    }
}

fn z_power(k: usize) -> String {
    match k {
        1 => "z".to_string(),
        _ => format!("z^{k}"),
    }
}

/// Atoms of a polynomial, lowest degree first.
fn poly_atoms(p: &Poly) -> Vec<Atom> {
    if p.is_zero() {
        return vec![(false, "0".to_string())];
    }
    let mut out = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k == 0 {
            out.extend(scalar_atoms(c));
            continue;
        }
        let (neg, body) = scalar_factor(c);
        if body == "1" {
            out.push((neg, z_power(k)));
        } else {
            out.push((neg, format!("{body}*{}", z_power(k))));
        }
    }
    out
}

pub fn print_poly(p: &Poly) -> String {
    join_atoms(&poly_atoms(p))
}

pub fn print_scalar(c: &QScalar) -> String {
    join_atoms(&scalar_atoms(c))
}

/// Deterministic canonical text; `parse_expoly` of the output reproduces the
/// input exactly.
pub fn print_expoly(f: &ExpPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Poly, &Poly)> = f.terms().collect();
    terms.sort_by(|(qa, _), (qb, _)| {
        let da = qa.degree().map_or(-1, |d| d as i64);
        let db = qb.degree().map_or(-1, |d| d as i64);
        da.cmp(&db).then_with(|| qa.cmp(qb))
    });
    let mut atoms: Vec<Atom> = Vec::new();
    for (exponent, multiplier) in terms {
        if exponent.is_zero() {
            atoms.extend(poly_atoms(multiplier));
            continue;
        }
        let exp_str = format!("exp({})", print_poly(exponent));
        let matoms = poly_atoms(multiplier);
        if matoms.len() == 1 {
            let (neg, body) = matoms.into_iter().next().unwrap();
            if body == "1" {
                atoms.push((neg, exp_str));
            } else {
                atoms.push((neg, format!("{body}*{exp_str}")));
            }
        } else {
            atoms.push((false, format!("({})*{exp_str}", join_atoms(&matoms))));
        }
    }
    join_atoms(&atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ScalarContext {
        ScalarContext::default()
    }

    fn roundtrip(s: &str) -> String {
        let f = parse_expoly(s, &ctx()).unwrap();
        print_expoly(&f)
    }

    #[test]
    fn parse_sqrt6_instance() {
        let c6 = ScalarContext::new(6).unwrap();
        let f = parse_expoly("1 + 3*exp(2*z) + sqrt(6)*i*exp(3*z)", &c6).unwrap();
        let view = f.normalize().unwrap();
        assert_eq!(view.q(), 1);
        assert_eq!(view.frequencies(), vec![QScalar::from_int(2, 6), QScalar::from_int(3, 6)]);
        assert_eq!(print_expoly(&f), "1 + 3*exp(2*z) + sqrt(6)*i*exp(3*z)");
    }

    #[test]
    fn parse_zero() {
        assert!(parse_expoly("0", &ctx()).unwrap().is_zero());
        assert_eq!(print_expoly(&ExpPoly::zero(1)), "0");
    }

    #[test]
    fn parse_expands_products() {
        let f = parse_expoly("(exp(z)+1)*(exp(z)-1)", &ctx()).unwrap();
        let want = parse_expoly("exp(2*z) - 1", &ctx()).unwrap();
        assert_eq!(f, want);
        assert_eq!(print_expoly(&f), "-1 + exp(2*z)");
    }

    #[test]
    fn canonical_prints() {
        assert_eq!(roundtrip("exp(2*z)-1"), "-1 + exp(2*z)");
        assert_eq!(roundtrip("1+4*exp(z)+6*exp(2*z)"), "1 + 4*exp(z) + 6*exp(2*z)");
        assert_eq!(roundtrip("-z^2*exp(-z) + (1-i)*exp(z^2)"), roundtrip("(1-i)*exp(z^2) - z^2*exp(-z)"));
    }

    #[test]
    fn print_parse_fixed_point() {
        for s in [
            "3/2 + 5*z - z^3",
            "(1 - i)*exp(z^2 - i*z) + 2*exp(-4*z)",
            "-1/3*z*exp(z) + exp(2*z) - 7",
            "z^2*exp(-i*z) + z*exp(z^2) + exp(2*z^2 + (1 - i)*z)",
        ] {
            let f = parse_expoly(s, &ctx()).unwrap();
            let printed = print_expoly(&f);
            assert_eq!(parse_expoly(&printed, &ctx()).unwrap(), f, "roundtrip of {s}");
            assert_eq!(print_expoly(&parse_expoly(&printed, &ctx()).unwrap()), printed);
        }
    }

    #[test]
    fn sqrt_radicand_checked() {
        assert!(matches!(
            parse_expoly("sqrt(5)", &ctx()),
            Err(Error::RadicandMismatch { found: 5, expected: 1 })
        ));
    }

    #[test]
    fn exp_argument_restrictions() {
        assert!(matches!(parse_expoly("exp(exp(z))", &ctx()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expoly("exp(z + 1)", &ctx()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn syntax_error_spans() {
        match parse_expoly("1 + $", &ctx()) {
            Err(Error::Syntax { span, .. }) => assert_eq!((span.start, span.end), (4, 5)),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn powers() {
        let f = parse_expoly("exp(z)^3", &ctx()).unwrap();
        assert_eq!(f, parse_expoly("exp(3*z)", &ctx()).unwrap());
        let g = parse_expoly("(1+z)^2", &ctx()).unwrap();
        assert_eq!(g, parse_expoly("1 + 2*z + z^2", &ctx()).unwrap());
    }
}
